#pragma once

#include <vector>

#include "torspec/gap_vector.hpp"
#include "torspec/hill.hpp"
#include "torspec/riccati.hpp"

namespace torspec {

inline constexpr int kDefaultGaps = 12;

/// |kappa_n| below this counts as zero when taking sign(kappa_n).
inline constexpr double kNormingNoiseFloor = 1e-10;
/// psi_{n2} magnitudes below this are reported as exactly zero.
inline constexpr double kPsi2Floor = 1e-9;

/// psi_n = ((lambda_n^- + lambda_n^+)/2 - mu_n,
///          ((lambda_n^+ - mu_n)(mu_n - lambda_n^-))^{1/2} sign kappa_n).
/// The product form equals |gamma_n|^2/4 - psi_{n1}^2 without cancellation.
GapVector gap_vector(const SpectralData& d);

/// psi(q) from the impedance form of the operator.
GapVector psi_of_q(const PeriodicFn& q, const OperatorSpec& spec, int N = kDefaultGaps);

/// Psi(p) for the Schrodinger operator -y'' + p y.
GapVector psi_cap_of_p(const PeriodicFn& p, int N = kDefaultGaps);

/// First components of psi for odd q. Throws InvalidInput if the even part of
/// q exceeds 1e-10.
std::vector<double> psi_even(const PeriodicFn& q, const OperatorSpec& spec, int N = kDefaultGaps);

struct MappingReport {
  EstimateReport estimates;
  GapVector psi;
  double psi_norm = 0.0;        ///< truncated at N
  double psi_norm_m1 = 0.0;     ///< truncated weighted norm, j = -1
  double psi_tail = 0.0;        ///< tail estimate sum_{n > N} |p_n|^2, square-rooted
  double psi_tail_m1 = 0.0;
  bool tail_small = true;       ///< tail below 1e-3 of the truncated norm
};

/// The mapping-level bounds between q, p = P(q) and psi(q). Wherever psi sits
/// on the larger side of an inequality the truncated norm is used as is; where
/// it sits on the smaller side the tail estimate is added (|psi_n| = |gamma_n|/2
/// and |gamma_n| ~ 2 |p_n| for large n).
MappingReport mapping_estimates(const PeriodicFn& q, const OperatorSpec& spec, int N = kDefaultGaps);

}  // namespace torspec
