#pragma once

#include <optional>
#include <vector>

#include "torspec/gap_vector.hpp"
#include "torspec/hill.hpp"
#include "torspec/periodic_fn.hpp"
#include "torspec/riccati.hpp"

namespace torspec {

/// Quasi-periodic solution phi(x) = e^{s x} phi_1(x) of -phi'' + p phi = lambda phi,
/// phi_1 1-periodic, positive, ||phi_1|| = 1.
struct FloquetSolution {
  double lambda0 = 0.0;
  double log_multiplier = 1.0;  ///< s; the multiplier is e^s
  PeriodicFn phi1;

  double multiplier() const;
};

/// The unique lambda0 < lambda_0^+ with Lambda(lambda0) = cosh s, and phi_1.
/// The default s = 1 is the multiplier e.
FloquetSolution ground_floquet(const PeriodicFn& p, double s = 1.0);

/// max_k |phi(x_k + 1) - e^s phi(x_k)| over 64 points, phi integrated
/// independently of the stored phi_1.
double floquet_periodicity_residual(const PeriodicFn& p, const FloquetSolution& f);

struct InversionResult {
  PeriodicFn q;
  PeriodicFn h;
  double lambda0 = 0.0;
  double log_multiplier = 1.0;  ///< s = int h
  double v0 = 1.0;              ///< v(0) of the constructed v
  double residual = 0.0;        ///< ||p - P(q)|| with A = (h0 / v0)^2
  double energy_error = 0.0;       ///< |-lambda0 - ||q||^2 - ||h||^2|
  double h_integral = 0.0;
  bool norm_bound_pass = false;        ///< ||q||^2 <= 2 ||z||^2 (1 + 2 ||z||^2)
};

/// The periodic solution of v' + 2 h0 = 2 (phi'/phi) v for phi = e^{s x} phi_1,
///     v = 2 h0 phi_1^2 (2s - d/dx)^{-1} phi_1^{-2},
/// which is the closed-form integral solution with C1 = 2 h0/(e^{2s} - 1),
/// C2 = C1 e^{2s}.
PeriodicFn floquet_v(const FloquetSolution& f, double h0);

/// Inverse of P for m = 1, A = h0^2: finds the multiplier e^s for which v(0) = 1,
/// then q = v'/(2v), h = h0/v and lambda0 = -(||q||^2 + ||h||^2). The resulting
/// h has int h = s, which equals 1 only when h0 int e^{-2Q} = 1.
InversionResult invert_riccati_m1(const PeriodicFn& p, double h0);

/// The construction with the multiplier fixed at e (s = 1). v(0) is then not 1
/// in general, and q solves P(q) = p for the coefficient A = (h0/v(0))^2.
InversionResult invert_riccati_fixed_multiplier(const PeriodicFn& p, double h0);

/// A = 0: q = y'/y for the positive periodic ground state y at lambda_0^+.
PeriodicFn invert_riccati_a0(const PeriodicFn& p);

/// Selects lambda_0^+, lambda_n^-, lambda_n^+ or mu_n.
struct EigenSelector {
  enum class Kind { lambda0, minus, plus, dirichlet };
  Kind kind = Kind::lambda0;
  int n = 0;

  static EigenSelector ground() { return {Kind::lambda0, 0}; }
  static EigenSelector minus(int n) { return {Kind::minus, n}; }
  static EigenSelector plus(int n) { return {Kind::plus, n}; }
  static EigenSelector dirichlet(int n) { return {Kind::dirichlet, n}; }
};

/// Gradient density y^2 / int y^2 of the selected eigenvalue of -y'' + p y on
/// the grid of p. Throws DegenerateEigenvalue for an edge of a closed gap.
PeriodicFn eigen_gradient(const PeriodicFn& p, EigenSelector which);
PeriodicFn eigen_gradient(SpectralSolver& solver, std::size_t grid_size, EigenSelector which);

struct GapInversion {
  PeriodicFn q;
  std::vector<double> residual_history;  ///< ||psi(q_k) - target|| per iterate
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;
};

/// Damped Gauss-Newton on the 2 N_modes coefficients of
///     q = sum_k a_k sin 2 pi k x + b_k cos 2 pi k x.
/// Jacobian rows come from eigen_gradient composed with frechet_apply where
/// the eigenvalues are simple, central differences (step 1e-6) otherwise.
GapInversion invert_gap_map(const GapVector& target, const OperatorSpec& spec, int n_modes,
                            std::optional<PeriodicFn> q0 = std::nullopt,
                            std::size_t grid_size = PeriodicFn::kDefaultGrid, double tol = 1e-6,
                            int max_iterations = 50);

}  // namespace torspec
