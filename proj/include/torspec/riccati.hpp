#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torspec/periodic_fn.hpp"

namespace torspec {

/// Coefficients of the perturbed Riccati map
///     P(q) = q' + alpha q^2 + u - c0,  u = A exp(-beta Q),  c0 = int (alpha q^2 + u).
struct RiccatiParams {
  double alpha = 1.0;
  double beta = 4.0;
  double A = 0.0;

  double c_star() const { return A * (beta + alpha) * (2.0 + beta * A); }
};

/// Selects the transversal mode of the warped-product Laplacian: Y has
/// dimension m, E_nu is an eigenvalue of -Delta_Y and r0 = r(0) = r(1).
class OperatorSpec {
 public:
  OperatorSpec() = default;
  /// Throws InvalidInput unless m >= 1, E_nu >= 0 and r0 > 0.
  OperatorSpec(int m, double e_nu, double r0);

  int m() const { return m_; }
  double e_nu() const { return e_nu_; }
  double r0() const { return r0_; }
  double A() const { return e_nu_ / (r0_ * r0_); }
  double beta() const { return 4.0 / m_; }
  double alpha() const { return 1.0; }
  RiccatiParams riccati() const { return {alpha(), beta(), A()}; }

 private:
  int m_ = 1;
  double e_nu_ = 0.0;
  double r0_ = 1.0;
};

struct RiccatiOutput {
  PeriodicFn p;  ///< zero mean
  double c0 = 0.0;
  PeriodicFn u;
  PeriodicFn Q;
};

/// Requires zero-mean q.
RiccatiOutput forward_map(const PeriodicFn& q, const RiccatiParams& params);
inline RiccatiOutput forward_map(const PeriodicFn& q, const OperatorSpec& spec) {
  return forward_map(q, spec.riccati());
}

/// Derivative of P at q applied to f:
///     f' + 2 alpha q f - beta u J f - int (2 alpha q f - beta u J f),  J f = int_0^x f.
PeriodicFn frechet_apply(const PeriodicFn& q, const PeriodicFn& f, const RiccatiParams& params);
inline PeriodicFn frechet_apply(const PeriodicFn& q, const PeriodicFn& f, const OperatorSpec& spec) {
  return frechet_apply(q, f, spec.riccati());
}

/// Gaussian curvature of the surface of revolution (m = 1), G = -v' - v^2 with
/// v = 2q, and its split into the mean G0 and the zero-mean part G1.
struct GaussCurvature {
  PeriodicFn G;
  double G0 = 0.0;
  PeriodicFn G1;
};
GaussCurvature gauss_curvature(const PeriodicFn& q);

/// Ricci eigenvalues of the warped product when Y is an Einstein space with
/// Ricci eigenvalue kappa: (E, e1) = (-v' - v^2/m, kappa/r^2 - (v' + v^2)/m).
std::pair<PeriodicFn, PeriodicFn> ricci_eigenvalues(const PeriodicFn& q, const OperatorSpec& spec,
                                                    double kappa);

/// (E0, E1): the mean -(1/m) int v^2 <= 0 of E and its zero-mean remainder.
std::pair<double, PeriodicFn> ricci_split(const PeriodicFn& q, int m);

/// One checked relation. Identities compare lhs and rhs to a relative
/// tolerance; inequalities require lhs <= rhs.
struct EstimateRow {
  enum class Kind { identity, inequality };
  std::string name;
  Kind kind = Kind::inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  ///< rhs - lhs
  bool pass = false;
};

struct EstimateReport {
  std::vector<EstimateRow> rows;

  bool all_pass() const;
  const EstimateRow* find(const std::string& name) const;
};

inline constexpr double kIdentityRelTol = 1e-8;

/// Builds identity and inequality rows with the shared tolerance rules.
EstimateRow identity_row(std::string name, double lhs, double rhs, double rel_tol = kIdentityRelTol);
EstimateRow inequality_row(std::string name, double lhs, double rhs);

/// Evaluates the a-priori relations between q and P(q) by quadrature: two
/// expressions for ||P(q)||^2, upper bounds on ||P(q)|| and ||P(q)||_{-1},
/// ||q'|| <= ||P(q)||, the same relations for the pure Riccati map, the Ricci
/// identity and bounds, and for m = 1 the bound of ||q|| by ||P(q)||_{-1}.
EstimateReport estimate_report(const PeriodicFn& q, const OperatorSpec& spec);

/// Same relations for an arbitrary (alpha, beta, A); `m` only enters the
/// curvature rows and the m = 1 row q_by_p_m1.
EstimateReport estimate_report(const PeriodicFn& q, const RiccatiParams& params, int m);

}  // namespace torspec
