#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "torspec/periodic_fn.hpp"
#include "torspec/riccati.hpp"

namespace torspec {

/// Values at x = 1 of the fundamental pair of the first-order system: theta
/// starts from (1, 0) and phi from (0, 1). The "p" members hold the second
/// state component, which is y' for the Schrodinger form and rho^2 f' for the
/// impedance form.
struct Monodromy {
  double theta1 = 1.0;
  double theta1p = 0.0;
  double phi1 = 0.0;
  double phi1p = 1.0;

  double wronskian() const { return theta1 * phi1p - theta1p * phi1; }
  double discriminant() const { return 0.5 * (theta1 + phi1p); }
  /// det(M - sigma I), evaluated from the entries so that it keeps full
  /// relative accuracy near band edges. Equals 2 (1 - sigma Lambda).
  double edge_function(double sigma) const {
    return (theta1 - sigma) * (phi1p - sigma) - theta1p * phi1;
  }
};

/// Solution state (y, second component) at a node.
using State = std::array<double, 2>;

/// The 1-periodic linear system
///
///     y' = s(x) z,   z' = (g(x) - lambda w(x)) y,     s, w > 0,
///
/// integrated on a uniform grid by the sixth-order Magnus method. The
/// Schrodinger equation -y'' + p y = lambda y is s = w = 1, g = p; the
/// impedance form -(rho^2 f')'/rho^2 + (E/r^2) f = lambda f is y = f,
/// z = rho^2 f', s = rho^-2, w = rho^2, g = rho^2 E / r^2.
///
/// Sign changes of y at the nodes give the Sturm counts; the grid must be fine
/// enough that a solution turns by less than pi per step, which is checked on
/// every step.
class SturmSystem {
 public:
  /// steps = 0 picks a grid from the band limit of the coefficients.
  static SturmSystem schrodinger(const PeriodicFn& p, std::size_t steps = 0);
  static SturmSystem impedance(const PeriodicFn& q, const OperatorSpec& spec, std::size_t steps = 0);

  std::size_t steps() const { return steps_; }
  /// Rough offset of the spectrum, (n pi)^2 + shift_hint() ~ n-th eigenvalue.
  double shift_hint() const { return shift_hint_; }

  Monodromy monodromy(double lambda) const;

  struct Sweep {
    Monodromy m;
    /// Dirichlet eigenvalues strictly below lambda (zeros of phi in (0,1)).
    int dirichlet_count = 0;
    /// Eigenvalues with z(0) = z(1) = 0 strictly below lambda.
    int neumann_count = 0;
  };
  Sweep sweep(double lambda) const;

  /// Node values of the solution with the given initial state at x = 0, at
  /// x_k = k / steps for k = 0..periods * steps.
  std::vector<State> trajectory(double lambda, State initial, int periods = 1) const;

  /// Coefficient s at the nodes x_k (used to turn z back into y').
  double s_at_node(std::size_t k) const { return s_nodes_[k % steps_]; }

 private:
  SturmSystem() = default;

  struct Step {
    double a, b, c, d;
  };
  Step step_matrix(std::size_t k, double lambda) const;

  std::size_t steps_ = 0;
  double shift_hint_ = 0.0;
  // Coefficients at the three Gauss-Legendre nodes of each step.
  std::array<std::vector<double>, 3> s_, g_, w_;
  std::vector<double> s_nodes_;
};

}  // namespace torspec
