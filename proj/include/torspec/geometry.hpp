#pragma once

#include <array>
#include <vector>

#include "torspec/periodic_fn.hpp"

namespace torspec {

/// Surface ((a + R cos th) cos phi, (a + R cos th) sin phi, a + R sin th).
/// R is stored as a function of tau = theta / (2 pi) on [0, 1).
struct TorusEmbedding {
  double a = 0.0;
  PeriodicFn R;

  /// Throws InvalidInput unless a > 0 and 0 < R < a on the grid.
  TorusEmbedding(double a, PeriodicFn R);
};

/// Meridian arc length t(theta) = int_0^theta sqrt(R'^2 + R^2).
class ArcLength {
 public:
  explicit ArcLength(const TorusEmbedding& emb);

  double b() const { return b_; }
  double t_of_theta(double theta) const;
  /// Inverse map by Newton iteration on the spectral interpolant.
  double theta_of_t(double t) const;

 private:
  double b_ = 0.0;
  PeriodicFn speed_;     // dt/dtheta as a function of tau
  PeriodicFn periodic_;  // t - b tau
};

ArcLength arclength_param(const TorusEmbedding& emb);

struct Profile {
  double r0 = 0.0;
  double b = 0.0;
  PeriodicFn q;  ///< zero mean, m = 1
  PeriodicFn h;  ///< h(tau) = r(b tau) / b
  double max_abs_dh = 0.0;
};

/// Throws InvariantViolation if max |h'| exceeds 1 + 1e-9.
Profile profile_from_embedding(const TorusEmbedding& emb, std::size_t grid_size = 0);

/// r = r0 exp((2/m) Q), Q(x) = int_0^x q.
PeriodicFn profile_to_radius(const PeriodicFn& q, double r0, int m = 1);

/// Points of the embedded surface on an n_theta x n_phi grid.
std::vector<std::array<double, 3>> point_cloud(const TorusEmbedding& emb, int n_theta, int n_phi);

}  // namespace torspec
