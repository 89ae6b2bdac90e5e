#include "torspec/geometry.hpp"

#include <cmath>
#include <numbers>

#include "torspec/errors.hpp"

namespace torspec {
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TorusEmbedding::TorusEmbedding(double a_, PeriodicFn R_) : a(a_), R(std::move(R_)) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidInput("major radius a must be positive");
  if (R.empty()) throw InvalidInput("minor radius samples are empty");
  if (!(R.min_value() > 0.0) || !(R.max_value() < a)) throw InvalidInput("need 0 < R(theta) < a");
}

ArcLength::ArcLength(const TorusEmbedding& emb) {
  // dR/dtheta = R_tau / (2 pi)
  const PeriodicFn dR = (1.0 / kTwoPi) * emb.R.derivative();
  std::vector<double> v(emb.R.grid_size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::hypot(dR[k], emb.R[k]);
  speed_ = PeriodicFn::from_samples(std::move(v));
  b_ = kTwoPi * speed_.mean();
  periodic_ = kTwoPi * antiderivative_zero_start(speed_.with_zero_mean());
}

double ArcLength::t_of_theta(double theta) const {
  const double tau = theta / kTwoPi;
  const double turns = std::floor(tau);
  return b_ * tau + periodic_(tau - turns);
}

double ArcLength::theta_of_t(double t) const {
  const double turns = std::floor(t / b_);
  const double target = t - turns * b_;
  double tau = target / b_;
  for (int i = 0; i < 50; ++i) {
    const double f = b_ * tau + periodic_(tau) - target;
    const double step = f / (kTwoPi * speed_(tau));
    tau -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return kTwoPi * (tau + turns);
}

ArcLength arclength_param(const TorusEmbedding& emb) { return ArcLength(emb); }

Profile profile_from_embedding(const TorusEmbedding& emb, std::size_t grid_size) {
  const std::size_t M = grid_size == 0 ? emb.R.grid_size() : grid_size;
  const ArcLength arc(emb);
  Profile out;
  out.b = arc.b();
  std::vector<double> h(M);
  for (std::size_t k = 0; k < M; ++k) {
    const double theta = arc.theta_of_t(out.b * static_cast<double>(k) / M);
    h[k] = (emb.a + emb.R(theta / kTwoPi) * std::cos(theta)) / out.b;
  }
  out.h = PeriodicFn::from_samples(std::move(h));
  out.r0 = out.h[0];
  out.max_abs_dh = out.h.derivative().max_abs();
  if (out.max_abs_dh > 1.0 + 1e-9)
    throw InvariantViolation("profile slope |h'| exceeds 1; embedding invalid or under-resolved");
  out.q = 0.5 * out.h.map([](double x) { return std::log(x); }).derivative();
  return out;
}

PeriodicFn profile_to_radius(const PeriodicFn& q, double r0, int m) {
  if (!(r0 > 0.0)) throw InvalidInput("r0 must be positive");
  if (m < 1) throw InvalidInput("m must be a positive integer");
  const PeriodicFn Q = antiderivative_zero_start(q);
  return Q.map([&](double x) { return r0 * std::exp(2.0 / m * x); });
}

std::vector<std::array<double, 3>> point_cloud(const TorusEmbedding& emb, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw InvalidInput("point cloud needs positive grid sizes");
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double tau = static_cast<double>(i) / n_theta;
    const double theta = kTwoPi * tau;
    const double R = emb.R(tau);
    const double rho = emb.a + R * std::cos(theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      pts.push_back({rho * std::cos(phi), rho * std::sin(phi), emb.a + R * std::sin(theta)});
    }
  }
  return pts;
}

}  // namespace torspec
