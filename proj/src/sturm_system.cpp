#include "torspec/sturm_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "torspec/errors.hpp"

namespace torspec {
namespace {

// Gauss-Legendre abscissae on [0, 1].
const double kSqrt15 = std::sqrt(15.0);
const std::array<double, 3> kGauss = {0.5 - kSqrt15 / 10.0, 0.5, 0.5 + kSqrt15 / 10.0};

// Largest rotation per step for which node sign changes count zeros exactly.
constexpr double kMaxTurn = 0.75 * std::numbers::pi;

struct M2 {
  double a = 0, b = 0, c = 0, d = 0;
};

M2 operator+(const M2& x, const M2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
M2 operator-(const M2& x, const M2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
M2 operator*(double s, const M2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
M2 comm(const M2& x, const M2& y) { return mul(x, y) - mul(y, x); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t default_steps(const PeriodicFn& base, std::size_t requested, int band_factor) {
  if (requested != 0) {
    if ((requested & (requested - 1)) != 0 || requested < 64)
      throw InvalidInput("Sturm system step count must be a power of two >= 64");
    return std::max(requested, base.grid_size());
  }
  const auto band = static_cast<std::size_t>(std::max(1, base.band_limit(1e-13) * band_factor));
  return next_pow2(std::max({std::size_t{2048}, 32 * band, base.grid_size()}));
}

// Values of f at x_k + c h, k = 0..steps-1, by exact trigonometric interpolation.
std::vector<double> node_values(const PeriodicFn& f, std::size_t steps, double c) {
  const double h = 1.0 / static_cast<double>(steps);
  const PeriodicFn g = f.shifted(c * h).resampled(steps);
  return {g.samples().begin(), g.samples().end()};
}

}  // namespace

SturmSystem SturmSystem::schrodinger(const PeriodicFn& p, std::size_t steps) {
  SturmSystem sys;
  sys.steps_ = default_steps(p, steps, 1);
  sys.shift_hint_ = p.mean();
  for (int i = 0; i < 3; ++i) {
    sys.g_[i] = node_values(p, sys.steps_, kGauss[i]);
    sys.s_[i].assign(sys.steps_, 1.0);
    sys.w_[i].assign(sys.steps_, 1.0);
  }
  sys.s_nodes_.assign(sys.steps_, 1.0);
  return sys;
}

SturmSystem SturmSystem::impedance(const PeriodicFn& q, const OperatorSpec& spec, std::size_t steps) {
  const PeriodicFn Q = antiderivative_zero_start(q);
  const double m = spec.m();
  const double rm = std::pow(spec.r0(), m);
  const double gscale = spec.e_nu() * std::pow(spec.r0(), m - 2.0);
  const double gexp = 2.0 - 4.0 / m;

  SturmSystem sys;
  sys.steps_ = default_steps(Q, steps, 2);
  const RiccatiOutput fwd = forward_map(q, spec);
  sys.shift_hint_ = fwd.c0;
  for (int i = 0; i < 3; ++i) {
    const auto Qn = node_values(Q, sys.steps_, kGauss[i]);
    auto& s = sys.s_[i];
    auto& g = sys.g_[i];
    auto& w = sys.w_[i];
    s.resize(sys.steps_);
    g.resize(sys.steps_);
    w.resize(sys.steps_);
    for (std::size_t k = 0; k < sys.steps_; ++k) {
      const double rho2 = rm * std::exp(2.0 * Qn[k]);
      s[k] = 1.0 / rho2;
      w[k] = rho2;
      g[k] = gscale * std::exp(gexp * Qn[k]);
    }
  }
  const auto Qnodes = node_values(Q, sys.steps_, 0.0);
  sys.s_nodes_.resize(sys.steps_);
  for (std::size_t k = 0; k < sys.steps_; ++k) sys.s_nodes_[k] = 1.0 / (rm * std::exp(2.0 * Qnodes[k]));
  return sys;
}

SturmSystem::Step SturmSystem::step_matrix(std::size_t k, double lambda) const {
  const double h = 1.0 / static_cast<double>(steps_);
  M2 A[3];
  for (int i = 0; i < 3; ++i) A[i] = {0.0, s_[i][k], g_[i][k] - lambda * w_[i][k], 0.0};

  // Sixth-order Magnus expansion with three Gauss nodes.
  const M2 a1 = h * A[1];
  const M2 a2 = (kSqrt15 * h / 3.0) * (A[2] - A[0]);
  const M2 a3 = (10.0 * h / 3.0) * (A[2] - 2.0 * A[1] + A[0]);
  const M2 c1 = comm(a1, a2);
  const M2 c2 = (-1.0 / 60.0) * comm(a1, 2.0 * a3 + c1);
  const M2 omega = a1 + (1.0 / 12.0) * a3 + (1.0 / 240.0) * comm(-20.0 * a1 - a3 + c1, a2 + c2);

  // exp(omega) for a 2x2 matrix: split off the (round-off sized) trace.
  const double t = 0.5 * (omega.a + omega.d);
  const double x = omega.a - t;
  const double det2 = x * x + omega.b * omega.c;
  double ch = 1.0;
  double sh = 1.0;
  if (std::abs(det2) < 1e-6) {
    ch = 1.0 + det2 * (0.5 + det2 * (1.0 / 24.0 + det2 / 720.0));
    sh = 1.0 + det2 * (1.0 / 6.0 + det2 * (1.0 / 120.0 + det2 / 5040.0));
  } else if (det2 > 0.0) {
    const double r = std::sqrt(det2);
    ch = std::cosh(r);
    sh = std::sinh(r) / r;
  } else {
    const double r = std::sqrt(-det2);
    if (r > kMaxTurn) {
      std::ostringstream os;
      os << "integration grid too coarse for lambda = " << lambda << " (" << steps_ << " steps)";
      throw SolverError(os.str());
    }
    ch = std::cos(r);
    sh = std::sin(r) / r;
  }
  const double e = t == 0.0 ? 1.0 : std::exp(t);
  return {e * (ch + sh * x), e * sh * omega.b, e * sh * omega.c, e * (ch - sh * x)};
}

Monodromy SturmSystem::monodromy(double lambda) const { return sweep(lambda).m; }

SturmSystem::Sweep SturmSystem::sweep(double lambda) const {
  // Columns: (theta, theta_z) and (phi, phi_z).
  double t0 = 1.0, t1 = 0.0, f0 = 0.0, f1 = 1.0;
  int theta_sign = 1, phi_sign = 1;
  int theta_zeros = 0, phi_zeros = 0;
  for (std::size_t k = 0; k < steps_; ++k) {
    const Step E = step_matrix(k, lambda);
    const double nt0 = E.a * t0 + E.b * t1;
    const double nt1 = E.c * t0 + E.d * t1;
    const double nf0 = E.a * f0 + E.b * f1;
    const double nf1 = E.c * f0 + E.d * f1;
    t0 = nt0, t1 = nt1, f0 = nf0, f1 = nf1;
    if (t0 != 0.0 && (t0 > 0.0 ? 1 : -1) != theta_sign) {
      theta_sign = -theta_sign;
      ++theta_zeros;
    }
    if (f0 != 0.0 && (f0 > 0.0 ? 1 : -1) != phi_sign) {
      phi_sign = -phi_sign;
      ++phi_zeros;
    }
  }
  Sweep out;
  out.m = {t0, t1, f0, f1};
  out.dirichlet_count = phi_zeros;
  // theta's Prufer angle lies in (z pi, (z + 1) pi); it has passed the next
  // Neumann angle z pi + pi/2 once the derivative component turns against y.
  const bool past_half = t0 == 0.0 || theta_sign * t1 < 0.0;
  out.neumann_count = theta_zeros + (past_half ? 1 : 0);
  return out;
}

std::vector<State> SturmSystem::trajectory(double lambda, State initial, int periods) const {
  if (periods < 1) throw InvalidInput("trajectory needs at least one period");
  std::vector<Step> steps(steps_);
  for (std::size_t k = 0; k < steps_; ++k) steps[k] = step_matrix(k, lambda);
  std::vector<State> out;
  out.reserve(periods * steps_ + 1);
  out.push_back(initial);
  State y = initial;
  for (int p = 0; p < periods; ++p) {
    for (const Step& E : steps) {
      y = {E.a * y[0] + E.b * y[1], E.c * y[0] + E.d * y[1]};
      out.push_back(y);
    }
  }
  return out;
}

}  // namespace torspec
