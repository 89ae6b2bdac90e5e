#include "torspec/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include "torspec/errors.hpp"
#include "torspec/gapmap.hpp"

namespace torspec {
namespace {

struct RootTol {
  bool operator()(double a, double b) const {
    return std::abs(b - a) <= 1e-15 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
};

double solve_bracketed(const auto& f, double lo, double hi, double f_lo, double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, RootTol{}, iters);
  return 0.5 * (r.first + r.second);
}

// Initial state c with M c = sigma c, for M = [[theta1, phi1], [theta1p, phi1p]].
State eigenvector(const Monodromy& m, double sigma) {
  const State a{m.phi1, sigma - m.theta1};
  const State b{sigma - m.phi1p, m.theta1p};
  const double na = std::hypot(a[0], a[1]);
  const double nb = std::hypot(b[0], b[1]);
  if (std::max(na, nb) == 0.0) throw DegenerateEigenvalue("monodromy is a multiple of the identity");
  return na >= nb ? a : b;
}

// Node values y(x_j), x_j = j / M, together with the second state component.
std::pair<std::vector<double>, std::vector<double>> grid_solution(const SturmSystem& sys, double lambda,
                                                                  State init, std::size_t M) {
  const auto traj = sys.trajectory(lambda, init);
  const std::size_t stride = sys.steps() / M;
  std::vector<double> y(M), z(M);
  for (std::size_t j = 0; j < M; ++j) {
    y[j] = traj[j * stride][0];
    z[j] = traj[j * stride][1];
  }
  return {std::move(y), std::move(z)};
}

double norm_bound_rhs(const PeriodicFn& p) {
  const double nz = norm(antiderivative_zero_mean(p));
  return 2.0 * nz * nz * (1.0 + 2.0 * nz * nz);
}

InversionResult assemble(const PeriodicFn& p, const FloquetSolution& f, double h0) {
  const PeriodicFn v = floquet_v(f, h0);
  if (v.min_value() <= 0.0) throw SolverError("constructed v is not positive");
  InversionResult r;
  r.q = 0.5 * v.map([](double x) { return std::log(x); }).derivative();
  r.h = v.map([h0](double x) { return h0 / x; });
  r.lambda0 = f.lambda0;
  r.log_multiplier = f.log_multiplier;
  r.v0 = v[0];
  const double nq = norm(r.q);
  const double nh = norm(r.h);
  r.energy_error = std::abs(-r.lambda0 - nq * nq - nh * nh);
  r.h_integral = integral(r.h);
  const double A = (h0 / r.v0) * (h0 / r.v0);
  r.residual = norm(p - forward_map(r.q, RiccatiParams{1.0, 4.0, A}).p);
  r.norm_bound_pass = inequality_row("q_by_p_m1", nq * nq, norm_bound_rhs(p)).pass;
  return r;
}

}  // namespace

double FloquetSolution::multiplier() const { return std::exp(log_multiplier); }

FloquetSolution ground_floquet(const PeriodicFn& p, double s) {
  if (!(s > 0.0)) throw InvalidInput("the log-multiplier s must be positive");
  SpectralSolver solver(SturmSystem::schrodinger(p));
  const SturmSystem& sys = solver.system();
  const double top = solver.lambda0();
  const double target = std::cosh(s);
  auto f = [&](double lambda) { return sys.monodromy(lambda).discriminant() - target; };

  // Lambda decreases on (-inf, lambda_0^+) from +inf to 1.
  double hi = top;
  double f_hi = 1.0 - target;
  double step = 1.0;
  double lo = top - step;
  double f_lo = f(lo);
  for (int i = 0; f_lo < 0.0; ++i) {
    if (i > 60) throw SolverError("could not bracket the Floquet exponent");
    hi = lo;
    f_hi = f_lo;
    step *= 2.0;
    lo = top - step;
    f_lo = f(lo);
  }
  FloquetSolution out;
  out.log_multiplier = s;
  out.lambda0 = solve_bracketed(f, lo, hi, f_lo, f_hi);

  const double mult = std::exp(s);
  const State c = eigenvector(sys.monodromy(out.lambda0), mult);
  const std::size_t M = p.grid_size();
  auto [y, z] = grid_solution(sys, out.lambda0, c, M);
  for (std::size_t j = 0; j < M; ++j) y[j] *= std::exp(-s * static_cast<double>(j) / M);
  PeriodicFn phi1 = PeriodicFn::from_samples(std::move(y));
  if (phi1[0] < 0.0) phi1 = -phi1;
  phi1 = (1.0 / norm(phi1)) * phi1;
  if (phi1.min_value() <= 0.0) throw SolverError("Floquet factor phi_1 is not positive");
  out.phi1 = std::move(phi1);
  return out;
}

double floquet_periodicity_residual(const PeriodicFn& p, const FloquetSolution& f) {
  const SturmSystem sys = SturmSystem::schrodinger(p);
  const double s = f.log_multiplier;
  const double y0 = f.phi1[0];
  const double dy0 = s * y0 + f.phi1.derivative()[0];
  const auto traj = sys.trajectory(f.lambda0, State{y0, dy0}, 2);
  const std::size_t steps = sys.steps();
  const double mult = f.multiplier();
  double worst = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    const std::size_t i = k * steps / 64;
    worst = std::max(worst, std::abs(traj[i + steps][0] - mult * traj[i][0]));
  }
  return worst;
}

PeriodicFn floquet_v(const FloquetSolution& f, double h0) {
  const double s = f.log_multiplier;
  const PeriodicFn g = f.phi1.map([](double x) { return 1.0 / (x * x); });
  const auto gm = g.modes();
  std::vector<Complex> w(gm.size());
  const std::size_t half = gm.size() - 1;
  for (std::size_t n = 0; n < half; ++n)
    w[n] = 2.0 * h0 * gm[n] / Complex(2.0 * s, -2.0 * std::numbers::pi * static_cast<double>(n));
  // The Nyquist term is real by convention; keep the part symmetric in +-M/2.
  const double kn = std::numbers::pi * static_cast<double>(g.grid_size());
  w[half] = 2.0 * h0 * gm[half].real() * 2.0 * s / (4.0 * s * s + kn * kn);
  const PeriodicFn wf = PeriodicFn::from_modes(g.grid_size(), std::move(w));
  return (f.phi1 * f.phi1) * wf;
}

InversionResult invert_riccati_m1(const PeriodicFn& p, double h0) {
  if (!(h0 > 0.0)) throw InvalidInput("h0 must be positive");
  require_zero_mean(p, "potential p");
  // log v_s(0) decreases from +inf (s -> 0) to -inf (s -> inf).
  auto F = [&](double s) { return std::log(floquet_v(ground_floquet(p, s), h0)[0]); };
  double lo = 1.0, hi = 1.0;
  double f_lo = F(1.0), f_hi = f_lo;
  for (int i = 0; f_hi > 0.0; ++i) {
    if (i > 60) throw SolverError("could not bracket the Floquet multiplier");
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = F(hi);
  }
  for (int i = 0; f_lo < 0.0; ++i) {
    if (i > 60) throw SolverError("could not bracket the Floquet multiplier");
    hi = lo;
    f_hi = f_lo;
    lo *= 0.5;
    f_lo = F(lo);
  }
  const double s = solve_bracketed(F, lo, hi, f_lo, f_hi);
  return assemble(p, ground_floquet(p, s), h0);
}

InversionResult invert_riccati_fixed_multiplier(const PeriodicFn& p, double h0) {
  if (!(h0 > 0.0)) throw InvalidInput("h0 must be positive");
  require_zero_mean(p, "potential p");
  return assemble(p, ground_floquet(p, 1.0), h0);
}

PeriodicFn invert_riccati_a0(const PeriodicFn& p) {
  require_zero_mean(p, "potential p");
  SpectralSolver solver(SturmSystem::schrodinger(p));
  const double lambda = solver.lambda0();
  const SturmSystem& sys = solver.system();
  const State c = eigenvector(sys.monodromy(lambda), 1.0);
  auto [y, dy] = grid_solution(sys, lambda, c, p.grid_size());
  const double sgn = y[0] < 0.0 ? -1.0 : 1.0;
  std::vector<double> q(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!(sgn * y[j] > 0.0)) throw SolverError("periodic ground state is not positive");
    q[j] = dy[j] / y[j];
  }
  PeriodicFn out = PeriodicFn::from_samples(std::move(q));
  if (std::abs(out.mean()) > 1e-8) throw SolverError("ground-state log-derivative has nonzero mean");
  return out.with_zero_mean();
}

PeriodicFn eigen_gradient(const PeriodicFn& p, EigenSelector which) {
  SpectralSolver solver(SturmSystem::schrodinger(p));
  return eigen_gradient(solver, p.grid_size(), which);
}

PeriodicFn eigen_gradient(SpectralSolver& solver, std::size_t grid_size, EigenSelector which) {
  const SturmSystem& sys = solver.system();
  double lambda = 0.0;
  State c{0.0, 1.0};
  switch (which.kind) {
    case EigenSelector::Kind::dirichlet:
      lambda = solver.dirichlet(which.n);
      break;
    case EigenSelector::Kind::lambda0:
      lambda = solver.lambda0();
      c = eigenvector(sys.monodromy(lambda), 1.0);
      break;
    case EigenSelector::Kind::minus:
    case EigenSelector::Kind::plus: {
      const auto e = solver.edges(which.n);
      if (e.second - e.first < 1e-8) {
        std::ostringstream os;
        os << "gap " << which.n << " is closed; its edges have no gradient";
        throw DegenerateEigenvalue(os.str());
      }
      lambda = which.kind == EigenSelector::Kind::minus ? e.first : e.second;
      c = eigenvector(sys.monodromy(lambda), which.n % 2 == 0 ? 1.0 : -1.0);
      break;
    }
  }
  auto [y, z] = grid_solution(sys, lambda, c, grid_size);
  for (double& v : y) v *= v;
  const PeriodicFn y2 = PeriodicFn::from_samples(std::move(y));
  return (1.0 / integral(y2)) * y2;
}

namespace {

std::vector<double> flatten(const GapVector& v) {
  std::vector<double> out;
  for (const auto& e : v.entries) {
    out.push_back(e.first);
    out.push_back(e.second);
  }
  return out;
}

PeriodicFn basis_fn(int j, std::size_t M) {
  const int k = j / 2 + 1;
  const bool sine = j % 2 == 0;
  return PeriodicFn::sample(
      [&](double x) {
        const double t = 2.0 * std::numbers::pi * k * x;
        return sine ? std::sin(t) : std::cos(t);
      },
      M);
}

PeriodicFn from_coeffs(const Eigen::VectorXd& x, std::size_t M) {
  PeriodicFn q = PeriodicFn::zero(M);
  for (int j = 0; j < x.size(); ++j)
    if (x[j] != 0.0) q = q + x[j] * basis_fn(j, M);
  return q;
}

}  // namespace

GapInversion invert_gap_map(const GapVector& target, const OperatorSpec& spec, int n_modes,
                            std::optional<PeriodicFn> q0, std::size_t grid_size, double tol,
                            int max_iterations) {
  if (n_modes < 1) throw InvalidInput("n_modes must be >= 1");
  if (target.size() < 1) throw InvalidInput("target gap vector is empty");
  const int N = static_cast<int>(target.size());
  const int cols = 2 * n_modes;
  const std::vector<double> flat = flatten(target);
  const Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(flat.data(), 2 * N);
  const RiccatiParams params = spec.riccati();

  std::vector<PeriodicFn> basis;
  for (int j = 0; j < cols; ++j) basis.push_back(basis_fn(j, grid_size));

  // Project the initial guess onto the search space.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  if (q0) {
    const PeriodicFn g = q0->resampled(grid_size);
    for (int j = 0; j < cols; ++j) x[j] = 2.0 * inner(g, basis[j]);
  }

  // psi(q) is evaluated as Psi(P(q)), the same Schrodinger operator whose
  // eigenfunctions give the Jacobian.
  auto residual_of = [&](const Eigen::VectorXd& c) {
    const PeriodicFn q = from_coeffs(c, grid_size);
    const auto v = flatten(psi_cap_of_p(forward_map(q, params).p, N));
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), 2 * N) - tv);
  };

  GapInversion out;
  Eigen::VectorXd r = residual_of(x);
  double rn = r.norm();
  out.residual_history.push_back(rn);

  for (int it = 0; it < max_iterations && rn >= tol; ++it) {
    const PeriodicFn q = from_coeffs(x, grid_size);
    const PeriodicFn p = forward_map(q, params).p;
    SpectralSolver solver(SturmSystem::schrodinger(p));

    std::vector<PeriodicFn> dp;
    for (int j = 0; j < cols; ++j) dp.push_back(frechet_apply(q, basis[j], params));

    Eigen::MatrixXd J(2 * N, cols);
    std::vector<bool> need_fd(2 * N, false);
    for (int n = 1; n <= N; ++n) {
      try {
        const PeriodicFn gm = eigen_gradient(solver, grid_size, EigenSelector::minus(n));
        const PeriodicFn gp = eigen_gradient(solver, grid_size, EigenSelector::plus(n));
        const PeriodicFn gmu = eigen_gradient(solver, grid_size, EigenSelector::dirichlet(n));
        const auto [lm, lp] = solver.edges(n);
        const double mu = solver.dirichlet(n);
        const double psi2 = r[2 * n - 1] + tv[2 * n - 1];
        const bool smooth2 = std::abs(psi2) > 1e-6;
        for (int j = 0; j < cols; ++j) {
          const double dlm = inner(gm, dp[j]);
          const double dlp = inner(gp, dp[j]);
          const double dmu = inner(gmu, dp[j]);
          J(2 * n - 2, j) = 0.5 * (dlm + dlp) - dmu;
          if (smooth2)
            J(2 * n - 1, j) = ((dlp - dmu) * (mu - lm) + (lp - mu) * (dmu - dlm)) / (2.0 * psi2);
        }
        need_fd[2 * n - 1] = !smooth2;
      } catch (const DegenerateEigenvalue&) {
        need_fd[2 * n - 2] = need_fd[2 * n - 1] = true;
      }
    }
    if (std::any_of(need_fd.begin(), need_fd.end(), [](bool b) { return b; })) {
      constexpr double h = 1e-6;
      for (int j = 0; j < cols; ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Eigen::VectorXd col = (residual_of(xp) - residual_of(xm)) / (2.0 * h);
        for (int i = 0; i < 2 * N; ++i)
          if (need_fd[i]) J(i, j) = col[i];
      }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
    Eigen::VectorXd step;
    if (qr.rank() < cols) {
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const double mu = 1e-10 * std::max(1.0, JtJ.trace());
      step = -(JtJ + mu * Eigen::MatrixXd::Identity(cols, cols)).ldlt().solve(J.transpose() * r);
      out.diagnostic = "rank-deficient Jacobian regularized";
    } else {
      step = -qr.solve(r);
    }

    bool improved = false;
    double scale = 1.0;
    for (int k = 0; k <= 20; ++k, scale *= 0.5) {
      const Eigen::VectorXd xn = x + scale * step;
      const Eigen::VectorXd rn_vec = residual_of(xn);
      if (rn_vec.norm() < rn) {
        x = xn;
        r = rn_vec;
        rn = rn_vec.norm();
        improved = true;
        break;
      }
    }
    out.iterations = it + 1;
    out.residual_history.push_back(rn);
    if (!improved) {
      out.diagnostic = "step halving failed to reduce the residual";
      break;
    }
  }
  out.q = from_coeffs(x, grid_size);
  out.converged = rn < tol;
  if (!out.converged && out.diagnostic.empty()) out.diagnostic = "iteration cap reached";
  return out;
}

}  // namespace torspec
