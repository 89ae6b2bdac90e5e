#include "torspec/hill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "torspec/errors.hpp"

namespace torspec {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisection = 400;

struct RootTol {
  bool operator()(double a, double b) const {
    return std::abs(b - a) <= 1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
};

double toms748(const auto& f, double lo, double hi, double f_lo, double f_hi) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "root not bracketed on [" << lo << ", " << hi << "]";
    throw SolverError(os.str());
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, RootTol{}, iters);
  return 0.5 * (r.first + r.second);
}

double sign_of(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

SpectralSolver::SpectralSolver(SturmSystem system) : sys_(std::move(system)) {}

double SpectralSolver::isolate(Kind kind, int index) {
  // Number of eigenvalues of this kind below the target.
  const int below = kind == Kind::dirichlet ? index - 1 : index;
  auto count = [&](double lambda) {
    const auto s = sys_.sweep(lambda);
    return kind == Kind::dirichlet ? s.dirichlet_count : s.neumann_count;
  };

  const double guess = index * index * kPi * kPi + sys_.shift_hint();
  double step = std::max(10.0, (2.0 * index + 1.0) * kPi * kPi * 0.5);
  double lo = guess - step;
  int c_lo = count(lo);
  for (int i = 0; c_lo > below; ++i) {
    if (i > 200) throw SolverError("lower bracket search failed");
    step *= 2.0;
    lo -= step;
    c_lo = count(lo);
  }
  step = std::max(10.0, (2.0 * index + 1.0) * kPi * kPi * 0.5);
  double hi = guess + step;
  int c_hi = count(hi);
  for (int i = 0; c_hi <= below; ++i) {
    if (i > 200) throw SolverError("upper bracket search failed");
    lo = std::max(lo, hi);
    c_lo = std::max(c_lo, c_hi);
    step *= 2.0;
    hi += step;
    c_hi = count(hi);
  }
  for (int i = 0; c_lo != below || c_hi != below + 1; ++i) {
    if (i > kMaxBisection) {
      std::ostringstream os;
      os << "could not isolate eigenvalue " << index;
      throw SolverError(os.str());
    }
    const double mid = 0.5 * (lo + hi);
    const int c = count(mid);
    if (c <= below) {
      lo = mid;
      c_lo = c;
    } else {
      hi = mid;
      c_hi = c;
    }
  }

  auto target = [&](double lambda) {
    const Monodromy m = sys_.monodromy(lambda);
    return kind == Kind::dirichlet ? m.phi1 : m.theta1p;
  };
  const double root = toms748(target, lo, hi, target(lo), target(hi));
  const Monodromy m = sys_.monodromy(root);
  if (kind == Kind::dirichlet)
    mu_slope_[index] = m.phi1p;
  else
    nu_diag_[index] = m.theta1;
  return root;
}

double SpectralSolver::dirichlet(int n) {
  if (n < 1) throw InvalidInput("Dirichlet eigenvalues are indexed from 1");
  if (mu_.size() <= static_cast<std::size_t>(n)) {
    mu_.resize(n + 1);
    mu_slope_.resize(n + 1);
  }
  if (!mu_[n]) mu_[n] = isolate(Kind::dirichlet, n);
  return *mu_[n];
}

double SpectralSolver::neumann(int n) {
  if (n < 0) throw InvalidInput("Neumann eigenvalues are indexed from 0");
  if (nu_.size() <= static_cast<std::size_t>(n)) {
    nu_.resize(n + 1);
    nu_diag_.resize(n + 1);
  }
  if (!nu_[n]) nu_[n] = isolate(Kind::neumann, n);
  return *nu_[n];
}

double SpectralSolver::edge_value_at(Kind kind, int n, double sigma) {
  double x = 0.0;
  if (kind == Kind::dirichlet) {
    dirichlet(n);
    x = *mu_slope_[n];
  } else {
    neumann(n);
    x = *nu_diag_[n];
  }
  return (1.0 / x - sigma) * (x - sigma);
}

double SpectralSolver::edge_root(double lo, double hi, double sigma, double f_lo, double f_hi) {
  auto f = [&](double lambda) { return sys_.monodromy(lambda).edge_function(sigma); };
  return toms748(f, lo, hi, f_lo, f_hi);
}

double SpectralSolver::lambda0() {
  if (lambda0_) return *lambda0_;
  const double lo = neumann(0);
  const bool mu_first = dirichlet(1) <= neumann(1);
  const double hi = mu_first ? dirichlet(1) : neumann(1);
  const double f_lo = edge_value_at(Kind::neumann, 0, 1.0);
  const double f_hi = edge_value_at(mu_first ? Kind::dirichlet : Kind::neumann, 1, 1.0);
  lambda0_ = edge_root(lo, hi, 1.0, f_lo, f_hi);
  return *lambda0_;
}

std::pair<double, double> SpectralSolver::edges(int n) {
  if (n < 1) throw InvalidInput("band edges are indexed from 1");
  if (edges_.size() <= static_cast<std::size_t>(n)) edges_.resize(n + 1);
  if (edges_[n]) return *edges_[n];

  const double sigma = sign_of(n);
  // Lower and upper separators a_k = min(mu_k, nu_k), b_k = max(mu_k, nu_k).
  auto lower = [&](int k) {
    return dirichlet(k) <= neumann(k) ? std::pair{dirichlet(k), Kind::dirichlet}
                                      : std::pair{neumann(k), Kind::neumann};
  };
  auto upper = [&](int k) {
    if (k == 0) return std::pair{neumann(0), Kind::neumann};
    return dirichlet(k) > neumann(k) ? std::pair{dirichlet(k), Kind::dirichlet}
                                     : std::pair{neumann(k), Kind::neumann};
  };

  const auto [b_prev, kb_prev] = upper(n - 1);
  const auto [a_n, ka_n] = lower(n);
  const auto [b_n, kb_n] = upper(n);
  const auto [a_next, ka_next] = lower(n + 1);

  const double minus = edge_root(b_prev, a_n, sigma, edge_value_at(kb_prev, n - 1, sigma),
                                 edge_value_at(ka_n, n, sigma));
  const double plus = edge_root(b_n, a_next, sigma, edge_value_at(kb_n, n, sigma),
                                edge_value_at(ka_next, n + 1, sigma));
  std::pair<double, double> e{minus, plus};
  if (plus - minus < kClosedGap) e = {dirichlet(n), dirichlet(n)};
  edges_[n] = e;
  return e;
}

double SpectralSolver::norming(int n) {
  dirichlet(n);
  const double slope = std::abs(*mu_slope_[n]);
  if (slope < 1e-14) throw SolverError("phi'(1, mu_n) vanishes; mu_n is not a Dirichlet eigenvalue");
  return std::log(slope);
}

SpectralData SpectralSolver::data(int N) {
  if (N < 1) throw InvalidInput("N must be >= 1");
  SpectralData d;
  d.N = N;
  d.lambda0 = lambda0();
  for (int n = 1; n <= N; ++n) {
    d.band_edges.push_back(edges(n));
    d.dirichlet.push_back(dirichlet(n));
    d.norming.push_back(norming(n));
  }
  return d;
}

std::vector<double> SpectralSolver::eigenvalues(int count, Boundary bc) {
  if (count < 1) throw InvalidInput("eigenvalue count must be >= 1");
  std::vector<double> out;
  switch (bc) {
    case Boundary::dirichlet:
      for (int n = 1; n <= count; ++n) out.push_back(dirichlet(n));
      break;
    case Boundary::periodic:
      out.push_back(lambda0());
      for (int n = 2; static_cast<int>(out.size()) < count; n += 2) {
        const auto e = edges(n);
        out.push_back(e.first);
        out.push_back(e.second);
      }
      break;
    case Boundary::antiperiodic:
      for (int n = 1; static_cast<int>(out.size()) < count; n += 2) {
        const auto e = edges(n);
        out.push_back(e.first);
        out.push_back(e.second);
      }
      break;
  }
  out.resize(count);
  return out;
}

SpectralCheck SpectralSolver::check(const SpectralData& d) const {
  SpectralCheck c;
  auto slack = [](double x) { return 1e-10 * std::max(1.0, std::abs(x)); };
  double prev = d.lambda0;
  auto disc_err = [&](double lambda, int n) {
    return std::abs(sys_.monodromy(lambda).discriminant() - sign_of(n));
  };
  c.max_discriminant_error = disc_err(d.lambda0, 0);
  for (int n = 1; n <= d.N; ++n) {
    const auto [lm, lp] = d.band_edges[n - 1];
    if (!(prev < lm) || !(lm <= lp)) c.interlacing = false;
    prev = lp;
    const double mu = d.dirichlet[n - 1];
    if (mu < lm - slack(lm) || mu > lp + slack(lp)) c.dirichlet_in_gap = false;
    c.max_discriminant_error = std::max({c.max_discriminant_error, disc_err(lm, n), disc_err(lp, n)});
  }
  return c;
}

Monodromy monodromy(const PeriodicFn& p, double lambda) {
  return SturmSystem::schrodinger(p).monodromy(lambda);
}

double discriminant(const PeriodicFn& p, double lambda) { return monodromy(p, lambda).discriminant(); }

std::vector<std::pair<double, double>> discriminant_sweep(const PeriodicFn& p, double lo, double hi,
                                                          int count) {
  if (count < 2 || !(hi > lo)) throw InvalidInput("discriminant sweep needs count >= 2 and hi > lo");
  const SturmSystem sys = SturmSystem::schrodinger(p);
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double lambda = lo + (hi - lo) * i / (count - 1);
    out.emplace_back(lambda, sys.monodromy(lambda).discriminant());
  }
  return out;
}

BandEdges periodic_eigenvalues(const PeriodicFn& p, int N) {
  if (N < 1) throw InvalidInput("N must be >= 1");
  SpectralSolver s(SturmSystem::schrodinger(p));
  BandEdges out;
  out.lambda0 = s.lambda0();
  for (int n = 1; n <= N; ++n) out.edges.push_back(s.edges(n));
  return out;
}

std::vector<double> dirichlet_eigenvalues(const PeriodicFn& p, int N) {
  SpectralSolver s(SturmSystem::schrodinger(p));
  return s.eigenvalues(N, Boundary::dirichlet);
}

std::vector<double> norming_constants(const PeriodicFn& p, const std::vector<double>& mu) {
  const SturmSystem sys = SturmSystem::schrodinger(p);
  std::vector<double> out;
  for (double m : mu) {
    const double slope = std::abs(sys.monodromy(m).phi1p);
    if (slope < 1e-14) throw SolverError("phi'(1, mu) vanishes; mu is not a Dirichlet eigenvalue");
    out.push_back(std::log(slope));
  }
  return out;
}

SpectralData spectral_data(const PeriodicFn& p, int N) {
  return SpectralSolver(SturmSystem::schrodinger(p)).data(N);
}

SpectralData impedance_spectral_data(const PeriodicFn& q, const OperatorSpec& spec, int N) {
  return SpectralSolver(SturmSystem::impedance(q, spec)).data(N);
}

std::vector<double> schrodinger_spectrum(const PeriodicFn& p, int count, Boundary bc) {
  return SpectralSolver(SturmSystem::schrodinger(p)).eigenvalues(count, bc);
}

std::vector<double> impedance_spectrum(const PeriodicFn& q, const OperatorSpec& spec, int count,
                                       Boundary bc) {
  return SpectralSolver(SturmSystem::impedance(q, spec)).eigenvalues(count, bc);
}

}  // namespace torspec
