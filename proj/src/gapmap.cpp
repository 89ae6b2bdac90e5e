#include "torspec/gapmap.hpp"

#include <cmath>
#include <numbers>

#include "torspec/errors.hpp"

namespace torspec {
namespace {

double sign_with_floor(double kappa) {
  if (std::abs(kappa) < kNormingNoiseFloor) return 0.0;
  return kappa > 0.0 ? 1.0 : -1.0;
}

// sqrt(sum_{n > N} (2 pi n)^{2j} |p_n|^2)
double tail_estimate(const PeriodicFn& p, int N, int j) {
  double s = 0.0;
  const int half = static_cast<int>(p.grid_size() / 2);
  for (int n = N + 1; n <= half; ++n)
    s += std::pow(2.0 * std::numbers::pi * n, 2 * j) * std::norm(p.coeff(n));
  return std::sqrt(s);
}

}  // namespace

GapVector gap_vector(const SpectralData& d) {
  GapVector v;
  for (int n = 1; n <= d.N; ++n) {
    const auto [lm, lp] = d.band_edges[n - 1];
    const double mu = d.dirichlet[n - 1];
    GapEntry e;
    e.first = 0.5 * (lm + lp) - mu;
    double r = std::sqrt(std::abs((lp - mu) * (mu - lm)));
    if (r < kPsi2Floor) r = 0.0;
    e.second = r * sign_with_floor(d.norming[n - 1]);
    v.entries.push_back(e);
  }
  return v;
}

GapVector psi_of_q(const PeriodicFn& q, const OperatorSpec& spec, int N) {
  require_zero_mean(q, "profile q");
  return gap_vector(impedance_spectral_data(q, spec, N));
}

GapVector psi_cap_of_p(const PeriodicFn& p, int N) { return gap_vector(spectral_data(p, N)); }

std::vector<double> psi_even(const PeriodicFn& q, const OperatorSpec& spec, int N) {
  const auto [even, odd] = even_odd_split(q);
  if (even.max_abs() > 1e-10) throw InvalidInput("psi_even needs an odd profile q");
  const GapVector v = psi_of_q(q, spec, N);
  std::vector<double> out;
  for (const auto& e : v.entries) out.push_back(e.first);
  return out;
}

MappingReport mapping_estimates(const PeriodicFn& q, const OperatorSpec& spec, int N) {
  require_zero_mean(q, "profile q");
  MappingReport rep;
  const RiccatiParams params = spec.riccati();
  const RiccatiOutput fwd = forward_map(q, params);
  const PeriodicFn& p = fwd.p;

  rep.psi = psi_of_q(q, spec, N);
  rep.psi_norm = weighted_l2_norm(rep.psi, 0);
  rep.psi_norm_m1 = weighted_l2_norm(rep.psi, -1);
  rep.psi_tail = tail_estimate(p, N, 0);
  rep.psi_tail_m1 = tail_estimate(p, N, -1);
  rep.tail_small = rep.psi_tail <= 1e-3 * rep.psi_norm || rep.psi_tail < 1e-12;
  const double psi_hi = std::hypot(rep.psi_norm, rep.psi_tail);
  const double psi_m1_hi = std::hypot(rep.psi_norm_m1, rep.psi_tail_m1);

  const double nq = norm(q);
  const double ndq = norm(q, SobolevIndex::one);
  const double np = norm(p);
  const double npm1 = norm(p, SobolevIndex::minus_one);
  const double b = params.beta;
  const double A = params.A;
  const double w = ndq + nq * (ndq + std::sqrt(params.c_star()) * std::exp(b * nq));

  auto& rows = rep.estimates.rows;
  rows.push_back(inequality_row("q_prime_by_p", ndq, np));
  rows.push_back(inequality_row("p_by_psi", np, 2.0 * rep.psi_norm * (1.0 + std::cbrt(rep.psi_norm))));
  rows.push_back(inequality_row("psi_by_q", psi_hi, w * (1.0 + std::cbrt(w))));
  if (spec.m() == 1) {
    const double c = 1.0 + 2.0 * npm1;
    rows.push_back(inequality_row("psi_m1_by_p_m1", psi_m1_hi, npm1 * c * c * c));
    rows.push_back(inequality_row("p_m1_by_q", npm1, nq * (3.0 + 2.0 * nq + b * A * std::exp(b * nq))));
    rows.push_back(inequality_row("q_by_p_m1", nq * nq, 2.0 * npm1 * npm1 * (1.0 + 2.0 * npm1 * npm1)));
    const double d = 1.0 + 2.0 * rep.psi_norm_m1;
    rows.push_back(inequality_row("p_m1_by_psi_m1", npm1,
                                  96.0 * std::numbers::pi * std::numbers::pi * rep.psi_norm_m1 * d * d * d));
  }
  return rep;
}

}  // namespace torspec
