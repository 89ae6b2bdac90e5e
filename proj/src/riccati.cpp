#include "torspec/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torspec/errors.hpp"

namespace torspec {

OperatorSpec::OperatorSpec(int m, double e_nu, double r0) : m_(m), e_nu_(e_nu), r0_(r0) {
  if (m < 1) throw InvalidInput("m must be a positive integer");
  if (!(e_nu >= 0.0) || !std::isfinite(e_nu)) throw InvalidInput("E_nu must be finite and >= 0");
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw InvalidInput("r0 must be finite and > 0");
}

RiccatiOutput forward_map(const PeriodicFn& q, const RiccatiParams& params) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !(params.A >= 0.0))
    throw InvalidInput("Riccati parameters need alpha > 0, beta > 0, A >= 0");
  RiccatiOutput out;
  out.Q = antiderivative_zero_start(q);
  out.u = out.Q.map([&](double Qx) { return params.A * std::exp(-params.beta * Qx); });
  const PeriodicFn f = params.alpha * (q * q) + out.u;
  out.c0 = integral(f);
  out.p = (q.derivative() + f + (-out.c0)).with_zero_mean();
  return out;
}

PeriodicFn frechet_apply(const PeriodicFn& q, const PeriodicFn& f, const RiccatiParams& params) {
  require_zero_mean(f, "Frechet direction");
  const RiccatiOutput base = forward_map(q, params);
  const PeriodicFn Jf = antiderivative_zero_start(f);
  const PeriodicFn g = (2.0 * params.alpha) * (q * f) - params.beta * (base.u * Jf);
  return (f.derivative() + g + (-integral(g))).with_zero_mean();
}

GaussCurvature gauss_curvature(const PeriodicFn& q) {
  require_zero_mean(q, "profile q");
  const PeriodicFn v = 2.0 * q;
  GaussCurvature out;
  out.G = -(v.derivative() + v * v);
  out.G0 = integral(out.G);
  out.G1 = out.G.with_zero_mean();
  return out;
}

std::pair<PeriodicFn, PeriodicFn> ricci_eigenvalues(const PeriodicFn& q, const OperatorSpec& spec,
                                                    double kappa) {
  if (!(kappa >= 0.0)) throw InvalidInput("kappa must be >= 0");
  const double m = spec.m();
  const PeriodicFn v = 2.0 * q;
  const PeriodicFn dv = v.derivative();
  const PeriodicFn v2 = v * v;
  const PeriodicFn Q = antiderivative_zero_start(q);
  const PeriodicFn inv_r2 = Q.map([&](double Qx) {
    const double r = spec.r0() * std::exp(2.0 / m * Qx);
    return 1.0 / (r * r);
  });
  PeriodicFn ricci_main = -(dv + (1.0 / m) * v2);
  PeriodicFn ricci_fiber = kappa * inv_r2 - (1.0 / m) * (dv + v2);
  return {std::move(ricci_main), std::move(ricci_fiber)};
}

std::pair<double, PeriodicFn> ricci_split(const PeriodicFn& q, int m) {
  if (m < 1) throw InvalidInput("m must be a positive integer");
  require_zero_mean(q, "profile q");
  const PeriodicFn v = 2.0 * q;
  const PeriodicFn v2 = v * v;
  const double e0 = -integral(v2) / m;
  PeriodicFn e1 = (-(v.derivative() + (1.0 / m) * v2) + (-e0)).with_zero_mean();
  return {e0, std::move(e1)};
}

bool EstimateReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const EstimateRow& r) { return r.pass; });
}

const EstimateRow* EstimateReport::find(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

EstimateRow identity_row(std::string name, double lhs, double rhs, double rel_tol) {
  EstimateRow row{std::move(name), EstimateRow::Kind::identity, lhs, rhs, rhs - lhs, false};
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  row.pass = std::abs(lhs - rhs) <= rel_tol * scale + 1e-14;
  return row;
}

EstimateRow inequality_row(std::string name, double lhs, double rhs) {
  EstimateRow row{std::move(name), EstimateRow::Kind::inequality, lhs, rhs, rhs - lhs, false};
  // Quadrature round-off only; the relations themselves are not loosened.
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  row.pass = lhs <= rhs + 1e-12 * scale + 1e-14;
  return row;
}

EstimateReport estimate_report(const PeriodicFn& q, const OperatorSpec& spec) {
  return estimate_report(q, spec.riccati(), spec.m());
}

EstimateReport estimate_report(const PeriodicFn& q, const RiccatiParams& params, int m) {
  require_zero_mean(q, "profile q");
  const double a = params.alpha;
  const double b = params.beta;
  const double A = params.A;

  const RiccatiOutput out = forward_map(q, params);
  const PeriodicFn q2 = q * q;
  const double nq = norm(q);
  const double ndq = norm(q, SobolevIndex::one);
  const double nP = norm(out.p);
  const double nP2 = nP * nP;
  const double q2u = inner(q2, out.u);
  const double nq2 = norm(q2);
  const double nu = norm(out.u);

  EstimateReport rep;
  const PeriodicFn h = a * q2 + out.u + (-out.c0);
  const double nh = norm(h);
  rep.rows.push_back(identity_row("p_norm_identity", nP2, ndq * ndq + nh * nh + 2.0 * b * q2u));
  rep.rows.push_back(identity_row(
      "p_norm_expanded", nP2, ndq * ndq + a * a * nq2 * nq2 + nu * nu + 2.0 * (b + a) * q2u - out.c0 * out.c0));
  rep.rows.push_back(inequality_row(
      "p_norm_upper", nP2,
      ndq * ndq + a * a * 2.0 * nq * nq * nq * ndq +
          params.c_star() * nq * nq * std::exp(2.0 * b * nq)));
  rep.rows.push_back(inequality_row("q_prime_by_p", ndq, nP));

  // The pure Riccati map (u = 0, alpha = 1).
  {
    const RiccatiOutput riccati = forward_map(q, RiccatiParams{1.0, b, 0.0});
    const double n0 = norm(riccati.p);
    const double c0 = riccati.c0;
    const double nshift = norm(q2 + (-c0));
    rep.rows.push_back(identity_row("riccati_identity", n0 * n0, ndq * ndq + nshift * nshift));
    rep.rows.push_back(identity_row("riccati_expanded", n0 * n0, ndq * ndq + nq2 * nq2 - c0 * c0));
    rep.rows.push_back(inequality_row("riccati_lower", ndq * ndq, n0 * n0));
    rep.rows.push_back(inequality_row("riccati_upper", n0 * n0, ndq * ndq + nq2 * nq2));
  }

  const double nPm1 = norm(out.p, SobolevIndex::minus_one);
  rep.rows.push_back(
      inequality_row("p_m1_by_q", nPm1, nq * (3.0 + 2.0 * nq + b * A * std::exp(b * nq))));
  if (m == 1 && a == 1.0) {
    rep.rows.push_back(
        inequality_row("q_by_p_m1", nq * nq, 2.0 * nPm1 * nPm1 * (1.0 + 2.0 * nPm1 * nPm1)));
  }

  // Ricci curvature of the warped product.
  {
    const auto [e0, e1] = ricci_split(q, m);
    const PeriodicFn v = 2.0 * q;
    const double nv = norm(v);
    const double ndv = norm(v, SobolevIndex::one);
    const double nv2 = norm(v * v);
    const double ne1 = norm(e1);
    const double mm = static_cast<double>(m) * m;
    rep.rows.push_back(identity_row("ricci_identity", ne1 * ne1, ndv * ndv + nv2 * nv2 / mm - e0 * e0));
    rep.rows.push_back(inequality_row("ricci_lower", ndv * ndv, ne1 * ne1));
    rep.rows.push_back(inequality_row(
        "ricci_upper", ne1 * ne1, ndv * ndv + nv * nv * ndv * ndv / mm - nv * nv * nv * nv / mm));
  }
  return rep;
}

}  // namespace torspec
