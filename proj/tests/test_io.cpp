#include <doctest.h>

#include <cmath>
#include <sstream>

#include "torspec/errors.hpp"
#include "torspec/gapmap.hpp"
#include "torspec/io.hpp"
#include "torspec/random_profile.hpp"

using namespace torspec;
using doctest::Approx;

namespace {
template <class T, class F>
T roundtrip(const T& value, F&& reader) {
  return reader(io::parse(io::emit(io::to_node(value))));
}
}  // namespace

TEST_CASE("periodic function record") {
  const PeriodicFn f = random_profile(4);
  const PeriodicFn g = roundtrip(f, io::periodic_fn_from);
  REQUIRE(g.grid_size() == f.grid_size());
  CHECK((f - g).max_abs() <= 1e-12 * f.max_abs());
  for (std::size_t k = 0; k < f.grid_size(); ++k) CHECK(f[k] == g[k]);  // 17 significant digits
  const YAML::Node n = io::to_node(f, "q");
  CHECK(n["kind"].as<std::string>() == "periodic_fn");
  CHECK(n["label"].as<std::string>() == "q");
}

TEST_CASE("operator spec record") {
  const OperatorSpec s = roundtrip(OperatorSpec(3, 2.5, 0.75), io::spec_from);
  CHECK(s.m() == 3);
  CHECK(s.e_nu() == 2.5);
  CHECK(s.r0() == 0.75);
}

TEST_CASE("spectral data and gap vector records") {
  const SpectralData d = spectral_data(3.0 * random_profile(2), 6);
  const SpectralData e = roundtrip(d, io::spectral_data_from);
  CHECK(e.N == 6);
  CHECK(e.lambda0 == d.lambda0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(e.band_edges[n - 1] == d.band_edges[n - 1]);
    CHECK(e.dirichlet[n - 1] == d.dirichlet[n - 1]);
    CHECK(e.norming[n - 1] == d.norming[n - 1]);
  }
  const GapVector v = gap_vector(d);
  const GapVector w = roundtrip(v, io::gap_vector_from);
  REQUIRE(w.size() == v.size());
  for (std::size_t n = 1; n <= v.size(); ++n) {
    CHECK(w.at(n).first == v.at(n).first);
    CHECK(w.at(n).second == v.at(n).second);
  }
}

TEST_CASE("estimate and inversion records") {
  const PeriodicFn q = random_profile(9);
  const EstimateReport r = estimate_report(q, OperatorSpec(1, 1.0, 1.0));
  const EstimateReport s = roundtrip(r, io::estimate_report_from);
  REQUIRE(s.rows.size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(s.rows[i].name == r.rows[i].name);
    CHECK(s.rows[i].kind == r.rows[i].kind);
    CHECK(s.rows[i].lhs == r.rows[i].lhs);
    CHECK(s.rows[i].pass == r.rows[i].pass);
  }
  CHECK(io::to_node(r)["all_pass"].as<bool>() == r.all_pass());

  const InversionResult inv = invert_riccati_m1(forward_map(q, OperatorSpec(1, 1.0, 1.0)).p, 1.0);
  const InversionResult back = roundtrip(inv, io::inversion_result_from);
  CHECK((back.q - inv.q).max_abs() <= 1e-12);
  CHECK((back.h - inv.h).max_abs() <= 1e-12);
  CHECK(back.lambda0 == inv.lambda0);
  CHECK(back.residual == inv.residual);
}

TEST_CASE("geometry records") {
  const TorusEmbedding emb(2.0, PeriodicFn::sample([](double t) { return 0.5 + 0.05 * std::cos(2 * M_PI * t); }));
  const TorusEmbedding e2 = roundtrip(emb, io::embedding_from);
  CHECK(e2.a == 2.0);
  CHECK((e2.R - emb.R).max_abs() == 0.0);
  const Profile p = profile_from_embedding(emb);
  const Profile p2 = roundtrip(p, io::profile_from);
  CHECK(p2.b == p.b);
  CHECK(p2.r0 == p.r0);
  CHECK((p2.q - p.q).max_abs() <= 1e-12);
}

TEST_CASE("malformed records") {
  CHECK_THROWS_AS(io::parse("kind: [unclosed"), InvalidInput);
  CHECK_THROWS_AS(io::periodic_fn_from(io::parse("kind: operator_spec\nm: 1\n")), InvalidInput);
  CHECK_THROWS_AS(io::periodic_fn_from(io::parse("grid_size: 16\n")), InvalidInput);
  CHECK_THROWS_AS(io::periodic_fn_from(io::parse("kind: periodic_fn\ngrid_size: 3\nsamples: [1, 2, 3]\n")),
                  InvalidInput);
  CHECK_THROWS_AS(io::periodic_fn_from(io::parse("kind: periodic_fn\ngrid_size: 16\nsamples: [1, 2]\n")),
                  InvalidInput);
  CHECK_THROWS_AS(io::spec_from(io::parse("kind: operator_spec\nm: 0\ne_nu: 1\nr0: 1\n")), InvalidInput);
  CHECK_THROWS_AS(io::spec_from(io::parse("kind: operator_spec\nm: one\ne_nu: 1\nr0: 1\n")), InvalidInput);
  CHECK_THROWS_AS(io::gap_vector_from(io::parse("kind: gap_vector\nentries: [[2, 0.1, 0.0]]\n")), InvalidInput);
  CHECK_THROWS_AS(io::gap_vector_from(io::parse("kind: gap_vector\nentries: [[1, 0.1]]\n")), InvalidInput);
  CHECK_THROWS_AS(io::embedding_from(io::parse("kind: embedding\na: 1\nR_samples: [" + std::string(
                                                   "2,2,2,2,2,2,2,2,2,2,2,2,2,2,2,2") + "]\n")),
                  InvalidInput);
  CHECK_THROWS_AS(io::load_file("/nonexistent/record.yaml"), InvalidInput);
}

TEST_CASE("plot output") {
  std::ostringstream os;
  io::write_plot(os, {{1.0, 2.0}, {3.5, -4.0}});
  std::istringstream is(os.str());
  double a, b, c, d;
  is >> a >> b >> c >> d;
  CHECK(a == 1.0);
  CHECK(b == 2.0);
  CHECK(c == 3.5);
  CHECK(d == -4.0);
}
