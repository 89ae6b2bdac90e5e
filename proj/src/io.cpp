#include "torspec/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "torspec/errors.hpp"

namespace torspec::io {
namespace {

YAML::Node require(const YAML::Node& n, const char* key) {
  if (!n.IsMap() || !n[key]) throw InvalidInput(std::string("record lacks field '") + key + "'");
  return n[key];
}

void expect_kind(const YAML::Node& n, const char* kind) {
  const std::string k = require(n, "kind").as<std::string>();
  if (k != kind) throw InvalidInput("expected a '" + std::string(kind) + "' record, got '" + k + "'");
}

template <class T>
T get(const YAML::Node& n, const char* key) {
  try {
    return require(n, key).as<T>();
  } catch (const YAML::Exception& e) {
    throw InvalidInput(std::string("bad value for '") + key + "': " + e.what());
  }
}

YAML::Node flow_seq(std::span<const double> v) {
  YAML::Node s(YAML::NodeType::Sequence);
  for (double x : v) s.push_back(x);
  s.SetStyle(YAML::EmitterStyle::Flow);
  return s;
}

PeriodicFn samples_from(const YAML::Node& n, const char* key) {
  return PeriodicFn::from_samples(get<std::vector<double>>(n, key));
}

}  // namespace

YAML::Node to_node(const PeriodicFn& f, const std::string& label) {
  YAML::Node n;
  n["kind"] = "periodic_fn";
  if (!label.empty()) n["label"] = label;
  n["grid_size"] = f.grid_size();
  n["samples"] = flow_seq(f.samples());
  return n;
}

PeriodicFn periodic_fn_from(const YAML::Node& n) {
  expect_kind(n, "periodic_fn");
  const auto M = get<std::size_t>(n, "grid_size");
  PeriodicFn f = samples_from(n, "samples");
  if (f.grid_size() != M) throw InvalidInput("grid_size does not match the sample count");
  return f;
}

YAML::Node to_node(const OperatorSpec& spec) {
  YAML::Node n;
  n["kind"] = "operator_spec";
  n["m"] = spec.m();
  n["e_nu"] = spec.e_nu();
  n["r0"] = spec.r0();
  return n;
}

OperatorSpec spec_from(const YAML::Node& n) {
  expect_kind(n, "operator_spec");
  return OperatorSpec(get<int>(n, "m"), get<double>(n, "e_nu"), get<double>(n, "r0"));
}

YAML::Node to_node(const SpectralData& d) {
  YAML::Node n;
  n["kind"] = "spectral_data";
  n["N"] = d.N;
  n["lambda0"] = d.lambda0;
  std::vector<double> lm, lp;
  for (const auto& [a, b] : d.band_edges) {
    lm.push_back(a);
    lp.push_back(b);
  }
  n["band_minus"] = flow_seq(lm);
  n["band_plus"] = flow_seq(lp);
  n["dirichlet"] = flow_seq(d.dirichlet);
  n["norming"] = flow_seq(d.norming);
  return n;
}

SpectralData spectral_data_from(const YAML::Node& n) {
  expect_kind(n, "spectral_data");
  SpectralData d;
  d.N = get<int>(n, "N");
  d.lambda0 = get<double>(n, "lambda0");
  const auto lm = get<std::vector<double>>(n, "band_minus");
  const auto lp = get<std::vector<double>>(n, "band_plus");
  d.dirichlet = get<std::vector<double>>(n, "dirichlet");
  d.norming = get<std::vector<double>>(n, "norming");
  const auto N = static_cast<std::size_t>(d.N);
  if (d.N < 1 || lm.size() != N || lp.size() != N || d.dirichlet.size() != N || d.norming.size() != N)
    throw InvalidInput("spectral_data arrays must all have length N");
  for (std::size_t i = 0; i < N; ++i) d.band_edges.emplace_back(lm[i], lp[i]);
  return d;
}

YAML::Node to_node(const GapVector& v) {
  YAML::Node n;
  n["kind"] = "gap_vector";
  YAML::Node entries(YAML::NodeType::Sequence);
  for (std::size_t i = 1; i <= v.size(); ++i) {
    YAML::Node e(YAML::NodeType::Sequence);
    e.push_back(i);
    e.push_back(v.at(i).first);
    e.push_back(v.at(i).second);
    e.SetStyle(YAML::EmitterStyle::Flow);
    entries.push_back(e);
  }
  n["entries"] = entries;
  return n;
}

GapVector gap_vector_from(const YAML::Node& n) {
  expect_kind(n, "gap_vector");
  GapVector v;
  const YAML::Node entries = require(n, "entries");
  std::size_t expect = 1;
  for (const auto& e : entries) {
    if (!e.IsSequence() || e.size() != 3) throw InvalidInput("gap entries are (n, psi1, psi2)");
    if (e[0].as<std::size_t>() != expect++) throw InvalidInput("gap entries must be numbered 1, 2, ...");
    v.entries.push_back({e[1].as<double>(), e[2].as<double>()});
  }
  return v;
}

YAML::Node to_node(const EstimateReport& r) {
  YAML::Node n;
  n["kind"] = "estimate_report";
  n["all_pass"] = r.all_pass();
  YAML::Node rows(YAML::NodeType::Sequence);
  for (const auto& row : r.rows) {
    YAML::Node e;
    e["name"] = row.name;
    e["type"] = row.kind == EstimateRow::Kind::identity ? "identity" : "inequality";
    e["lhs"] = row.lhs;
    e["rhs"] = row.rhs;
    e["slack"] = row.slack;
    e["pass"] = row.pass;
    e.SetStyle(YAML::EmitterStyle::Flow);
    rows.push_back(e);
  }
  n["rows"] = rows;
  return n;
}

EstimateReport estimate_report_from(const YAML::Node& n) {
  expect_kind(n, "estimate_report");
  EstimateReport r;
  for (const auto& e : require(n, "rows")) {
    EstimateRow row;
    row.name = get<std::string>(e, "name");
    row.kind = get<std::string>(e, "type") == "identity" ? EstimateRow::Kind::identity
                                                        : EstimateRow::Kind::inequality;
    row.lhs = get<double>(e, "lhs");
    row.rhs = get<double>(e, "rhs");
    row.slack = get<double>(e, "slack");
    row.pass = get<bool>(e, "pass");
    r.rows.push_back(row);
  }
  return r;
}

YAML::Node to_node(const InversionResult& r) {
  YAML::Node n;
  n["kind"] = "inversion_result";
  n["lambda0"] = r.lambda0;
  n["residual"] = r.residual;
  n["log_multiplier"] = r.log_multiplier;
  n["v0"] = r.v0;
  n["energy_error"] = r.energy_error;
  n["h_integral"] = r.h_integral;
  n["norm_bound_pass"] = r.norm_bound_pass;
  n["grid_size"] = r.q.grid_size();
  n["q_samples"] = flow_seq(r.q.samples());
  n["h_samples"] = flow_seq(r.h.samples());
  return n;
}

InversionResult inversion_result_from(const YAML::Node& n) {
  expect_kind(n, "inversion_result");
  InversionResult r;
  r.lambda0 = get<double>(n, "lambda0");
  r.residual = get<double>(n, "residual");
  r.log_multiplier = get<double>(n, "log_multiplier");
  r.v0 = get<double>(n, "v0");
  r.energy_error = get<double>(n, "energy_error");
  r.h_integral = get<double>(n, "h_integral");
  r.norm_bound_pass = get<bool>(n, "norm_bound_pass");
  r.q = samples_from(n, "q_samples");
  r.h = samples_from(n, "h_samples");
  if (r.h.min_value() <= 0.0) throw InvalidInput("inversion h must be positive");
  return r;
}

YAML::Node to_node(const Profile& p) {
  YAML::Node n;
  n["kind"] = "profile";
  n["b"] = p.b;
  n["r0"] = p.r0;
  n["max_abs_dh"] = p.max_abs_dh;
  n["q_samples"] = flow_seq(p.q.samples());
  n["h_samples"] = flow_seq(p.h.samples());
  return n;
}

Profile profile_from(const YAML::Node& n) {
  expect_kind(n, "profile");
  Profile p;
  p.b = get<double>(n, "b");
  p.r0 = get<double>(n, "r0");
  p.max_abs_dh = get<double>(n, "max_abs_dh");
  p.q = samples_from(n, "q_samples");
  p.h = samples_from(n, "h_samples");
  if (!(p.b > 0.0) || !(p.r0 > 0.0)) throw InvalidInput("profile needs b > 0 and r0 > 0");
  require_zero_mean(p.q, "profile q");
  return p;
}

YAML::Node to_node(const TorusEmbedding& emb) {
  YAML::Node n;
  n["kind"] = "embedding";
  n["a"] = emb.a;
  n["R_samples"] = flow_seq(emb.R.samples());
  return n;
}

TorusEmbedding embedding_from(const YAML::Node& n) {
  expect_kind(n, "embedding");
  return TorusEmbedding(get<double>(n, "a"), samples_from(n, "R_samples"));
}

std::string emit(const YAML::Node& n) {
  YAML::Emitter out;
  out.SetDoublePrecision(std::numeric_limits<double>::max_digits10);
  out << n;
  return std::string(out.c_str()) + "\n";
}

YAML::Node parse(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InvalidInput(std::string("malformed record: ") + e.what());
  }
}

YAML::Node load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  try {
    return YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw InvalidInput("malformed record in " + path + ": " + e.what());
  }
}

void write_plot(std::ostream& os, const std::vector<std::pair<double, double>>& rows) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& [x, y] : rows) os << x << ' ' << y << '\n';
  os.precision(old);
}

}  // namespace torspec::io
