#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "torspec/gap_vector.hpp"
#include "torspec/geometry.hpp"
#include "torspec/hill.hpp"
#include "torspec/inverse.hpp"
#include "torspec/riccati.hpp"

/// Structured-text records (YAML). Every record carries a `kind` key; readers
/// throw InvalidInput on missing fields or a kind mismatch.
namespace torspec::io {

YAML::Node to_node(const PeriodicFn& f, const std::string& label = "");
YAML::Node to_node(const OperatorSpec& spec);
YAML::Node to_node(const SpectralData& d);
YAML::Node to_node(const GapVector& v);
YAML::Node to_node(const EstimateReport& r);
YAML::Node to_node(const InversionResult& r);
YAML::Node to_node(const Profile& p);
YAML::Node to_node(const TorusEmbedding& emb);

PeriodicFn periodic_fn_from(const YAML::Node& n);
OperatorSpec spec_from(const YAML::Node& n);
SpectralData spectral_data_from(const YAML::Node& n);
GapVector gap_vector_from(const YAML::Node& n);
EstimateReport estimate_report_from(const YAML::Node& n);
InversionResult inversion_result_from(const YAML::Node& n);
Profile profile_from(const YAML::Node& n);
TorusEmbedding embedding_from(const YAML::Node& n);

std::string emit(const YAML::Node& n);
YAML::Node parse(const std::string& text);
YAML::Node load_file(const std::string& path);

/// Two whitespace-separated columns per line.
void write_plot(std::ostream& os, const std::vector<std::pair<double, double>>& rows);

}  // namespace torspec::io
