#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recourse/audit.hpp"
#include "recourse/german.hpp"

namespace recourse {

enum class ExperimentKind { Synthetic, German };

/// Parsed experiment configuration. One human-editable JSON file per
/// experiment; both paper setups ship in configs/.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Synthetic;

  // synthetic
  std::size_t n = 1000;
  std::vector<double> alphas{2.0};

  // german
  std::string data_path;
  GermanFormat data_format = GermanFormat::Csv;
  std::string sex_codes_path;  // optional; default table when empty

  std::vector<std::uint64_t> seeds{1};
  std::map<std::string, std::vector<std::string>> graph;  // node -> parents

  std::string sensitive;
  std::string outcome;
  double protected_value = 1.0;
  int favorable_label = 1;

  std::vector<std::string> classifier_features;
  std::map<std::string, NodeConstraint> constraints;
  bool observed_plausibility = false;  // "plausibility": "observed" | "none"

  std::vector<double> quantiles;
  double tau = 1.2;
  double epsilon = 0.05;
  DistanceNorm norm = DistanceNorm::L1;
  CfrPopulation cfr_population = CfrPopulation::Dataset;
  double individual_quantile = 0.2;

  std::size_t threads = 1;

  std::string source_path;  // where this config was loaded from
};

/// Loads and validates a config file. Parse errors carry line numbers;
/// validation errors name the offending key. Relative data paths resolve
/// against the config file's directory.
RunConfig load_config(const std::string& path);
void validate_config(const RunConfig& cfg);

/// Dataset for one (alpha, seed) cell. German ignores both parameters.
Dataset make_dataset(const RunConfig& cfg, double alpha, std::uint64_t seed);

/// Declared causal graph for a given alpha. The synthetic experiment declares
/// the x1 -> x2 edge only when alpha != 0 (a zero-strength mechanism is no
/// edge, which keeps the alpha = 0 twin identical).
CausalGraph graph_for(const RunConfig& cfg, double alpha);

/// AuditSpec assembled from the config (constraints, cost ranges and
/// plausibility get bound to a concrete dataset inside run_audit callers).
AuditSpec audit_spec_from(const RunConfig& cfg);

}  // namespace recourse
