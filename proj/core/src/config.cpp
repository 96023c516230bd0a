#include "recourse/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "recourse/errors.hpp"
#include "recourse/synthetic.hpp"

#include "json.hpp"

namespace recourse {

namespace {

using nlohmann::json;

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

Actionability parse_actionability(const std::string& s, const std::string& node) {
  if (s == "immutable") return Actionability::Immutable;
  if (s == "mutable-non-actionable") return Actionability::MutableNonActionable;
  if (s == "actionable") return Actionability::Actionable;
  throw ConfigError("config: node '" + node + "': unknown actionability class '" + s + "'");
}

DirectionBound parse_direction(const std::string& s, const std::string& node) {
  if (s == "free") return DirectionBound::Free;
  if (s == "increase-only") return DirectionBound::IncreaseOnly;
  if (s == "decrease-only") return DirectionBound::DecreaseOnly;
  throw ConfigError("config: node '" + node + "': unknown direction bound '" + s + "'");
}

std::string resolve_relative(const std::string& config_path, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path fp(p);
  if (fp.is_absolute()) return p;
  return (std::filesystem::path(config_path).parent_path() / fp).string();
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": line " + std::to_string(line_of_offset(text, e.byte)) +
                      ": " + e.what());
  }

  RunConfig cfg;
  cfg.source_path = path;
  try {
    std::string exp = j.at("experiment").get<std::string>();
    if (exp == "synthetic")
      cfg.experiment = ExperimentKind::Synthetic;
    else if (exp == "german")
      cfg.experiment = ExperimentKind::German;
    else
      throw ConfigError("config: unknown experiment '" + exp + "'");

    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("alpha")) {
      cfg.alphas.clear();
      if (j.at("alpha").is_array())
        for (const auto& a : j.at("alpha")) cfg.alphas.push_back(a.get<double>());
      else
        cfg.alphas.push_back(j.at("alpha").get<double>());
    }
    if (j.contains("seeds")) {
      cfg.seeds.clear();
      for (const auto& s : j.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    if (j.contains("data")) {
      const auto& d = j.at("data");
      cfg.data_path = resolve_relative(path, d.at("path").get<std::string>());
      std::string fmt = d.value("format", "csv");
      if (fmt == "uci")
        cfg.data_format = GermanFormat::Uci;
      else if (fmt == "csv")
        cfg.data_format = GermanFormat::Csv;
      else
        throw ConfigError("config: unknown data format '" + fmt + "'");
      if (d.contains("sex_codes"))
        cfg.sex_codes_path = resolve_relative(path, d.at("sex_codes").get<std::string>());
    }

    for (const auto& [node, parents] : j.at("graph").items()) {
      std::vector<std::string> plist;
      for (const auto& p : parents) plist.push_back(p.get<std::string>());
      cfg.graph[node] = std::move(plist);
    }

    cfg.sensitive = j.at("sensitive").get<std::string>();
    cfg.outcome = j.at("outcome").get<std::string>();
    cfg.protected_value = j.at("protected_value").get<double>();
    if (j.contains("favorable_label")) cfg.favorable_label = j.at("favorable_label").get<int>();

    for (const auto& f : j.at("classifier_features"))
      cfg.classifier_features.push_back(f.get<std::string>());

    for (const auto& [node, c] : j.at("constraints").items()) {
      NodeConstraint nc;
      nc.actionability = parse_actionability(c.at("class").get<std::string>(), node);
      if (c.contains("direction"))
        nc.direction = parse_direction(c.at("direction").get<std::string>(), node);
      if (c.contains("delta_min")) nc.delta_min = c.at("delta_min").get<double>();
      if (c.contains("delta_max")) nc.delta_max = c.at("delta_max").get<double>();
      cfg.constraints[node] = nc;
    }

    std::string plaus = j.value("plausibility", "observed");
    if (plaus == "observed")
      cfg.observed_plausibility = true;
    else if (plaus == "none")
      cfg.observed_plausibility = false;
    else
      throw ConfigError("config: plausibility must be 'observed' or 'none'");

    for (const auto& q : j.at("quantiles")) cfg.quantiles.push_back(q.get<double>());
    if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();

    std::string norm = j.value("distance_norm", "l1");
    if (norm == "l1")
      cfg.norm = DistanceNorm::L1;
    else if (norm == "l2")
      cfg.norm = DistanceNorm::L2;
    else
      throw ConfigError("config: distance_norm must be 'l1' or 'l2'");

    std::string pop = j.value("cfr_population", "dataset");
    if (pop == "dataset")
      cfg.cfr_population = CfrPopulation::Dataset;
    else if (pop == "adverse-protected")
      cfg.cfr_population = CfrPopulation::AdverseProtected;
    else
      throw ConfigError("config: cfr_population must be 'dataset' or 'adverse-protected'");

    if (j.contains("individual_quantile"))
      cfg.individual_quantile = j.at("individual_quantile").get<double>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }

  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.experiment == ExperimentKind::Synthetic) {
    if (cfg.n < 2) throw ConfigError("config: n must be at least 2");
    if (cfg.alphas.empty()) throw ConfigError("config: alpha list must be nonempty");
  } else {
    if (cfg.data_path.empty())
      throw ConfigError("config: german experiment requires data.path");
  }
  if (cfg.seeds.empty()) throw ConfigError("config: seeds must be nonempty");
  if (cfg.graph.empty()) throw ConfigError("config: graph must declare at least one node");
  if (!cfg.graph.count(cfg.sensitive))
    throw ConfigError("config: sensitive node '" + cfg.sensitive + "' missing from graph");
  if (cfg.classifier_features.empty())
    throw ConfigError("config: classifier_features must be nonempty");

  for (const auto& [node, c] : cfg.constraints) {
    if (!cfg.graph.count(node))
      throw ConfigError("config: constrained node '" + node + "' does not exist in the graph");
    if (node == cfg.sensitive && c.actionability == Actionability::Actionable)
      throw ConfigError("config: the sensitive variable '" + node + "' can never be actionable");
  }

  if (cfg.quantiles.empty()) throw ConfigError("config: quantiles must be nonempty");
  double prev = 0.0;
  for (double q : cfg.quantiles) {
    if (q <= prev || q > 1.0)
      throw ConfigError("config: quantiles must be strictly increasing in (0, 1]");
    prev = q;
  }
  if (cfg.quantiles.back() != 1.0)
    throw ConfigError("config: quantile grid must end at 1.0 (the system level)");
  bool has_individual = false;
  for (double q : cfg.quantiles) has_individual = has_individual || q == cfg.individual_quantile;
  if (!has_individual)
    throw ConfigError("config: individual_quantile must be one of the audited quantiles");
  if (cfg.tau <= 0.0 || cfg.epsilon <= 0.0)
    throw ConfigError("config: tau and epsilon must be positive");
}

Dataset make_dataset(const RunConfig& cfg, double alpha, std::uint64_t seed) {
  if (cfg.experiment == ExperimentKind::Synthetic) return generate_synthetic(cfg.n, alpha, seed);
  SexCodeTable table = cfg.sex_codes_path.empty() ? SexCodeTable::default_table()
                                                  : SexCodeTable::load(cfg.sex_codes_path);
  return load_german_credit(cfg.data_path, cfg.data_format, table);
}

CausalGraph graph_for(const RunConfig& cfg, double alpha) {
  auto parents = cfg.graph;
  if (cfg.experiment == ExperimentKind::Synthetic && alpha == 0.0) {
    // A zero-strength mechanism is no edge: the sensitive root has no
    // descendants when alpha is zero, so its twin is the identity.
    for (auto& [node, plist] : parents)
      std::erase(plist, cfg.sensitive);
  }
  return CausalGraph(parents);
}

AuditSpec audit_spec_from(const RunConfig& cfg) {
  AuditSpec spec;
  spec.classifier_features = cfg.classifier_features;
  spec.outcome_column = cfg.outcome;
  spec.unfavorable_label = 1 - cfg.favorable_label;
  spec.protected_value = cfg.protected_value;
  spec.quantiles = cfg.quantiles;
  spec.tau = cfg.tau;
  spec.epsilon = cfg.epsilon;
  spec.norm = cfg.norm;
  for (const auto& [node, c] : cfg.constraints) spec.constraints.set(node, c);
  spec.observed_plausibility = cfg.observed_plausibility;
  spec.threads = cfg.threads;
  return spec;
}

}  // namespace recourse
