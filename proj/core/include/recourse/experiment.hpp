#pragma once

#include <string>
#include <vector>

#include "recourse/audit.hpp"
#include "recourse/config.hpp"
#include "recourse/report.hpp"

namespace recourse {

/// One (alpha, seed) cell of an experiment: the dataset, its audit, and the
/// counterfactual-fairness pass over the same fitted models.
struct ExperimentCell {
  double alpha = 0.0;
  Dataset data;
  AuditRun run;
  CfOutcome cf;
};

/// Runs the configured audit once per seed. The German experiment is
/// deterministic and runs once regardless of the seed list.
std::vector<ExperimentCell> run_experiment(const RunConfig& cfg, double alpha);

/// Pools recourse costs across cells and averages the CFR.
CfCompareResult assemble_cf(const std::vector<ExperimentCell>& cells, double alpha);

/// Per-alpha system-level ACR (q = 1, protected centers), individual-level
/// ACR (config's individual_quantile), and CFR; confidence over seeds.
std::vector<SweepRow> sweep_rows(const RunConfig& cfg);

/// cmd-level artifact writers; return the written paths.
std::vector<std::string> write_audit_artifacts(const RunConfig& cfg, double alpha,
                                               const std::string& out_dir);
std::vector<std::string> write_sweep_artifacts(const RunConfig& cfg, const std::string& out_dir);
std::vector<std::string> write_cf_artifacts(const RunConfig& cfg, const std::string& out_dir);
std::vector<std::string> write_gen_data_artifacts(const RunConfig& cfg, double alpha,
                                                  const std::string& out_dir);

}  // namespace recourse
