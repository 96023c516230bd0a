#pragma once

#include <string>
#include <vector>

#include "recourse/audit.hpp"
#include "recourse/config.hpp"
#include "recourse/format.hpp"

namespace recourse {

/// One aggregated row of the curve table: mean and 95% band of a metric at
/// one quantile for one group of centers, pooled over runs (seeds).
struct CurvePoint {
  std::string center_group;  // "protected" | "unprotected"
  double quantile = 1.0;
  std::string metric;  // acr, rd, phi_pos, phi_neg, ratio_protected, subset_size_pos, subset_size_neg
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;        // defined per-center records pooled
  std::size_t n_absent = 0; // excluded (undefined) records
};

/// Pools per-center records across runs and aggregates per (group, quantile,
/// metric). Absent ACRs are excluded from the aggregate and counted.
std::vector<CurvePoint> aggregate_curves(const std::vector<AuditRun>& runs,
                                         const std::vector<double>& quantiles);

void write_curves_csv(const std::string& path, const std::vector<CurvePoint>& points);

struct SweepRow {
  double alpha = 0.0;
  std::string metric;  // acr_system, acr_individual, cfr
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
};

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

struct CfCompareResult {
  double alpha = 0.0;
  double cfr = 1.0;
  std::size_t population = 0;
  CfCostComparison costs;
};

void write_cf_csv(const std::string& path, const CfCompareResult& result);

/// CFR scalar plus both cost boxplots as JSON.
std::string build_cf_json(const RunConfig& cfg, const CfCompareResult& result);

/// Full machine-readable report: config echo, per-run model coefficients,
/// aggregated curves, per-center decisions, counterfactual-fairness block.
std::string build_report_json(const RunConfig& cfg, double alpha,
                              const std::vector<AuditRun>& runs,
                              const std::vector<CurvePoint>& curves,
                              const std::vector<CfCompareResult>& cf);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace recourse
