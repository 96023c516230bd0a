#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recourse/classifier.hpp"
#include "recourse/constraints.hpp"
#include "recourse/mint.hpp"
#include "recourse/scm.hpp"
#include "recourse/similarity.hpp"
#include "recourse/stats.hpp"

namespace recourse {

/// Per-side effort numbers over one neighborhood side.
///   phi: mean recourse cost over solvable, unfavorably-predicted members
///   rho: fraction of unfavorably-predicted members without recourse
struct EffortSummary {
  std::string group;  // "I+" or "I-"
  std::optional<double> phi;
  double rho = 0.0;
  std::size_t member_count = 0;    // unfavorably predicted members, |I*|
  std::size_t solvable_count = 0;

  bool absent() const { return member_count == 0; }
};

struct AcrValue {
  std::optional<double> value;
  std::string absent_reason;  // set when value is absent
};

enum class Decision { EqualEffort, UnequalEffort, Indeterminate };

/// Precomputed per-row prediction and recourse outcome. Recourse for an
/// individual does not depend on the neighborhood or quantile, so the audit
/// solves each row once.
struct RecourseTable {
  std::vector<int> label;          // predicted label per row
  std::vector<double> cost;        // defined where solvable
  std::vector<char> solvable;      // 1 when a recourse solution exists
  std::vector<char> search_limit;  // 1 when absence was flagged search-limit
  std::size_t unfavorable_count = 0;
};

RecourseTable build_recourse_table(const Dataset& data, const CausalModel& model,
                                   const Classifier& h, const ConstraintSet& constraints,
                                   const CostSpec& spec, int unfavorable_label,
                                   const MintOptions& opts = {}, std::size_t threads = 1);

/// Spec-shaped entry point: runs solve_mint per unfavorably-predicted member
/// of one neighborhood side.
EffortSummary effort_summary(const Dataset& data, const std::vector<std::size_t>& side,
                             const CausalModel& model, const Classifier& h,
                             const ConstraintSet& constraints, const CostSpec& spec,
                             int unfavorable_label, const std::string& group_tag);

/// Same contract, but against a precomputed table (used by run_audit; tested
/// to agree with the direct form).
EffortSummary effort_summary_cached(const std::vector<std::size_t>& side,
                                    const RecourseTable& table, const std::string& group_tag);

/// Average cost ratio Phi(I+) / Phi(I-); absent with a reason when either
/// side is undefined or the denominator is zero.
AcrValue acr(const EffortSummary& pos, const EffortSummary& neg);

/// rho(I-) - rho(I+), in [-1, 1]. Sides with zero members count as rho = 0.
double recourse_discrepancy(const EffortSummary& pos, const EffortSummary& neg);

/// Literal threshold test: unequal when |rho| >= epsilon; otherwise equal
/// effort when |phi_ratio| <= tau. Absent ACR -> Indeterminate.
Decision decide(const AcrValue& acr_value, double rd_value, double tau, double epsilon);

// ---------------------------------------------------------------------------

struct AuditSpec {
  std::vector<std::string> classifier_features;
  std::string outcome_column;
  int unfavorable_label = 0;
  double protected_value = 1.0;
  std::vector<double> quantiles;  // strictly increasing, in (0, 1]
  double tau = 1.2;
  double epsilon = 0.05;
  DistanceNorm norm = DistanceNorm::L1;
  ConstraintSet constraints;
  bool observed_plausibility = false;  // paper experiments run unbounded
  MintOptions mint;
  FitOptions fit;
  std::size_t threads = 1;
};

/// One per-center, per-quantile audit record.
struct CenterRecord {
  std::size_t center = 0;
  bool protected_center = false;
  double quantile = 1.0;
  AcrValue acr;
  double rd = 0.0;
  std::optional<double> phi_pos;       // center's own group
  std::optional<double> phi_neg;       // the other group
  std::size_t subset_size_pos = 0;     // unfavorably predicted members
  std::size_t subset_size_neg = 0;
  double ratio_protected = 0.0;        // own-group share of the unfavorable subset
  Decision decision = Decision::Indeterminate;
};

/// Result of auditing one dataset (one seed).
struct AuditRun {
  std::uint64_t seed = 0;
  std::string provenance;
  std::vector<CenterRecord> records;        // sorted by (group, quantile, center)
  std::size_t n_unfavorable = 0;
  std::size_t n_unfavorable_protected = 0;
  Classifier classifier;
  CausalModel scm;
  RecourseTable table;
  Decision system_decision = Decision::Indeterminate;
  AcrValue system_acr_protected;            // q = 1, protected-centered
  AcrValue system_acr_unprotected;
  double system_rd = 0.0;
};

/// Algorithm driver: fits the SCM and classifier, solves recourse once per
/// unfavorably-predicted row, then audits every such row as a center across
/// the quantile grid. Deterministic; parallel centers aggregate bit-identically
/// to a sequential run.
AuditRun run_audit(const Dataset& data, const CausalGraph& graph, const AuditSpec& spec);

// --------------------------- counterfactual fairness ----------------------

enum class CfrPopulation {
  Dataset,           ///< every individual
  AdverseProtected,  ///< unfavorably-predicted members of the protected group
};

/// Twin of row i: sensitive value flipped and propagated through the SCM
/// (abduction-action-prediction with the flip as the intervention).
/// An individual is counterfactually unfairly treated when the factual
/// prediction is unfavorable and the twin's is favorable.
struct CfOutcome {
  std::vector<char> unfair;       // per row
  std::vector<char> label_changed;
  std::size_t population = 0;
  double cfr = 1.0;               // fraction fairly treated within population
};

CfOutcome counterfactual_fairness(const Dataset& data, const CausalModel& model,
                                  const Classifier& h, double protected_value,
                                  int unfavorable_label, CfrPopulation population);

/// Recourse-cost distributions partitioned by counterfactual fairness among
/// unfavorably-predicted individuals with recourse.
struct CfCostComparison {
  std::optional<BoxStats> fair;
  std::optional<BoxStats> unfair;
};

CfCostComparison cost_by_cf_group(const Dataset& data, const CfOutcome& cf,
                                  const RecourseTable& table);

}  // namespace recourse
