#include "recourse/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "recourse/errors.hpp"

namespace recourse {

namespace {

/// Deterministic parallel map: task i writes only slot i, so results are
/// independent of scheduling and identical to a sequential run.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n == 0 ? 1 : n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

EffortSummary summarize_side(const std::vector<std::size_t>& side, const RecourseTable& table,
                             const std::string& tag) {
  EffortSummary s;
  s.group = tag;
  std::vector<double> costs;
  for (std::size_t r : side) {
    if (table.label[r] != 0) continue;  // only unfavorably predicted members
    ++s.member_count;
    if (table.solvable[r]) {
      ++s.solvable_count;
      costs.push_back(table.cost[r]);
    }
  }
  if (!costs.empty()) s.phi = mean(costs);
  if (s.member_count > 0)
    s.rho = static_cast<double>(s.member_count - s.solvable_count) /
            static_cast<double>(s.member_count);
  return s;
}

double flipped_sensitive(const Dataset& data, std::size_t row) {
  const auto& col = data.schema().column(data.schema().sensitive_index());
  double v = data.sensitive(row);
  return v == col.min ? col.max : col.min;
}

}  // namespace

RecourseTable build_recourse_table(const Dataset& data, const CausalModel& model,
                                   const Classifier& h, const ConstraintSet& constraints,
                                   const CostSpec& spec, int unfavorable_label,
                                   const MintOptions& opts, std::size_t threads) {
  (void)unfavorable_label;  // the classifier's label 0 is the unfavorable side
  const std::size_t n = data.rows();
  RecourseTable t;
  t.label.resize(n);
  t.cost.assign(n, std::numeric_limits<double>::quiet_NaN());
  t.solvable.assign(n, 0);
  t.search_limit.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) t.label[r] = h.predict(data.schema(), data.row(r)).label;

  parallel_for(n, threads, [&](std::size_t r) {
    if (t.label[r] != 0) return;
    MintResult res = solve_mint(model, h, data.row(r), constraints, spec, opts);
    if (res.found()) {
      t.solvable[r] = 1;
      t.cost[r] = res.solution->cost;
    } else if (res.reason == NoRecourseReason::SearchLimit) {
      t.search_limit[r] = 1;
    }
  });
  for (std::size_t r = 0; r < n; ++r) t.unfavorable_count += t.label[r] == 0;
  return t;
}

EffortSummary effort_summary(const Dataset& data, const std::vector<std::size_t>& side,
                             const CausalModel& model, const Classifier& h,
                             const ConstraintSet& constraints, const CostSpec& spec,
                             int unfavorable_label, const std::string& group_tag) {
  (void)unfavorable_label;
  EffortSummary s;
  s.group = group_tag;
  std::vector<double> costs;
  for (std::size_t r : side) {
    if (h.predict(data.schema(), data.row(r)).label != 0) continue;
    ++s.member_count;
    MintResult res = solve_mint(model, h, data.row(r), constraints, spec);
    if (res.found()) {
      ++s.solvable_count;
      costs.push_back(res.solution->cost);
    }
  }
  if (!costs.empty()) s.phi = mean(costs);
  if (s.member_count > 0)
    s.rho = static_cast<double>(s.member_count - s.solvable_count) /
            static_cast<double>(s.member_count);
  return s;
}

EffortSummary effort_summary_cached(const std::vector<std::size_t>& side,
                                    const RecourseTable& table, const std::string& group_tag) {
  return summarize_side(side, table, group_tag);
}

AcrValue acr(const EffortSummary& pos, const EffortSummary& neg) {
  AcrValue out;
  if (!pos.phi.has_value()) {
    out.absent_reason = "no solvable members in I+";
    return out;
  }
  if (!neg.phi.has_value()) {
    out.absent_reason = "no solvable members in I-";
    return out;
  }
  if (*neg.phi <= 0.0) {
    out.absent_reason = "zero average effort in I-";
    return out;
  }
  out.value = *pos.phi / *neg.phi;
  return out;
}

double recourse_discrepancy(const EffortSummary& pos, const EffortSummary& neg) {
  return neg.rho - pos.rho;
}

Decision decide(const AcrValue& acr_value, double rd_value, double tau, double epsilon) {
  if (tau <= 0.0 || epsilon <= 0.0)
    throw PreconditionError("decide: thresholds tau and epsilon must be positive");
  if (std::abs(rd_value) >= epsilon) return Decision::UnequalEffort;
  if (!acr_value.value.has_value()) return Decision::Indeterminate;
  return std::abs(*acr_value.value) <= tau ? Decision::EqualEffort : Decision::UnequalEffort;
}

AuditRun run_audit(const Dataset& data, const CausalGraph& graph, const AuditSpec& spec) {
  AuditRun run;
  run.seed = data.seed();
  run.provenance = data.provenance();
  run.scm = fit_causal_model(data, graph);
  run.classifier = fit_classifier(data, spec.classifier_features, spec.outcome_column, spec.fit,
                                  1.0 - spec.unfavorable_label);

  ConstraintSet constraints = spec.constraints;
  constraints.set_sensitive(data.schema().column(data.schema().sensitive_index()).name);
  if (spec.observed_plausibility) constraints.set_observed_plausibility(data);
  CostSpec cost_spec = CostSpec::from_observed_ranges(data);

  run.table = build_recourse_table(data, run.scm, run.classifier, constraints, cost_spec,
                                   spec.unfavorable_label, spec.mint, spec.threads);

  DistanceMetric metric(data.schema(), spec.norm);

  std::vector<std::size_t> centers;
  for (std::size_t r = 0; r < data.rows(); ++r)
    if (run.table.label[r] == 0) centers.push_back(r);
  run.n_unfavorable = centers.size();
  for (std::size_t c : centers)
    run.n_unfavorable_protected += data.sensitive(c) == spec.protected_value;

  // The per-center x per-quantile grid is embarrassingly parallel; slots keep
  // aggregation order fixed.
  std::vector<std::vector<CenterRecord>> slots(centers.size());
  parallel_for(centers.size(), spec.threads, [&](std::size_t ci) {
    const std::size_t center = centers[ci];
    const bool prot = data.sensitive(center) == spec.protected_value;
    auto& out = slots[ci];
    out.reserve(spec.quantiles.size());
    for (double q : spec.quantiles) {
      Neighborhood nb = build_neighborhood(data, center, q, metric, spec.protected_value);
      const auto& own = prot ? nb.members_s0 : nb.members_s1;
      const auto& other = prot ? nb.members_s1 : nb.members_s0;
      EffortSummary pos = summarize_side(own, run.table, "I+");
      EffortSummary neg = summarize_side(other, run.table, "I-");
      CenterRecord rec;
      rec.center = center;
      rec.protected_center = prot;
      rec.quantile = q;
      rec.acr = acr(pos, neg);
      rec.rd = recourse_discrepancy(pos, neg);
      rec.phi_pos = pos.phi;
      rec.phi_neg = neg.phi;
      rec.subset_size_pos = pos.member_count;
      rec.subset_size_neg = neg.member_count;
      const std::size_t total = pos.member_count + neg.member_count;
      rec.ratio_protected =
          total ? static_cast<double>(pos.member_count) / static_cast<double>(total) : 0.0;
      rec.decision = decide(rec.acr, rec.rd, spec.tau, spec.epsilon);
      out.push_back(std::move(rec));
    }
  });

  for (auto& s : slots)
    for (auto& rec : s) run.records.push_back(std::move(rec));
  std::sort(run.records.begin(), run.records.end(), [](const CenterRecord& a, const CenterRecord& b) {
    if (a.protected_center != b.protected_center) return a.protected_center > b.protected_center;
    if (a.quantile != b.quantile) return a.quantile < b.quantile;
    return a.center < b.center;
  });

  // System level: the q = 1 audit is identical for every center of a group.
  bool got_prot = false, got_unprot = false;
  for (const auto& rec : run.records) {
    if (rec.quantile != 1.0) continue;
    if (rec.protected_center && !got_prot) {
      run.system_acr_protected = rec.acr;
      run.system_rd = rec.rd;
      got_prot = true;
    }
    if (!rec.protected_center && !got_unprot) {
      run.system_acr_unprotected = rec.acr;
      got_unprot = true;
    }
  }
  run.system_decision = decide(run.system_acr_protected, run.system_rd, spec.tau, spec.epsilon);
  return run;
}

CfOutcome counterfactual_fairness(const Dataset& data, const CausalModel& model,
                                  const Classifier& h, double protected_value,
                                  int unfavorable_label, CfrPopulation population) {
  (void)unfavorable_label;
  const std::size_t n = data.rows();
  const std::string sensitive_name =
      data.schema().column(data.schema().sensitive_index()).name;
  CfOutcome out;
  out.unfair.assign(n, 0);
  out.label_changed.assign(n, 0);
  std::size_t unfair_in_pop = 0;
  for (std::size_t r = 0; r < n; ++r) {
    Prediction factual = h.predict(data.schema(), data.row(r));
    Action flip;
    flip.deltas[sensitive_name] = flipped_sensitive(data, r) - data.sensitive(r);
    std::vector<double> twin = counterfactual(model, data.row(r), flip);
    Prediction cf = h.predict(data.schema(), Instance(twin.data(), twin.size()));
    out.label_changed[r] = cf.label != factual.label;
    // Counterfactually unfair treatment: the flip reverses an unfavorable
    // prediction, removing the need for recourse.
    out.unfair[r] = factual.label == 0 && cf.label == 1;
    bool in_pop = population == CfrPopulation::Dataset ||
                  (factual.label == 0 && data.sensitive(r) == protected_value);
    if (in_pop) {
      ++out.population;
      unfair_in_pop += out.unfair[r];
    }
  }
  out.cfr = out.population
                ? 1.0 - static_cast<double>(unfair_in_pop) / static_cast<double>(out.population)
                : 1.0;
  return out;
}

CfCostComparison cost_by_cf_group(const Dataset& data, const CfOutcome& cf,
                                  const RecourseTable& table) {
  std::vector<double> fair, unfair;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (table.label[r] != 0 || !table.solvable[r]) continue;
    (cf.unfair[r] ? unfair : fair).push_back(table.cost[r]);
  }
  CfCostComparison out;
  if (!fair.empty()) out.fair = box_stats(std::move(fair));
  if (!unfair.empty()) out.unfair = box_stats(std::move(unfair));
  return out;
}

}  // namespace recourse
