#include "recourse/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "recourse/errors.hpp"

#include "json.hpp"

namespace recourse {

namespace {

using nlohmann::json;

const char* kMetrics[] = {"acr", "rd", "phi_pos", "phi_neg", "ratio_protected",
                          "subset_size_pos", "subset_size_neg"};

std::optional<double> metric_value(const CenterRecord& rec, const std::string& metric) {
  if (metric == "acr") return rec.acr.value;
  if (metric == "rd") return rec.rd;
  if (metric == "phi_pos") return rec.phi_pos;
  if (metric == "phi_neg") return rec.phi_neg;
  if (metric == "ratio_protected") return rec.ratio_protected;
  if (metric == "subset_size_pos") return static_cast<double>(rec.subset_size_pos);
  if (metric == "subset_size_neg") return static_cast<double>(rec.subset_size_neg);
  return std::nullopt;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::EqualEffort: return "equal-effort";
    case Decision::UnequalEffort: return "unequal-effort";
    default: return "indeterminate";
  }
}

json acr_json(const AcrValue& v) {
  json j;
  if (v.value)
    j["value"] = *v.value;
  else
    j["absent"] = v.absent_reason;
  return j;
}

json box_json(const std::optional<BoxStats>& b) {
  if (!b) return json{{"absent", "empty partition"}};
  return json{{"n", b->n},
              {"q1", b->q1},
              {"median", b->median},
              {"q3", b->q3},
              {"whisker_low", b->whisker_lo},
              {"whisker_high", b->whisker_hi},
              {"outliers", b->outliers}};
}

}  // namespace

std::vector<CurvePoint> aggregate_curves(const std::vector<AuditRun>& runs,
                                         const std::vector<double>& quantiles) {
  std::vector<CurvePoint> out;
  for (bool prot : {true, false}) {
    for (double q : quantiles) {
      for (const char* metric : kMetrics) {
        std::vector<double> values;
        std::size_t absent = 0;
        for (const auto& run : runs) {
          for (const auto& rec : run.records) {
            if (rec.protected_center != prot || rec.quantile != q) continue;
            auto v = metric_value(rec, metric);
            if (v)
              values.push_back(*v);
            else
              ++absent;
          }
        }
        CurvePoint p;
        p.center_group = prot ? "protected" : "unprotected";
        p.quantile = q;
        p.metric = metric;
        MeanCi ci = mean_ci95(values);
        p.mean = ci.mean;
        p.ci_low = ci.lo;
        p.ci_high = ci.hi;
        p.n = ci.n;
        p.n_absent = absent;
        if (p.n > 0 || p.n_absent > 0) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

void write_curves_csv(const std::string& path, const std::vector<CurvePoint>& points) {
  std::string body = "center_group,quantile,metric,mean,ci_low,ci_high\n";
  for (const auto& p : points) {
    body += p.center_group;
    body += ',';
    body += format_g9(p.quantile);
    body += ',';
    body += p.metric;
    body += ',';
    body += format_g9(p.mean);
    body += ',';
    body += format_g9(p.ci_low);
    body += ',';
    body += format_g9(p.ci_high);
    body += '\n';
  }
  write_file_atomic(path, body);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::string body = "alpha,metric,mean,ci_low,ci_high\n";
  for (const auto& r : rows) {
    body += format_g9(r.alpha);
    body += ',';
    body += r.metric;
    body += ',';
    body += format_g9(r.mean);
    body += ',';
    body += format_g9(r.ci_low);
    body += ',';
    body += format_g9(r.ci_high);
    body += '\n';
  }
  write_file_atomic(path, body);
}

void write_cf_csv(const std::string& path, const CfCompareResult& result) {
  std::string body = "group,n,q1,median,q3,whisker_low,whisker_high,outliers\n";
  auto row = [&](const char* tag, const std::optional<BoxStats>& b) {
    if (!b) return;
    body += tag;
    body += ',' + std::to_string(b->n);
    body += ',' + format_g9(b->q1);
    body += ',' + format_g9(b->median);
    body += ',' + format_g9(b->q3);
    body += ',' + format_g9(b->whisker_lo);
    body += ',' + format_g9(b->whisker_hi);
    body += ',' + std::to_string(b->outliers);
    body += '\n';
  };
  row("cf-fair", result.costs.fair);
  row("cf-unfair", result.costs.unfair);
  write_file_atomic(path, body);
}

std::string build_cf_json(const RunConfig& cfg, const CfCompareResult& result) {
  json j;
  j["experiment"] = cfg.experiment == ExperimentKind::Synthetic ? "synthetic" : "german";
  if (cfg.experiment == ExperimentKind::Synthetic) j["alpha"] = result.alpha;
  j["cfr_population"] =
      cfg.cfr_population == CfrPopulation::Dataset ? "dataset" : "adverse-protected";
  j["cfr"] = result.cfr;
  j["population"] = result.population;
  j["cost_cf_fair"] = box_json(result.costs.fair);
  j["cost_cf_unfair"] = box_json(result.costs.unfair);
  return j.dump(2) + "\n";
}

std::string build_report_json(const RunConfig& cfg, double alpha,
                              const std::vector<AuditRun>& runs,
                              const std::vector<CurvePoint>& curves,
                              const std::vector<CfCompareResult>& cf) {
  json j;
  json cfgj;
  cfgj["source"] = cfg.source_path;
  cfgj["experiment"] = cfg.experiment == ExperimentKind::Synthetic ? "synthetic" : "german";
  if (cfg.experiment == ExperimentKind::Synthetic) {
    cfgj["n"] = cfg.n;
    cfgj["alpha"] = alpha;
  } else {
    cfgj["data"] = cfg.data_path;
  }
  cfgj["seeds"] = cfg.seeds;
  cfgj["quantiles"] = cfg.quantiles;
  cfgj["tau"] = cfg.tau;
  cfgj["epsilon"] = cfg.epsilon;
  cfgj["sensitive"] = cfg.sensitive;
  cfgj["outcome"] = cfg.outcome;
  cfgj["protected_value"] = cfg.protected_value;
  cfgj["favorable_label"] = cfg.favorable_label;
  cfgj["classifier_features"] = cfg.classifier_features;
  cfgj["distance_norm"] = cfg.norm == DistanceNorm::L1 ? "l1" : "l2";
  cfgj["plausibility"] = cfg.observed_plausibility ? "observed" : "none";
  cfgj["cfr_population"] =
      cfg.cfr_population == CfrPopulation::Dataset ? "dataset" : "adverse-protected";
  j["config"] = std::move(cfgj);

  json runsj = json::array();
  for (const auto& run : runs) {
    json r;
    r["seed"] = run.seed;
    r["provenance"] = run.provenance;
    json clf;
    clf["features"] = run.classifier.features();
    clf["weights"] = run.classifier.weights();
    clf["intercept"] = run.classifier.intercept();
    clf["standardization_mean"] = run.classifier.mean();
    clf["standardization_sd"] = run.classifier.sd();
    clf["converged"] = run.classifier.converged();
    clf["final_grad_norm"] = run.classifier.final_grad_norm();
    clf["iterations"] = run.classifier.iterations();
    r["classifier"] = std::move(clf);
    json eqs = json::object();
    for (const auto& node : run.scm.graph().nodes()) {
      if (!run.scm.has_equation(node)) continue;
      const auto& eq = run.scm.equation(node);
      eqs[node] = {{"parents", run.scm.graph().parents(node)},
                   {"coefficients", eq.coefficients},
                   {"intercept", eq.intercept}};
    }
    r["structural_equations"] = std::move(eqs);
    r["n_unfavorable"] = run.n_unfavorable;
    r["n_unfavorable_protected"] = run.n_unfavorable_protected;
    std::size_t search_limited = 0;
    for (char f : run.table.search_limit) search_limited += f;
    r["search_limited"] = search_limited;
    r["system"] = {{"acr_protected", acr_json(run.system_acr_protected)},
                   {"acr_unprotected", acr_json(run.system_acr_unprotected)},
                   {"rd", run.system_rd},
                   {"decision", decision_name(run.system_decision)}};
    json centers = json::array();
    for (const auto& rec : run.records) {
      json c;
      c["center"] = rec.center;
      c["group"] = rec.protected_center ? "protected" : "unprotected";
      c["quantile"] = rec.quantile;
      c["acr"] = acr_json(rec.acr);
      c["rd"] = rec.rd;
      if (rec.phi_pos) c["phi_pos"] = *rec.phi_pos;
      if (rec.phi_neg) c["phi_neg"] = *rec.phi_neg;
      c["subset_size_pos"] = rec.subset_size_pos;
      c["subset_size_neg"] = rec.subset_size_neg;
      c["ratio_protected"] = rec.ratio_protected;
      c["decision"] = decision_name(rec.decision);
      centers.push_back(std::move(c));
    }
    r["centers"] = std::move(centers);
    runsj.push_back(std::move(r));
  }
  j["runs"] = std::move(runsj);

  json curvesj = json::array();
  for (const auto& p : curves) {
    curvesj.push_back({{"center_group", p.center_group},
                       {"quantile", p.quantile},
                       {"metric", p.metric},
                       {"mean", p.mean},
                       {"ci_low", p.ci_low},
                       {"ci_high", p.ci_high},
                       {"n", p.n},
                       {"n_absent", p.n_absent}});
  }
  j["curves"] = std::move(curvesj);

  json cfj = json::array();
  for (const auto& c : cf) {
    cfj.push_back({{"alpha", c.alpha},
                   {"cfr", c.cfr},
                   {"population", c.population},
                   {"cost_cf_fair", box_json(c.costs.fair)},
                   {"cost_cf_unfair", box_json(c.costs.unfair)}});
  }
  j["counterfactual_fairness"] = std::move(cfj);

  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IngestError("short write: " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace recourse
