#include "recourse/experiment.hpp"

#include <algorithm>
#include <filesystem>

#include "recourse/errors.hpp"

namespace recourse {

namespace {

std::string alpha_tag(double alpha) {
  std::string t = format_g9(alpha);
  for (char& c : t)
    if (c == '.') c = 'p';
  return t;
}

double mean_protected_acr_at(const AuditRun& run, double q) {
  std::vector<double> vals;
  for (const auto& rec : run.records) {
    if (!rec.protected_center || rec.quantile != q) continue;
    if (rec.acr.value) vals.push_back(*rec.acr.value);
  }
  return mean(vals);
}

}  // namespace

std::vector<ExperimentCell> run_experiment(const RunConfig& cfg, double alpha) {
  AuditSpec spec = audit_spec_from(cfg);
  CausalGraph graph = graph_for(cfg, alpha);

  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (cfg.experiment == ExperimentKind::German) seeds.resize(1);  // deterministic input

  std::vector<ExperimentCell> cells;
  cells.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    ExperimentCell cell;
    cell.alpha = alpha;
    cell.data = make_dataset(cfg, alpha, seed);
    cell.data.validate();
    cell.run = run_audit(cell.data, graph, spec);
    cell.cf = counterfactual_fairness(cell.data, cell.run.scm, cell.run.classifier,
                                      cfg.protected_value, spec.unfavorable_label,
                                      cfg.cfr_population);
    cells.push_back(std::move(cell));
  }
  return cells;
}

CfCompareResult assemble_cf(const std::vector<ExperimentCell>& cells, double alpha) {
  CfCompareResult out;
  out.alpha = alpha;
  std::vector<double> fair, unfair, cfrs;
  std::size_t population = 0;
  for (const auto& cell : cells) {
    cfrs.push_back(cell.cf.cfr);
    population += cell.cf.population;
    for (std::size_t r = 0; r < cell.data.rows(); ++r) {
      if (cell.run.table.label[r] != 0 || !cell.run.table.solvable[r]) continue;
      (cell.cf.unfair[r] ? unfair : fair).push_back(cell.run.table.cost[r]);
    }
  }
  out.cfr = mean(cfrs);
  out.population = population;
  if (!fair.empty()) out.costs.fair = box_stats(std::move(fair));
  if (!unfair.empty()) out.costs.unfair = box_stats(std::move(unfair));
  return out;
}

std::vector<SweepRow> sweep_rows(const RunConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double alpha : cfg.alphas) {
    auto cells = run_experiment(cfg, alpha);
    std::vector<double> system, individual, cfr;
    for (const auto& cell : cells) {
      if (cell.run.system_acr_protected.value)
        system.push_back(*cell.run.system_acr_protected.value);
      individual.push_back(mean_protected_acr_at(cell.run, cfg.individual_quantile));
      cfr.push_back(cell.cf.cfr);
    }
    auto push = [&](const char* metric, const std::vector<double>& v) {
      MeanCi ci = mean_ci95(v);
      rows.push_back(SweepRow{alpha, metric, ci.mean, ci.lo, ci.hi, ci.n});
    };
    push("acr_system", system);
    push("acr_individual", individual);
    push("cfr", cfr);
  }
  return rows;
}

std::vector<std::string> write_audit_artifacts(const RunConfig& cfg, double alpha,
                                               const std::string& out_dir) {
  auto cells = run_experiment(cfg, alpha);
  std::vector<CfCompareResult> cf{assemble_cf(cells, alpha)};
  std::vector<AuditRun> runs;
  runs.reserve(cells.size());
  for (auto& c : cells) runs.push_back(std::move(c.run));
  auto curves = aggregate_curves(runs, cfg.quantiles);

  std::filesystem::create_directories(out_dir);
  std::string report_path = (std::filesystem::path(out_dir) / "report.json").string();
  std::string curves_path = (std::filesystem::path(out_dir) / "curves.csv").string();
  write_file_atomic(report_path, build_report_json(cfg, alpha, runs, curves, cf));
  write_curves_csv(curves_path, curves);
  return {report_path, curves_path};
}

std::vector<std::string> write_sweep_artifacts(const RunConfig& cfg, const std::string& out_dir) {
  auto rows = sweep_rows(cfg);
  std::filesystem::create_directories(out_dir);
  std::string path = (std::filesystem::path(out_dir) / "sweep.csv").string();
  write_sweep_csv(path, rows);
  return {path};
}

std::vector<std::string> write_cf_artifacts(const RunConfig& cfg, const std::string& out_dir) {
  double alpha = cfg.alphas.front();
  auto cells = run_experiment(cfg, alpha);
  CfCompareResult result = assemble_cf(cells, alpha);

  std::filesystem::create_directories(out_dir);
  std::string csv_path = (std::filesystem::path(out_dir) / "cf_costs.csv").string();
  std::string json_path = (std::filesystem::path(out_dir) / "cf_compare.json").string();
  write_cf_csv(csv_path, result);
  write_file_atomic(json_path, build_cf_json(cfg, result));
  return {csv_path, json_path};
}

std::vector<std::string> write_gen_data_artifacts(const RunConfig& cfg, double alpha,
                                                  const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (std::uint64_t seed : cfg.seeds) {
    Dataset d = make_dataset(cfg, alpha, seed);
    std::string name = cfg.experiment == ExperimentKind::Synthetic
                           ? "synthetic_alpha" + alpha_tag(alpha) + "_seed" +
                                 std::to_string(seed) + ".csv"
                           : "german_echo.csv";
    std::string path = (std::filesystem::path(out_dir) / name).string();
    d.write_csv(path);
    written.push_back(path);
    if (cfg.experiment == ExperimentKind::German) break;
  }
  return written;
}

}  // namespace recourse
