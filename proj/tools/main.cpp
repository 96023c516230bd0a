#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "recourse/errors.hpp"
#include "recourse/experiment.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<double> alpha;
  std::vector<std::uint64_t> seed;
  std::string seeds_range;  // "A..B"
  std::vector<double> quantiles;
  std::string norm;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory (default: out)");
  cmd->add_option("--alpha", args.alpha, "alpha override, comma separated")->delimiter(',');
  cmd->add_option("--seed", args.seed, "seed override, comma separated")->delimiter(',');
  cmd->add_option("--seeds", args.seeds_range, "seed range override, e.g. 1..5");
  cmd->add_option("--quantiles", args.quantiles, "quantile grid override, comma separated")
      ->delimiter(',');
  cmd->add_option("--norm", args.norm, "distance norm: l1 or l2")
      ->check(CLI::IsMember({"l1", "l2"}));
  cmd->add_option("--threads", args.threads, "worker threads (default: from config)");
}

std::vector<std::uint64_t> parse_seed_range(const std::string& range) {
  auto pos = range.find("..");
  if (pos == std::string::npos)
    throw recourse::ConfigError("--seeds expects a range like 1..5");
  std::uint64_t lo = std::stoull(range.substr(0, pos));
  std::uint64_t hi = std::stoull(range.substr(pos + 2));
  if (hi < lo) throw recourse::ConfigError("--seeds range is empty");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

recourse::RunConfig load_with_overrides(const CommonArgs& args) {
  recourse::RunConfig cfg = recourse::load_config(args.config_path);
  if (!args.alpha.empty()) cfg.alphas = args.alpha;
  if (!args.seed.empty()) cfg.seeds = args.seed;
  if (!args.seeds_range.empty()) cfg.seeds = parse_seed_range(args.seeds_range);
  if (!args.quantiles.empty()) cfg.quantiles = args.quantiles;
  if (args.norm == "l1") cfg.norm = recourse::DistanceNorm::L1;
  if (args.norm == "l2") cfg.norm = recourse::DistanceNorm::L2;
  if (args.threads > 0) cfg.threads = args.threads;
  recourse::validate_config(cfg);
  return cfg;
}

void print_written(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equality-of-effort fairness audit via algorithmic recourse"};
  app.require_subcommand(1);

  CommonArgs audit_args, sweep_args, cf_args, gen_args;
  auto* cmd_audit = app.add_subcommand("audit", "run the configured audit and emit report + curves");
  add_common(cmd_audit, audit_args);
  auto* cmd_sweep = app.add_subcommand("sweep-alpha", "audit across the alpha list");
  add_common(cmd_sweep, sweep_args);
  auto* cmd_cf = app.add_subcommand("cf-compare", "counterfactual fairness and cost comparison");
  add_common(cmd_cf, cf_args);
  auto* cmd_gen = app.add_subcommand("gen-data", "emit datasets as delimited files");
  add_common(cmd_gen, gen_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_audit->parsed()) {
      auto cfg = load_with_overrides(audit_args);
      print_written(recourse::write_audit_artifacts(cfg, cfg.alphas.front(), audit_args.out_dir));
    } else if (cmd_sweep->parsed()) {
      auto cfg = load_with_overrides(sweep_args);
      print_written(recourse::write_sweep_artifacts(cfg, sweep_args.out_dir));
    } else if (cmd_cf->parsed()) {
      auto cfg = load_with_overrides(cf_args);
      print_written(recourse::write_cf_artifacts(cfg, cf_args.out_dir));
    } else if (cmd_gen->parsed()) {
      auto cfg = load_with_overrides(gen_args);
      print_written(
          recourse::write_gen_data_artifacts(cfg, cfg.alphas.front(), gen_args.out_dir));
    }
  } catch (const recourse::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
