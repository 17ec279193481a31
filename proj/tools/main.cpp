// fairmab: simulate fairness-constrained sleeping bandits, solve the offline
// oracle and evaluate the analytic bounds.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fairmab/config_io.hpp"
#include "fairmab/errors.hpp"
#include "fairmab/experiment.hpp"
#include "fairmab/metrics.hpp"
#include "fairmab/oracle.hpp"
#include "fairmab/report.hpp"

namespace {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kInvalidConfig = 2,
  kOracleFailure = 3,
  kIoFailure = 4,
};

struct SourceOptions {
  std::string config;
  std::string preset;
};

struct RunOverrides {
  std::optional<std::size_t> runs;
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out;
  bool emit_traces = false;
};

void add_source_options(CLI::App* cmd, SourceOptions& src) {
  cmd->add_option("--config", src.config, "JSON config file (docs/config.md)");
  cmd->add_option("--preset", src.preset, "scenario-i | scenario-ii | fig7");
}

void add_run_options(CLI::App* cmd, RunOverrides& o) {
  cmd->add_option("--runs", o.runs, "Independent replications");
  cmd->add_option("--horizon", o.horizon, "Rounds per run (T)");
  cmd->add_option("--seed", o.seed, "Base seed; run k uses seed + k");
  cmd->add_option("--workers", o.workers, "Worker threads (default: $FAIRMAB_WORKERS or #cores)");
  cmd->add_option("--out", o.out, "Output directory (default: out/<name>)");
  cmd->add_flag("--emit-traces", o.emit_traces, "Also write every per-run trace");
}

fairmab::ExperimentSpec load_spec(const SourceOptions& src) {
  if (src.config.empty() && src.preset.empty()) {
    throw fairmab::InvalidConfig("pass --config FILE or --preset NAME");
  }
  fairmab::ExperimentSpec spec;
  if (!src.preset.empty()) {
    spec = fairmab::preset(src.preset);
    if (src.preset == "scenario-ii" && src.config.empty()) {
      throw fairmab::InvalidConfig(
          "scenario-ii fixes only N=10 and m=6; supply means, weights, min_fractions and "
          "availability with --config");
    }
  } else {
    // Config-only runs default to the comparison set of policies.
    spec = fairmab::preset("scenario-i");
    spec.name = std::filesystem::path(src.config).stem().string();
  }
  if (!src.config.empty()) {
    spec = fairmab::experiment_from_json(fairmab::load_json_file(src.config), std::move(spec));
  }
  return spec;
}

void apply(const RunOverrides& o, fairmab::ExperimentSpec& spec) {
  if (o.runs) spec.runs = *o.runs;
  if (o.horizon) {
    spec.horizon = *o.horizon;
    // Preset checkpoints may not fit a shorter horizon.
    std::erase_if(spec.checkpoints, [&](std::size_t t) { return t > spec.horizon; });
    if (!spec.checkpoints.empty() && spec.checkpoints.back() != spec.horizon) {
      spec.checkpoints.push_back(spec.horizon);
    }
  }
  if (o.seed) spec.base_seed = *o.seed;
  if (o.workers) spec.workers = *o.workers;
  spec.emit_traces = o.emit_traces;
  spec.output_dir = o.out.empty() ? std::filesystem::path("out") / spec.name : std::filesystem::path(o.out);
}

void print_summary(const fairmab::ExperimentSpec& spec, const fairmab::ExperimentResult& result) {
  std::printf("experiment %s: N=%zu m=%zu T=%zu runs=%zu seed=%llu\n", spec.name.c_str(),
              spec.environment.n_arms, spec.environment.max_plays, spec.horizon, spec.runs,
              static_cast<unsigned long long>(spec.base_seed));
  if (result.optimal_reward) std::printf("R* = %.6f\n", *result.optimal_reward);
  if (result.epsilon) std::printf("epsilon = %.6f\n", *result.epsilon);
  for (const auto& pr : result.policies) {
    std::printf("%-16s", pr.policy.label.c_str());
    if (pr.pseudo_regret) {
      const auto& last = pr.pseudo_regret->points.back();
      std::printf("  regret(T) = %+.5f (se %.5f)", last.mean, last.std_error);
    }
    std::printf("  fractions =");
    for (double f : pr.fractions.back().mean) std::printf(" %.4f", f);
    std::printf("\n");
  }
  for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int run_simulate(const SourceOptions& src, const RunOverrides& o, bool compare) {
  auto spec = load_spec(src);
  apply(o, spec);
  const auto result = fairmab::run_experiment(spec);
  auto written = fairmab::write_artifacts(result, spec.output_dir);
  if (compare) {
    const auto path = spec.output_dir / "compare.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw fairmab::IoError("cannot write " + path.string());
    fairmab::write_compare_csv(out, result, spec.environment.min_fractions);
    if (!out) throw fairmab::IoError("failed writing " + path.string());
    written.push_back(path);
    fairmab::write_compare_csv(std::cout, result, spec.environment.min_fractions);
  } else {
    print_summary(spec, result);
  }
  for (const auto& p : written) std::fprintf(stderr, "wrote %s\n", p.string().c_str());
  return kSuccess;
}

int run_oracle(const SourceOptions& src, const std::string& q_table) {
  const auto spec = load_spec(src);
  const auto solution = fairmab::solve_offline_lp(spec.environment);
  const auto margin = fairmab::feasibility_margin(spec.environment);
  std::printf("status = %s\n",
              solution.status == fairmab::LpStatus::kOptimal ? "optimal" : "infeasible");
  if (solution.status == fairmab::LpStatus::kOptimal) {
    std::printf("R* = %s\n", fairmab::format_number(solution.optimal_reward).c_str());
  }
  std::printf("epsilon = %s\n", fairmab::format_number(margin.epsilon).c_str());
  if (solution.status != fairmab::LpStatus::kOptimal) return kOracleFailure;
  if (!q_table.empty()) {
    if (q_table == "-") {
      fairmab::write_policy_table_csv(std::cout, solution.policy);
    } else {
      std::ofstream out(q_table, std::ios::binary | std::ios::trunc);
      if (!out) throw fairmab::IoError("cannot write " + q_table);
      fairmab::write_policy_table_csv(out, solution.policy);
      if (!out) throw fairmab::IoError("failed writing " + q_table);
    }
  }
  return kSuccess;
}

struct BoundOptions {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t horizon = 0;
  double eta = 0.0;
  double w_max = 1.0;
  std::optional<double> epsilon;
};

int run_bound(const BoundOptions& b) {
  if (b.n < 1 || b.m < 1 || b.m > b.n) throw fairmab::InvalidConfig("need 1 <= m <= n");
  if (b.horizon < 2) throw fairmab::InvalidConfig("--horizon must be at least 2");
  if (!(b.eta > 0.0)) throw fairmab::InvalidConfig("--eta must be positive");
  if (!(b.w_max > 0.0)) throw fairmab::InvalidConfig("--wmax must be positive");
  const double bound = fairmab::regret_upper_bound(b.n, b.m, b.horizon, b.eta, b.w_max);
  const double big_b = fairmab::stability_constant(b.n, b.m, b.eta, b.w_max);
  std::printf("regret_bound = %s\n", fairmab::format_number(bound).c_str());
  std::printf("beta1 = %s\n", fairmab::format_number(fairmab::regret_beta1(b.w_max)).c_str());
  std::printf("beta2 = %s\n", fairmab::format_number(fairmab::regret_beta2(b.w_max)).c_str());
  std::printf("B = %s\n", fairmab::format_number(big_b).c_str());
  if (b.epsilon) {
    const double s = fairmab::stability_bound(big_b, *b.epsilon);
    std::printf("B/epsilon = %s\n", std::isfinite(s) ? fairmab::format_number(s).c_str() : "inf");
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness-constrained combinatorial sleeping bandits: LFG, LLRS, LP oracle"};
  app.require_subcommand(1);

  SourceOptions sim_src, cmp_src, oracle_src;
  RunOverrides sim_opts, cmp_opts;
  std::string q_table;
  BoundOptions bound_opts;

  auto* simulate = app.add_subcommand("simulate", "Run seeded replications and write CSVs");
  add_source_options(simulate, sim_src);
  add_run_options(simulate, sim_opts);

  auto* compare = app.add_subcommand("compare", "simulate, then join regret and fractions");
  add_source_options(compare, cmp_src);
  add_run_options(compare, cmp_opts);

  auto* oracle = app.add_subcommand("oracle", "Solve the offline LP: R*, epsilon, q*");
  add_source_options(oracle, oracle_src);
  oracle->add_option("--q-table", q_table, "Write q* as CSV to FILE ('-' for stdout)");

  auto* bound = app.add_subcommand("bound", "Evaluate the regret and stability bounds");
  bound->add_option("--n", bound_opts.n, "Number of arms")->required();
  bound->add_option("--m", bound_opts.m, "Max plays per round")->required();
  bound->add_option("--horizon", bound_opts.horizon, "Horizon T")->required();
  bound->add_option("--eta", bound_opts.eta, "LFG eta")->required();
  bound->add_option("--wmax", bound_opts.w_max, "Largest weight")->capture_default_str();
  bound->add_option("--epsilon", bound_opts.epsilon, "Feasibility margin for B/epsilon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInvalidConfig;
  }

  try {
    if (*simulate) return run_simulate(sim_src, sim_opts, false);
    if (*compare) return run_simulate(cmp_src, cmp_opts, true);
    if (*oracle) return run_oracle(oracle_src, q_table);
    if (*bound) return run_bound(bound_opts);
  } catch (const fairmab::InvalidConfig& e) {
    std::fprintf(stderr, "invalid config: %s\n", e.what());
    return kInvalidConfig;
  } catch (const fairmab::UnknownPreset& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kInvalidConfig;
  } catch (const fairmab::CapExceeded& e) {
    std::fprintf(stderr, "oracle: %s\n", e.what());
    return kOracleFailure;
  } catch (const fairmab::OracleInfeasible& e) {
    std::fprintf(stderr, "oracle: %s\n", e.what());
    return kOracleFailure;
  } catch (const fairmab::NumericalFailure& e) {
    std::fprintf(stderr, "oracle: %s\n", e.what());
    return kOracleFailure;
  } catch (const fairmab::IoError& e) {
    std::fprintf(stderr, "i/o: %s\n", e.what());
    return kIoFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kFailure;
}
