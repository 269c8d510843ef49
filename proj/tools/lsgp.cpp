// Command-line experiment runner for liquid-state and standard tree GP.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsgp/harness.hpp"

namespace {

int run_command(const lsgp::ExperimentConfig& config, bool print_expression) {
  lsgp::ExperimentConfig cfg = config;
  cfg.keep_results = cfg.ledger && print_expression;
  const lsgp::ExperimentResult result = lsgp::run_experiment(cfg);
  const lsgp::ExperimentSummary& s = result.summary;

  std::printf("%s\n", lsgp::summary_csv_header().c_str());
  std::printf("%s\n", lsgp::summary_csv_row(cfg, s).c_str());
  std::printf("success %d/%d", s.success_count, s.runs);
  if (s.mean_success_generation)
    std::printf(", mean success generation %s", lsgp::format_double(*s.mean_success_generation).c_str());
  std::printf(", mean best Q %s\n", lsgp::format_double(s.mean_best_q).c_str());

  if (cfg.keep_results && !result.run_results.empty()) {
    // show the raw-input expression behind the best archived run
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.run_results.size(); ++i)
      if (result.run_results[i].best_q < result.run_results[best].best_q) best = i;
    const lsgp::RunResult& run = result.run_results[best];
    const lsgp::GpTree expr = lsgp::reconstruct_expression(run.archive, result.ledgers[best]);
    const lsgp::FitnessCaseTable problem = lsgp::build_problem(cfg.problem);
    std::vector<std::string> names;
    names.reserve(problem.n);
    for (int j = 1; j <= problem.n; ++j) names.push_back("x" + std::to_string(j));
    std::printf("best run: seed %llu, Q %s\n",
                static_cast<unsigned long long>(cfg.base_seed + best),
                lsgp::format_double(run.best_q).c_str());
    std::printf("best expression: %s\n", lsgp::to_string(expr, names).c_str());
  }

  if (!cfg.out_dir.empty())
    std::printf("wrote %s and %s\n", (cfg.out_dir / "runs.jsonl").string().c_str(),
                (cfg.out_dir / "summary.csv").string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liquid-state genetic programming experiment runner"};
  app.require_subcommand(1);

  lsgp::ExperimentConfig config;
  std::string problem_text;
  std::string algo = "lsgp";
  std::string backend = "naive";

  CLI::App* run = app.add_subcommand("run", "execute a batch of seeded runs");
  run->set_config("--config", "", "key=value file mirroring the flags below");
  run->add_option("--problem", problem_text, "parity:K or regression:FILE")->required();
  run->add_option("--algo", algo, "lsgp or gp")->check(CLI::IsMember({"lsgp", "gp"}));
  run->add_option("--pop", config.gp.pop_size, "population size")->required();
  run->add_option("--gens", config.gp.generations, "number of GP generations")->required();
  run->add_option("--runs", config.runs, "independent runs to execute");
  run->add_option("--seed", config.base_seed, "base seed; run i uses seed + i");
  run->add_option("--liquid-size", config.liquid.liquid_size,
                  "liquid item count (default 2 * inputs)");
  run->add_option("--p-insert", config.liquid.p_insert, "liquid insertion probability");
  run->add_option("--update-period", config.liquid.update_period,
                  "GP generations between liquid updates");
  run->add_option("--backend", backend, "naive or packed evaluation")
      ->check(CLI::IsMember({"naive", "packed"}));
  run->add_flag("--ledger", config.ledger, "record liquid provenance; prints the best expression");
  run->add_option("--out", config.out_dir, "output directory for runs.jsonl and summary.csv")
      ->required();
  run->add_option("--workers", config.workers, "worker threads for concurrent runs")
      ->envname("LSGP_WORKERS");
  run->add_option("--success-threshold", config.gp.success_threshold,
                  "Q at or below which a run counts as successful");
  run->add_option("--max-height", config.gp.max_height, "maximum GP tree height");
  run->add_option("--crossover-prob", config.gp.crossover_prob, "crossover probability");
  run->add_option("--mutation-prob", config.gp.mutation_prob, "mutation probability");
  run->add_option("--elite", config.gp.elite_count, "individuals copied verbatim each generation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.problem = lsgp::ProblemConfig::parse(problem_text);
    config.algo = algo == "lsgp" ? lsgp::AlgoKind::lsgp : lsgp::AlgoKind::gp;
    config.backend = backend == "packed" ? lsgp::EvalBackend::packed : lsgp::EvalBackend::naive;
    return run_command(config, true);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
