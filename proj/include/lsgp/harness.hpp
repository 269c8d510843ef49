#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsgp/engine.hpp"
#include "lsgp/problems.hpp"

namespace lsgp {

enum class AlgoKind { lsgp, gp };

struct ProblemConfig {
  enum class Kind { parity, regression };

  Kind kind = Kind::parity;
  int parity_k = 3;
  std::filesystem::path csv_path;
  int csv_inputs = 0;  // 0 infers the count from the file's first data row

  // Parses "parity:K" or "regression:FILE".
  static ProblemConfig parse(const std::string& text);
  std::string label() const;
};

struct ExperimentConfig {
  ProblemConfig problem;
  AlgoKind algo = AlgoKind::lsgp;
  GpParams gp;
  LiquidParams liquid;  // used by lsgp only
  int runs = 100;
  std::uint64_t base_seed = 1;
  bool ledger = false;
  EvalBackend backend = EvalBackend::naive;
  std::filesystem::path out_dir;  // empty: write no files
  int workers = 1;
  bool keep_results = false;  // retain every RunResult (and ledger) in memory
};

// Per-run outcome as serialized to runs.jsonl. Wall time stays in memory
// only, so re-running a configuration reproduces the file byte for byte.
struct RunRecord {
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<int> success_generation;
  double best_q = 0.0;
  double mean_tree_nodes = 0.0;
  double elapsed_ms = 0.0;
};

struct ExperimentSummary {
  int runs = 0;
  int success_count = 0;
  double success_rate = 0.0;
  std::optional<double> mean_success_generation;
  std::optional<double> median_success_generation;  // lower-middle element for even counts
  double mean_best_q = 0.0;
  double mean_tree_nodes = 0.0;
  double elapsed_s = 0.0;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<RunRecord> records;
  std::vector<RunResult> run_results;       // when keep_results
  std::vector<ProvenanceLedger> ledgers;    // when keep_results and ledger
};

// Aggregates per-run records; throws std::invalid_argument on an empty set.
ExperimentSummary summarize(std::span<const RunRecord> records);

// Builds the problem instance an experiment runs against.
FitnessCaseTable build_problem(const ProblemConfig& problem);

// Executes config.runs independent runs, run i seeded with base_seed + i, on
// a pool of config.workers threads. Results are deterministic for a fixed
// config regardless of worker count. Writes runs.jsonl and summary.csv under
// out_dir when set; output files are opened before any run starts.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string record_json_line(const RunRecord& record);
std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path);

std::string summary_csv_header();
std::string summary_csv_row(const ExperimentConfig& config, const ExperimentSummary& summary);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace lsgp
