#include "lsgp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace lsgp {

ProblemConfig ProblemConfig::parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("problem must be parity:K or regression:FILE, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  ProblemConfig out;
  if (kind == "parity") {
    out.kind = Kind::parity;
    int k = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (ec != std::errc{} || ptr != rest.data() + rest.size())
      throw std::invalid_argument("parity arity is not a number: '" + rest + "'");
    out.parity_k = k;
  } else if (kind == "regression") {
    if (rest.empty()) throw std::invalid_argument("regression problem needs a file path");
    out.kind = Kind::regression;
    out.csv_path = rest;
  } else {
    throw std::invalid_argument("unknown problem kind '" + kind + "'");
  }
  return out;
}

std::string ProblemConfig::label() const {
  if (kind == Kind::parity) return "parity:" + std::to_string(parity_k);
  return "regression:" + csv_path.filename().string();
}

namespace {

// Infers the input count of a CSV by counting fields on its first data row.
int infer_csv_inputs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const int columns = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (columns < 2) throw std::runtime_error("regression file needs at least two columns");
    return columns - 1;
  }
  throw std::runtime_error("regression file " + path.string() + " is empty");
}

}  // namespace

FitnessCaseTable build_problem(const ProblemConfig& problem) {
  if (problem.kind == ProblemConfig::Kind::parity) return make_parity({problem.parity_k});
  const int n = problem.csv_inputs > 0 ? problem.csv_inputs : infer_csv_inputs(problem.csv_path);
  return load_regression_csv(problem.csv_path, n);
}

ExperimentSummary summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");

  ExperimentSummary s;
  s.runs = static_cast<int>(records.size());
  std::vector<int> success_gens;
  double q_sum = 0.0;
  double node_sum = 0.0;
  for (const RunRecord& r : records) {
    if (r.success) {
      ++s.success_count;
      success_gens.push_back(r.success_generation.value());
    }
    q_sum += r.best_q;
    node_sum += r.mean_tree_nodes;
  }
  s.success_rate = static_cast<double>(s.success_count) / s.runs;
  s.mean_best_q = q_sum / s.runs;
  s.mean_tree_nodes = node_sum / s.runs;
  if (!success_gens.empty()) {
    double gen_sum = 0.0;
    for (int g : success_gens) gen_sum += g;
    s.mean_success_generation = gen_sum / static_cast<double>(success_gens.size());
    std::sort(success_gens.begin(), success_gens.end());
    s.median_success_generation = success_gens[(success_gens.size() - 1) / 2];
  }
  return s;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string record_json_line(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["seed"] = record.seed;
  j["success"] = record.success;
  if (record.success_generation)
    j["success_generation"] = *record.success_generation;
  else
    j["success_generation"] = nullptr;
  j["best_q"] = record.best_q;
  j["mean_tree_nodes"] = record.mean_tree_nodes;
  return j.dump();
}

std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    RunRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.success = j.at("success").get<bool>();
    if (!j.at("success_generation").is_null())
      r.success_generation = j.at("success_generation").get<int>();
    r.best_q = j.at("best_q").get<double>();
    r.mean_tree_nodes = j.at("mean_tree_nodes").get<double>();
    records.push_back(r);
  }
  return records;
}

std::string summary_csv_header() {
  return "problem,algo,pop,gens,runs,seed,success_rate,mean_success_gen,mean_best_q,elapsed_s";
}

std::string summary_csv_row(const ExperimentConfig& config, const ExperimentSummary& summary) {
  std::string row;
  row += config.problem.label();
  row += ',';
  row += config.algo == AlgoKind::lsgp ? "lsgp" : "gp";
  row += ',';
  row += std::to_string(config.gp.pop_size);
  row += ',';
  row += std::to_string(config.gp.generations);
  row += ',';
  row += std::to_string(summary.runs);
  row += ',';
  row += std::to_string(config.base_seed);
  row += ',';
  row += format_double(summary.success_rate);
  row += ',';
  if (summary.mean_success_generation) row += format_double(*summary.mean_success_generation);
  row += ',';
  row += format_double(summary.mean_best_q);
  row += ',';
  row += format_double(summary.elapsed_s);
  return row;
}

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
  config.gp.validate();
  if (config.backend == EvalBackend::packed &&
      config.problem.kind == ProblemConfig::Kind::regression)
    throw std::invalid_argument("packed backend works on boolean problems only");
}

struct RunOutput {
  RunRecord record;
  RunResult result;
  ProvenanceLedger ledger;
};

RunOutput execute_run(const ExperimentConfig& config, const FitnessCaseTable& problem,
                      const FunctionSet& function_set, int run_index) {
  RunOutput out;
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run_index);
  Rng rng(seed);
  ProvenanceLedger* ledger = config.ledger ? &out.ledger : nullptr;
  if (config.algo == AlgoKind::lsgp)
    out.result = run_lsgp(problem, config.gp, config.liquid, function_set, rng, config.backend,
                          ledger);
  else
    out.result = run_standard_gp(problem, config.gp, function_set, rng, config.backend);

  out.record.seed = seed;
  out.record.success = out.result.success;
  out.record.success_generation = out.result.success_generation;
  out.record.best_q = out.result.best_q;
  out.record.mean_tree_nodes = out.result.mean_tree_nodes;
  out.record.elapsed_ms = out.result.elapsed.count();
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const FitnessCaseTable problem = build_problem(config.problem);
  const FunctionSet& function_set =
      problem.algebra == Algebra::boolean ? boolean_ops() : arithmetic_ops();

  // Open outputs up front so path problems surface before any run starts.
  std::ofstream runs_out;
  std::ofstream summary_out;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    runs_out.open(config.out_dir / "runs.jsonl", std::ios::trunc);
    summary_out.open(config.out_dir / "summary.csv", std::ios::trunc);
    if (!runs_out || !summary_out)
      throw std::runtime_error("cannot write outputs under " + config.out_dir.string());
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<RunOutput> outputs(config.runs);
  const int workers = std::min(config.workers, config.runs);
  if (workers == 1) {
    for (int i = 0; i < config.runs; ++i)
      outputs[i] = execute_run(config, problem, function_set, i);
  } else {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= config.runs || failed.load()) return;
          try {
            outputs[i] = execute_run(config, problem, function_set, i);
          } catch (...) {
            const std::scoped_lock lock(error_mutex);
            if (!error) error = std::current_exception();
            failed.store(true);
            return;
          }
        }
      });
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  ExperimentResult result;
  result.records.reserve(config.runs);
  for (RunOutput& out : outputs) result.records.push_back(out.record);
  result.summary = summarize(result.records);
  result.summary.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.keep_results) {
    result.run_results.reserve(config.runs);
    for (RunOutput& out : outputs) result.run_results.push_back(std::move(out.result));
    if (config.ledger) {
      result.ledgers.reserve(config.runs);
      for (RunOutput& out : outputs) result.ledgers.push_back(std::move(out.ledger));
    }
  }

  if (!config.out_dir.empty()) {
    for (const RunRecord& record : result.records) runs_out << record_json_line(record) << '\n';
    summary_out << summary_csv_header() << '\n'
                << summary_csv_row(config, result.summary) << '\n';
    runs_out.flush();
    summary_out.flush();
    if (!runs_out || !summary_out)
      throw std::runtime_error("failed writing outputs under " + config.out_dir.string());
  }
  return result;
}

}  // namespace lsgp
