#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lsgp/core.hpp"
#include "lsgp/liquid.hpp"
#include "lsgp/packed.hpp"
#include "lsgp/rng.hpp"
#include "lsgp/tree.hpp"

namespace lsgp {

struct GpParams {
  int pop_size = 100;
  int generations = 50;
  int max_height = 12;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  int tournament_size = 2;
  int elite_count = 1;
  int init_depth_min = 2;
  int init_depth_max = 6;
  double success_threshold = 0.0;  // a run succeeds once best Q <= threshold

  void validate() const;
};

// A population member. The fitness cache is valid only for the liquid
// generation it was computed against; liquid updates leave it stale.
struct Individual {
  static constexpr std::uint32_t kStale = 0xffffffffu;

  GpTree tree;
  Value q = 0.0;
  std::uint32_t eval_generation = kStale;

  bool fresh(std::uint32_t liquid_generation) const { return eval_generation == liquid_generation; }
};

using Population = std::vector<Individual>;

// Best-so-far tree together with the liquid state it was scored against, so
// the recorded Q stays reproducible after the liquid moves on.
struct BestArchive {
  GpTree tree;
  Liquid liquid_snapshot;
  Value q = std::numeric_limits<Value>::infinity();
  int generation = 0;
};

struct RunResult {
  bool success = false;
  std::optional<int> success_generation;
  Value best_q = std::numeric_limits<Value>::infinity();
  BestArchive archive;
  double mean_tree_nodes = 0.0;  // average tree size per fitness evaluation
  std::chrono::duration<double, std::milli> elapsed{0.0};
};

enum class EvalBackend { naive, packed };

// Q of a tree over the given terminal set: q_error(targets, eval_tree(...)).
Value fitness(const GpTree& tree, std::span<const BehaviorVector> terminals,
              const FitnessCaseTable& problem);

// Fitness evaluation strategy. The packed backend mirrors the bound terminals
// into machine words and scores trees with bitwise operations; both backends
// return identical Q values, so the choice is performance only.
class Evaluator {
public:
  Evaluator(const FitnessCaseTable& problem, EvalBackend backend);

  // Copies the terminal set (and repacks it for the packed backend). Call
  // again after every liquid update.
  void bind_terminals(std::span<const BehaviorVector> terminals, std::uint32_t liquid_generation);

  Value fitness(const GpTree& tree);
  void evaluate(Individual& individual);

  std::uint32_t liquid_generation() const { return liquid_generation_; }
  std::span<const BehaviorVector> terminals() const { return terminals_; }
  std::uint64_t evaluations() const { return evaluations_; }
  double mean_tree_nodes() const;

private:
  const FitnessCaseTable* problem_;
  EvalBackend backend_;
  std::uint32_t liquid_generation_ = 0;
  std::vector<BehaviorVector> terminals_;
  std::vector<PackedVector> packed_terminals_;
  PackedVector packed_targets_;
  std::uint64_t evaluations_ = 0;
  std::uint64_t node_sum_ = 0;
};

// Draws tournament_size contestants uniformly with replacement and returns
// the index of the lowest-Q one; ties go to the earliest-drawn contestant.
// Throws std::logic_error if any contestant's fitness cache is stale.
std::size_t tournament_select(const Population& population, const GpParams& params,
                              std::uint32_t liquid_generation, Rng& rng);

// Ramped half-and-half initial population, evaluated.
Population init_population(const GpParams& params, const FunctionSet& function_set,
                           int terminal_count, Evaluator& evaluator, Rng& rng);

// One generational step: elites copied verbatim, remaining slots filled by
// tournament parents with crossover (probability crossover_prob, else
// reproduction of the first parent) then mutation (probability
// mutation_prob). All offspring are evaluated before return.
Population gp_generation(const Population& population, const FunctionSet& function_set,
                         const GpParams& params, Evaluator& evaluator, Rng& rng);

// Full LSGP run: evolving liquid as the terminal set, liquid update every
// params.update_period generations with the whole population re-evaluated
// afterwards, best+liquid archive, early exit on success. When a ledger is
// given the liquid's construction history is recorded in it.
RunResult run_lsgp(const FitnessCaseTable& problem, const GpParams& gp_params,
                   const LiquidParams& liquid_params, const FunctionSet& function_set, Rng& rng,
                   EvalBackend backend = EvalBackend::naive, ProvenanceLedger* ledger = nullptr);

// Baseline: the same engine over the fixed raw input columns.
RunResult run_standard_gp(const FitnessCaseTable& problem, const GpParams& gp_params,
                          const FunctionSet& function_set, Rng& rng,
                          EvalBackend backend = EvalBackend::naive);

// Splices each leaf of the archived tree with the ledger expression of the
// liquid item it reads, yielding a tree over raw inputs whose Q on the
// problem equals the archived Q exactly. Throws std::logic_error when the
// archive was captured without a ledger.
GpTree reconstruct_expression(const BestArchive& archive, const ProvenanceLedger& ledger);

}  // namespace lsgp
