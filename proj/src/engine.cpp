#include "lsgp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace lsgp {

void GpParams::validate() const {
  if (pop_size < 1) throw std::invalid_argument("pop_size must be >= 1");
  if (generations < 0) throw std::invalid_argument("generations must be >= 0");
  if (max_height < 1) throw std::invalid_argument("max_height must be >= 1");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw std::invalid_argument("crossover_prob must lie in [0, 1]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw std::invalid_argument("mutation_prob must lie in [0, 1]");
  if (tournament_size < 1) throw std::invalid_argument("tournament_size must be >= 1");
  if (elite_count < 0 || elite_count >= pop_size)
    throw std::invalid_argument("elite_count must lie in [0, pop_size)");
  if (init_depth_min < 1 || init_depth_max < init_depth_min)
    throw std::invalid_argument("init depth range is ill-formed");
  if (init_depth_max > max_height)
    throw std::invalid_argument("init depths must not exceed max_height");
}

Value fitness(const GpTree& tree, std::span<const BehaviorVector> terminals,
              const FitnessCaseTable& problem) {
  check_tree(tree, static_cast<int>(terminals.size()));
  Value q = 0.0;
  for (int k = 0; k < problem.m; ++k)
    q += std::abs(problem.targets[k] - detail::eval_case(tree, terminals, k));
  return q;
}

Evaluator::Evaluator(const FitnessCaseTable& problem, EvalBackend backend)
    : problem_(&problem), backend_(backend) {
  if (backend_ == EvalBackend::packed) {
    if (problem.algebra != Algebra::boolean)
      throw std::invalid_argument("packed backend requires a boolean problem");
    packed_targets_ = pack(problem.targets);
  }
}

void Evaluator::bind_terminals(std::span<const BehaviorVector> terminals,
                               std::uint32_t liquid_generation) {
  terminals_.assign(terminals.begin(), terminals.end());
  liquid_generation_ = liquid_generation;
  if (backend_ == EvalBackend::packed) {
    packed_terminals_.clear();
    packed_terminals_.reserve(terminals_.size());
    for (const auto& t : terminals_) packed_terminals_.push_back(pack(t));
  }
}

Value Evaluator::fitness(const GpTree& tree) {
  ++evaluations_;
  node_sum_ += tree.size();
  if (backend_ == EvalBackend::packed)
    return packed_fitness<std::uint64_t>(tree, packed_terminals_, packed_targets_);
  return lsgp::fitness(tree, terminals_, *problem_);
}

void Evaluator::evaluate(Individual& individual) {
  individual.q = fitness(individual.tree);
  individual.eval_generation = liquid_generation_;
}

double Evaluator::mean_tree_nodes() const {
  return evaluations_ == 0 ? 0.0 : static_cast<double>(node_sum_) / static_cast<double>(evaluations_);
}

std::size_t tournament_select(const Population& population, const GpParams& params,
                              std::uint32_t liquid_generation, Rng& rng) {
  if (population.empty()) throw std::invalid_argument("tournament_select: empty population");
  std::size_t best = 0;
  for (int t = 0; t < params.tournament_size; ++t) {
    const std::size_t contender = rng.index(population.size());
    if (!population[contender].fresh(liquid_generation))
      throw std::logic_error("tournament_select: stale fitness cache");
    if (t == 0 || population[contender].q < population[best].q) best = contender;
  }
  return best;
}

Population init_population(const GpParams& params, const FunctionSet& function_set,
                           int terminal_count, Evaluator& evaluator, Rng& rng) {
  const int span = params.init_depth_max - params.init_depth_min + 1;
  Population population;
  population.reserve(params.pop_size);
  for (int i = 0; i < params.pop_size; ++i) {
    const InitMethod method = i % 2 == 0 ? InitMethod::grow : InitMethod::full;
    const int depth = params.init_depth_min + (i / 2) % span;
    Individual ind;
    ind.tree = random_tree(function_set, terminal_count, method, depth, rng);
    evaluator.evaluate(ind);
    population.push_back(std::move(ind));
  }
  return population;
}

namespace {

// Indices of the count best individuals, ties resolved by position.
std::vector<std::size_t> best_indices(const Population& population, int count) {
  std::vector<std::size_t> order(population.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (population[a].q != population[b].q) return population[a].q < population[b].q;
                      return a < b;
                    });
  order.resize(count);
  return order;
}

}  // namespace

Population gp_generation(const Population& population, const FunctionSet& function_set,
                         const GpParams& params, Evaluator& evaluator, Rng& rng) {
  const std::uint32_t generation = evaluator.liquid_generation();
  const int terminal_count = static_cast<int>(evaluator.terminals().size());

  Population next;
  next.reserve(params.pop_size);
  for (std::size_t idx : best_indices(population, params.elite_count))
    next.push_back(population[idx]);

  while (static_cast<int>(next.size()) < params.pop_size) {
    const std::size_t first = tournament_select(population, params, generation, rng);
    Individual child;
    if (rng.chance(params.crossover_prob)) {
      const std::size_t second = tournament_select(population, params, generation, rng);
      child.tree =
          crossover(population[first].tree, population[second].tree, params.max_height, rng);
    } else {
      child.tree = population[first].tree;
    }
    if (rng.chance(params.mutation_prob))
      child.tree = mutate(child.tree, function_set, terminal_count, params.max_height, rng);
    evaluator.evaluate(child);
    next.push_back(std::move(child));
  }
  return next;
}

namespace {

struct EngineState {
  const FitnessCaseTable* problem;
  GpParams gp;
  LiquidParams liquid_params;
  bool use_liquid = false;
  const FunctionSet* function_set;
  ProvenanceLedger* ledger = nullptr;

  Liquid liquid;  // LSGP terminal pool, or the fixed raw columns for plain GP
};

// Scans for a strictly better individual and archives it with the current
// liquid state. Returns true when the success threshold is reached.
bool refresh_archive(BestArchive& archive, const Population& population, const EngineState& state,
                     int generation) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i].q < population[best].q) best = i;
  if (population[best].q < archive.q) {
    archive.tree = population[best].tree;
    archive.liquid_snapshot = state.liquid;
    archive.q = population[best].q;
    archive.generation = generation;
  }
  return archive.q <= state.gp.success_threshold;
}

RunResult run_engine(EngineState state, EvalBackend backend, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  state.gp.validate();
  state.problem->validate();
  if (state.function_set->empty()) throw std::invalid_argument("run: empty function set");
  for (Op op : *state.function_set)
    if (algebra(op) != state.problem->algebra)
      throw std::invalid_argument("run: function set does not match the problem algebra");

  Evaluator evaluator(*state.problem, backend);

  if (state.use_liquid) {
    state.liquid_params = state.liquid_params.resolved(state.problem->n);
    state.liquid = init_liquid(*state.problem, state.liquid_params, rng, state.ledger);
  } else {
    state.liquid.items.reserve(state.problem->n);
    for (int j = 0; j < state.problem->n; ++j)
      state.liquid.items.push_back(terminal_vector(*state.problem, j));
  }
  evaluator.bind_terminals(state.liquid.items, state.liquid.generation);

  Population population =
      init_population(state.gp, *state.function_set,
                      static_cast<int>(state.liquid.items.size()), evaluator, rng);

  RunResult result;
  BestArchive archive;
  bool done = refresh_archive(archive, population, state, 0);
  if (done) result.success_generation = 0;

  for (int g = 1; g <= state.gp.generations && !done; ++g) {
    population = gp_generation(population, *state.function_set, state.gp, evaluator, rng);
    done = refresh_archive(archive, population, state, g);
    if (done) {
      result.success_generation = g;
      break;
    }

    if (state.use_liquid && g % state.liquid_params.update_period == 0) {
      state.liquid = step_liquid(state.liquid, *state.problem, state.liquid_params,
                                 *state.function_set, rng, state.ledger);
      evaluator.bind_terminals(state.liquid.items, state.liquid.generation);
      for (Individual& ind : population) ind.eval_generation = Individual::kStale;
      for (Individual& ind : population) evaluator.evaluate(ind);
      done = refresh_archive(archive, population, state, g);
      if (done) result.success_generation = g;
    }
  }

  result.success = done;
  result.best_q = archive.q;
  result.archive = std::move(archive);
  result.mean_tree_nodes = evaluator.mean_tree_nodes();
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace

RunResult run_lsgp(const FitnessCaseTable& problem, const GpParams& gp_params,
                   const LiquidParams& liquid_params, const FunctionSet& function_set, Rng& rng,
                   EvalBackend backend, ProvenanceLedger* ledger) {
  EngineState state;
  state.problem = &problem;
  state.gp = gp_params;
  state.liquid_params = liquid_params;
  state.use_liquid = true;
  state.function_set = &function_set;
  state.ledger = ledger;
  return run_engine(std::move(state), backend, rng);
}

RunResult run_standard_gp(const FitnessCaseTable& problem, const GpParams& gp_params,
                          const FunctionSet& function_set, Rng& rng, EvalBackend backend) {
  EngineState state;
  state.problem = &problem;
  state.gp = gp_params;
  state.use_liquid = false;
  state.function_set = &function_set;
  return run_engine(std::move(state), backend, rng);
}

namespace {

const GpTree& ledger_expression(const ProvenanceLedger& ledger, std::size_t id,
                                std::unordered_map<std::size_t, GpTree>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  const auto& rec = ledger.record(id);
  GpTree expr;
  if (rec.is_terminal()) {
    expr = leaf(rec.input);
  } else {
    expr.code.push_back(encode_op(rec.op));
    for (std::size_t parent : rec.parents) {
      const GpTree& sub = ledger_expression(ledger, parent, memo);
      expr.code.insert(expr.code.end(), sub.code.begin(), sub.code.end());
    }
  }
  return memo.emplace(id, std::move(expr)).first->second;
}

}  // namespace

GpTree reconstruct_expression(const BestArchive& archive, const ProvenanceLedger& ledger) {
  const Liquid& snapshot = archive.liquid_snapshot;
  if (snapshot.provenance.size() != snapshot.items.size())
    throw std::logic_error("reconstruct_expression: run was executed without a provenance ledger");

  std::unordered_map<std::size_t, GpTree> memo;
  GpTree out;
  out.code.reserve(archive.tree.size());
  for (const std::int32_t c : archive.tree.code) {
    if (is_op_code(c)) {
      out.code.push_back(c);
    } else {
      const GpTree& sub = ledger_expression(ledger, snapshot.provenance[c], memo);
      out.code.insert(out.code.end(), sub.code.begin(), sub.code.end());
    }
  }
  return out;
}

}  // namespace lsgp
