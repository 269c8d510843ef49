#include "lsgp/liquid.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace lsgp {

LiquidParams LiquidParams::resolved(int input_count) const {
  LiquidParams out = *this;
  if (out.liquid_size <= 0) out.liquid_size = 2 * input_count;
  return out;
}

void LiquidParams::validate() const {
  if (liquid_size < 1) throw std::invalid_argument("liquid_size must be >= 1");
  if (update_period < 1) throw std::invalid_argument("update_period must be >= 1");
  if (!(p_insert >= 0.0 && p_insert <= 1.0))
    throw std::invalid_argument("p_insert must lie in [0, 1]");
}

std::size_t ProvenanceLedger::add_terminal(int input_index) {
  if (input_index < 0) throw std::invalid_argument("ledger: negative input index");
  records_.push_back(Record{Op::AND, input_index, {}});
  return records_.size() - 1;
}

std::size_t ProvenanceLedger::add_combination(Op op, std::span<const std::size_t> parents) {
  if (static_cast<int>(parents.size()) != arity(op))
    throw std::invalid_argument("ledger: parent count differs from symbol arity");
  for (std::size_t p : parents)
    if (p >= records_.size()) throw std::invalid_argument("ledger: parent id not yet recorded");
  records_.push_back(Record{op, -1, {parents.begin(), parents.end()}});
  return records_.size() - 1;
}

namespace {

const BehaviorVector& replay_memo(const ProvenanceLedger& ledger, std::size_t id,
                                  const FitnessCaseTable& problem,
                                  std::unordered_map<std::size_t, BehaviorVector>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  const auto& rec = ledger.record(id);
  BehaviorVector out;
  if (rec.is_terminal()) {
    out = terminal_vector(problem, rec.input);
  } else {
    std::vector<const BehaviorVector*> parents;
    parents.reserve(rec.parents.size());
    for (std::size_t p : rec.parents) parents.push_back(&replay_memo(ledger, p, problem, memo));
    const std::size_t m = parents.front()->size();
    out.resize(m);
    std::vector<Value> args(parents.size());
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t a = 0; a < parents.size(); ++a) args[a] = (*parents[a])[k];
      out[k] = detail::apply_unchecked(rec.op, args.data());
    }
  }
  return memo.emplace(id, std::move(out)).first->second;
}

}  // namespace

BehaviorVector ProvenanceLedger::replay(std::size_t id, const FitnessCaseTable& problem) const {
  if (id >= records_.size()) throw std::invalid_argument("ledger: unknown record id");
  std::unordered_map<std::size_t, BehaviorVector> memo;
  return replay_memo(*this, id, problem, memo);
}

BehaviorVector terminal_vector(const FitnessCaseTable& problem, int input_index) {
  if (input_index < 0 || input_index >= problem.n)
    throw std::invalid_argument("terminal_vector: input index " + std::to_string(input_index) +
                                " outside [0, " + std::to_string(problem.n) + ")");
  BehaviorVector column(problem.m);
  for (int k = 0; k < problem.m; ++k) column[k] = problem.input(k, input_index);
  return column;
}

Liquid init_liquid(const FitnessCaseTable& problem, const LiquidParams& params, Rng& rng,
                   ProvenanceLedger* ledger) {
  const LiquidParams p = params.resolved(problem.n);
  p.validate();

  Liquid liquid;
  liquid.items.reserve(p.liquid_size);
  if (ledger) liquid.provenance.reserve(p.liquid_size);
  for (int i = 0; i < p.liquid_size; ++i) {
    const int j = i < problem.n ? i : static_cast<int>(rng.below(problem.n));
    liquid.items.push_back(terminal_vector(problem, j));
    if (ledger) liquid.provenance.push_back(ledger->add_terminal(j));
  }
  return liquid;
}

BehaviorVector recombine(const Liquid& liquid, Op op, std::span<const std::size_t> parents,
                         const FunctionSet& function_set) {
  if (!contains(function_set, op))
    throw std::invalid_argument(std::string("recombine: symbol ") + op_name(op) +
                                " is not in the configured function set");
  if (static_cast<int>(parents.size()) != arity(op))
    throw std::invalid_argument("recombine: parent count differs from symbol arity");
  for (std::size_t idx : parents)
    if (idx >= liquid.items.size()) throw std::invalid_argument("recombine: parent index out of range");

  const std::size_t m = liquid.items[parents[0]].size();
  BehaviorVector offspring(m);
  std::vector<Value> args(parents.size());
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t a = 0; a < parents.size(); ++a) args[a] = liquid.items[parents[a]][k];
    offspring[k] = apply_symbol(op, args);
  }
  return offspring;
}

BehaviorVector insert_item(const FitnessCaseTable& problem, Rng& rng) {
  return terminal_vector(problem, static_cast<int>(rng.below(problem.n)));
}

Liquid step_liquid(const Liquid& liquid, const FitnessCaseTable& problem, const LiquidParams& params,
                   const FunctionSet& function_set, Rng& rng, ProvenanceLedger* ledger) {
  const LiquidParams p = params.resolved(problem.n);
  p.validate();
  if (function_set.empty()) throw std::invalid_argument("step_liquid: empty function set");
  if (liquid.items.empty()) throw std::invalid_argument("step_liquid: empty liquid");
  if (ledger && liquid.provenance.size() != liquid.items.size())
    throw std::invalid_argument("step_liquid: liquid lacks provenance ids for the ledger");

  Liquid next;
  next.generation = liquid.generation + 1;
  next.items.reserve(p.liquid_size);
  if (ledger) next.provenance.reserve(p.liquid_size);

  std::vector<std::size_t> parents;
  for (int i = 0; i < p.liquid_size; ++i) {
    if (rng.chance(p.p_insert)) {
      const int j = static_cast<int>(rng.below(problem.n));
      next.items.push_back(terminal_vector(problem, j));
      if (ledger) next.provenance.push_back(ledger->add_terminal(j));
    } else {
      const Op op = function_set[rng.index(function_set.size())];
      parents.clear();
      for (int a = 0; a < arity(op); ++a) parents.push_back(rng.index(liquid.items.size()));
      next.items.push_back(recombine(liquid, op, parents, function_set));
      if (ledger) {
        std::vector<std::size_t> parent_ids;
        parent_ids.reserve(parents.size());
        for (std::size_t idx : parents) parent_ids.push_back(liquid.provenance[idx]);
        next.provenance.push_back(ledger->add_combination(op, parent_ids));
      }
    }
  }
  return next;
}

}  // namespace lsgp
