#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lsgp/core.hpp"
#include "lsgp/rng.hpp"

namespace lsgp {

struct LiquidParams {
  int liquid_size = 0;       // 0 resolves to 2 * input count
  double p_insert = 0.05;    // probability of insertion instead of recombination
  int update_period = 5;     // GP generations between liquid updates

  // Returns a copy with liquid_size made concrete for the given input count.
  LiquidParams resolved(int input_count) const;
  // Throws std::invalid_argument unless liquid_size >= 1, update_period >= 1
  // and p_insert is a probability.
  void validate() const;
};

// Append-only construction history of liquid items. Every record is either a
// raw input terminal or a symbol applied to earlier records, so the ledger is
// a DAG in topological order and any item can be replayed from raw inputs.
class ProvenanceLedger {
public:
  struct Record {
    Op op = Op::AND;                   // meaningful for combinations only
    int input = -1;                    // raw input index for terminals
    std::vector<std::size_t> parents;  // empty for terminals

    bool is_terminal() const { return parents.empty(); }
  };

  std::size_t add_terminal(int input_index);
  // Parent ids must already exist; throws std::invalid_argument otherwise.
  std::size_t add_combination(Op op, std::span<const std::size_t> parents);

  const Record& record(std::size_t id) const { return records_.at(id); }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Recomputes the behavior vector of a record from the raw inputs.
  BehaviorVector replay(std::size_t id, const FitnessCaseTable& problem) const;

private:
  std::vector<Record> records_;
};

// The dynamic terminal pool read by LSGP trees. Item count stays equal to the
// configured liquid size through every update.
struct Liquid {
  std::vector<BehaviorVector> items;
  std::uint32_t generation = 0;
  std::vector<std::size_t> provenance;  // per-item ledger ids; empty when no ledger
};

// Column j of the input matrix: the behavior vector of the expression "x_j".
BehaviorVector terminal_vector(const FitnessCaseTable& problem, int input_index);

// Fresh liquid of single-terminal items. The first min(liquid_size, n) slots
// hold inputs 0..n-1 in order so every input is covered whenever the liquid
// is big enough; remaining slots are uniformly random terminals.
Liquid init_liquid(const FitnessCaseTable& problem, const LiquidParams& params, Rng& rng,
                   ProvenanceLedger* ledger = nullptr);

// Elementwise application of a symbol to parent items; the only operator that
// creates genuinely new items. The symbol must belong to the configured
// function set.
BehaviorVector recombine(const Liquid& liquid, Op op, std::span<const std::size_t> parents,
                         const FunctionSet& function_set);

// A single-terminal item over a uniformly random input.
BehaviorVector insert_item(const FitnessCaseTable& problem, Rng& rng);

// One liquid generation: every slot of the new liquid is, independently, an
// insertion with probability p_insert, otherwise a recombination of randomly
// selected parents from the old liquid under a randomly selected symbol.
Liquid step_liquid(const Liquid& liquid, const FitnessCaseTable& problem, const LiquidParams& params,
                   const FunctionSet& function_set, Rng& rng, ProvenanceLedger* ledger = nullptr);

}  // namespace lsgp
