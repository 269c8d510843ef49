#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lsgp {

using Value = double;

// Per-fitness-case outputs of one expression: the representation of a liquid
// item. Length always equals the problem's case count m.
using BehaviorVector = std::vector<Value>;

enum class Algebra { boolean, arithmetic };

// Function symbols usable as tree internals and as liquid recombination
// operators. The boolean set is {AND, OR, NAND, NOR}; the arithmetic set is
// {+, -, *, protected /, sin}.
enum class Op : std::int8_t { AND, OR, NAND, NOR, ADD, SUB, MUL, DIV, SIN };

int arity(Op op);
Algebra algebra(Op op);
const char* op_name(Op op);

using FunctionSet = std::vector<Op>;
const FunctionSet& boolean_ops();
const FunctionSet& arithmetic_ops();
bool contains(const FunctionSet& set, Op op);

inline bool is_boolean_value(Value v) { return v == 0.0 || v == 1.0; }

namespace detail {
// Symbol semantics without argument validation. args must hold arity(op)
// values of the symbol's algebra.
Value apply_unchecked(Op op, const Value* args);
}

// Applies one function symbol to its arguments. Protected division returns 1
// when the divisor is exactly zero; boolean symbols demand 0/1 arguments.
// Throws std::invalid_argument on arity mismatch or domain violation.
Value apply_symbol(Op op, std::span<const Value> args);

// Number of apply_symbol calls made on this thread; just for cost reporting.
std::uint64_t apply_call_count();
void reset_apply_call_count();

// Total error Q = sum of |target - output|. Zero iff the vectors match; for
// 0/1 vectors this is the Hamming distance. Throws on length mismatch.
Value q_error(std::span<const Value> targets, std::span<const Value> outputs);

// One problem instance: m fitness cases of n input values plus one target.
struct FitnessCaseTable {
  int n = 0;  // inputs per case
  int m = 0;  // number of cases
  Algebra algebra = Algebra::boolean;
  std::vector<Value> inputs;   // row-major, m x n
  std::vector<Value> targets;  // length m

  Value input(int case_index, int input_index) const {
    return inputs[static_cast<std::size_t>(case_index) * n + input_index];
  }

  // Throws std::invalid_argument if sizes disagree or boolean values stray
  // outside {0, 1}.
  void validate() const;
};

}  // namespace lsgp
