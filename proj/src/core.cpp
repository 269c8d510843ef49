#include "lsgp/core.hpp"

#include <cmath>
#include <stdexcept>

namespace lsgp {

namespace {
thread_local std::uint64_t g_apply_calls = 0;
}

int arity(Op op) {
  switch (op) {
    case Op::SIN: return 1;
    default: return 2;
  }
}

Algebra algebra(Op op) {
  switch (op) {
    case Op::AND:
    case Op::OR:
    case Op::NAND:
    case Op::NOR: return Algebra::boolean;
    default: return Algebra::arithmetic;
  }
}

const char* op_name(Op op) {
  switch (op) {
    case Op::AND: return "AND";
    case Op::OR: return "OR";
    case Op::NAND: return "NAND";
    case Op::NOR: return "NOR";
    case Op::ADD: return "+";
    case Op::SUB: return "-";
    case Op::MUL: return "*";
    case Op::DIV: return "/";
    case Op::SIN: return "sin";
  }
  return "?";
}

const FunctionSet& boolean_ops() {
  static const FunctionSet set{Op::AND, Op::OR, Op::NAND, Op::NOR};
  return set;
}

const FunctionSet& arithmetic_ops() {
  static const FunctionSet set{Op::ADD, Op::SUB, Op::MUL, Op::DIV, Op::SIN};
  return set;
}

bool contains(const FunctionSet& set, Op op) {
  for (Op o : set)
    if (o == op) return true;
  return false;
}

namespace detail {

Value apply_unchecked(Op op, const Value* a) {
  switch (op) {
    // 0/1 values make the arithmetic forms exact
    case Op::AND: return a[0] * a[1];
    case Op::OR: return a[0] + a[1] - a[0] * a[1];
    case Op::NAND: return 1.0 - a[0] * a[1];
    case Op::NOR: return 1.0 - (a[0] + a[1] - a[0] * a[1]);
    case Op::ADD: return a[0] + a[1];
    case Op::SUB: return a[0] - a[1];
    case Op::MUL: return a[0] * a[1];
    case Op::DIV: return a[1] == 0.0 ? 1.0 : a[0] / a[1];
    case Op::SIN: return std::sin(a[0]);
  }
  return 0.0;
}

}  // namespace detail

Value apply_symbol(Op op, std::span<const Value> args) {
  if (static_cast<int>(args.size()) != arity(op))
    throw std::invalid_argument(std::string("apply_symbol: ") + op_name(op) +
                                " expects " + std::to_string(arity(op)) +
                                " arguments, got " + std::to_string(args.size()));
  if (algebra(op) == Algebra::boolean)
    for (Value v : args)
      if (!is_boolean_value(v))
        throw std::invalid_argument(std::string("apply_symbol: ") + op_name(op) +
                                    " applied to non-boolean value");
  ++g_apply_calls;
  return detail::apply_unchecked(op, args.data());
}

std::uint64_t apply_call_count() { return g_apply_calls; }

void reset_apply_call_count() { g_apply_calls = 0; }

Value q_error(std::span<const Value> targets, std::span<const Value> outputs) {
  if (targets.size() != outputs.size())
    throw std::invalid_argument("q_error: length mismatch");
  Value q = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) q += std::fabs(targets[k] - outputs[k]);
  return q;
}

void FitnessCaseTable::validate() const {
  if (m < 1 || n < 1)
    throw std::invalid_argument("fitness case table: need at least one case and one input");
  if (inputs.size() != static_cast<std::size_t>(m) * n)
    throw std::invalid_argument("fitness case table: input matrix is not m x n");
  if (targets.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("fitness case table: target count differs from m");
  if (algebra == Algebra::boolean) {
    for (Value v : inputs)
      if (!is_boolean_value(v)) throw std::invalid_argument("boolean table holds non-0/1 input");
    for (Value v : targets)
      if (!is_boolean_value(v)) throw std::invalid_argument("boolean table holds non-0/1 target");
  }
}

}  // namespace lsgp
