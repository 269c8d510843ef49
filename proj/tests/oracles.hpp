// Reference implementations used as test oracles. Everything here is written
// independently of the library's evaluation paths: plain loops, explicit
// truth tables, and a private tree representation for exhaustive enumeration.
#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "lsgp/core.hpp"

namespace oracle {

// Boolean symbol semantics by explicit truth logic.
inline int apply_bool(lsgp::Op op, int a, int b) {
  switch (op) {
    case lsgp::Op::AND: return (a == 1 && b == 1) ? 1 : 0;
    case lsgp::Op::OR: return (a == 1 || b == 1) ? 1 : 0;
    case lsgp::Op::NAND: return (a == 1 && b == 1) ? 0 : 1;
    case lsgp::Op::NOR: return (a == 1 || b == 1) ? 0 : 1;
    default: return -1;
  }
}

inline double q(const std::vector<double>& targets, const std::vector<double>& outputs) {
  double sum = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) sum += std::fabs(targets[k] - outputs[k]);
  return sum;
}

// Even-parity truth table built as a binary odometer, counting ones by
// summation rather than popcount.
struct ParityTable {
  int k = 0;
  std::vector<std::vector<int>> rows;  // ascending binary, first input most significant
  std::vector<int> outputs;            // 1 iff the row holds an even number of ones
};

inline ParityTable parity_table(int k) {
  ParityTable table;
  table.k = k;
  std::vector<int> row(k, 0);
  for (;;) {
    int ones = 0;
    for (int bit : row) ones += bit;
    table.rows.push_back(row);
    table.outputs.push_back(ones % 2 == 0 ? 1 : 0);
    int pos = k - 1;
    while (pos >= 0 && row[pos] == 1) row[pos--] = 0;
    if (pos < 0) break;
    row[pos] = 1;
  }
  return table;
}

// Minimal expression tree for exhaustive enumeration, separate from GpTree.
struct Expr {
  int terminal = -1;  // leaf when >= 0
  lsgp::Op op = lsgp::Op::AND;
  std::shared_ptr<Expr> left, right;
};

inline std::shared_ptr<Expr> expr_leaf(int terminal) {
  auto e = std::make_shared<Expr>();
  e->terminal = terminal;
  return e;
}

inline std::shared_ptr<Expr> expr_node(lsgp::Op op, std::shared_ptr<Expr> l,
                                       std::shared_ptr<Expr> r) {
  auto e = std::make_shared<Expr>();
  e->terminal = -1;
  e->op = op;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

inline int eval_expr(const Expr& e, const std::vector<int>& inputs) {
  if (e.terminal >= 0) return inputs[e.terminal];
  return apply_bool(e.op, eval_expr(*e.left, inputs), eval_expr(*e.right, inputs));
}

// All boolean trees over the given terminals with height at most max_height.
inline std::vector<std::shared_ptr<Expr>> enumerate_trees(int terminal_count, int max_height,
                                                          const std::vector<lsgp::Op>& ops) {
  std::vector<std::shared_ptr<Expr>> current;
  for (int t = 0; t < terminal_count; ++t) current.push_back(expr_leaf(t));
  for (int h = 2; h <= max_height; ++h) {
    std::vector<std::shared_ptr<Expr>> next = current;  // height <= h includes height <= h-1
    for (lsgp::Op op : ops)
      for (const auto& l : current)
        for (const auto& r : current) next.push_back(expr_node(op, l, r));
    current = std::move(next);
  }
  return current;
}

}  // namespace oracle
