#include "lsgp/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsgp {

GpTree leaf(int terminal_index) { return GpTree{{terminal_index}}; }

std::size_t subtree_end(const GpTree& tree, std::size_t pos) {
  std::size_t open = 1;
  std::size_t i = pos;
  while (open > 0) {
    const std::int32_t c = tree.code[i];
    open += is_op_code(c) ? static_cast<std::size_t>(arity(decode_op(c))) : 0;
    --open;
    ++i;
  }
  return i;
}

int tree_height(const GpTree& tree) {
  int best = 0;
  std::vector<int> remaining;  // unfinished children per open internal node
  for (const std::int32_t c : tree.code) {
    best = std::max(best, static_cast<int>(remaining.size()) + 1);
    if (is_op_code(c)) {
      remaining.push_back(arity(decode_op(c)));
    } else {
      while (!remaining.empty() && --remaining.back() == 0) remaining.pop_back();
    }
  }
  return best;
}

void check_tree(const GpTree& tree, int terminal_count) {
  if (tree.code.empty()) throw std::invalid_argument("tree: empty code string");
  std::size_t open = 1;
  for (const std::int32_t c : tree.code) {
    if (open == 0) throw std::invalid_argument("tree: trailing nodes after the root subtree");
    if (is_op_code(c)) {
      open += static_cast<std::size_t>(arity(decode_op(c)));
    } else if (c >= terminal_count) {
      throw std::invalid_argument("tree: leaf index " + std::to_string(c) + " outside [0, " +
                                  std::to_string(terminal_count) + ")");
    }
    --open;
  }
  if (open != 0) throw std::invalid_argument("tree: incomplete code string");
}

namespace {

void render(const GpTree& tree, std::size_t& pos, std::span<const std::string> names,
            std::string& out) {
  const std::int32_t c = tree.code[pos++];
  if (!is_op_code(c)) {
    if (static_cast<std::size_t>(c) < names.size())
      out += names[c];
    else
      out += "t" + std::to_string(c);
    return;
  }
  const Op op = decode_op(c);
  out += op_name(op);
  out += '(';
  for (int a = 0; a < arity(op); ++a) {
    if (a > 0) out += ", ";
    render(tree, pos, names, out);
  }
  out += ')';
}

void grow_into(GpTree& tree, const FunctionSet& set, int terminal_count, InitMethod method,
               int depth, Rng& rng) {
  if (depth <= 1) {
    tree.code.push_back(static_cast<std::int32_t>(rng.below(terminal_count)));
    return;
  }
  Op op;
  if (method == InitMethod::grow) {
    // one draw over terminals + symbols decides both kind and identity
    const std::size_t pick = rng.index(terminal_count + set.size());
    if (pick < static_cast<std::size_t>(terminal_count)) {
      tree.code.push_back(static_cast<std::int32_t>(pick));
      return;
    }
    op = set[pick - terminal_count];
  } else {
    op = set[rng.index(set.size())];
  }
  tree.code.push_back(encode_op(op));
  for (int a = 0; a < arity(op); ++a) grow_into(tree, set, terminal_count, method, depth - 1, rng);
}

}  // namespace

std::string to_string(const GpTree& tree, std::span<const std::string> terminal_names) {
  std::string out;
  std::size_t pos = 0;
  render(tree, pos, terminal_names, out);
  return out;
}

GpTree random_tree(const FunctionSet& function_set, int terminal_count, InitMethod method,
                   int depth, Rng& rng) {
  if (terminal_count < 1) throw std::invalid_argument("random_tree: need at least one terminal");
  if (depth < 1) throw std::invalid_argument("random_tree: depth must be >= 1");
  if (function_set.empty() && depth > 1)
    throw std::invalid_argument("random_tree: empty function set");
  GpTree tree;
  grow_into(tree, function_set, terminal_count, method, depth, rng);
  return tree;
}

GpTree crossover_at(const GpTree& a, const GpTree& b, std::size_t pos_a, std::size_t pos_b) {
  const std::size_t a_end = subtree_end(a, pos_a);
  const std::size_t b_end = subtree_end(b, pos_b);
  GpTree child;
  child.code.reserve(a.size() - (a_end - pos_a) + (b_end - pos_b));
  child.code.insert(child.code.end(), a.code.begin(), a.code.begin() + pos_a);
  child.code.insert(child.code.end(), b.code.begin() + pos_b, b.code.begin() + b_end);
  child.code.insert(child.code.end(), a.code.begin() + a_end, a.code.end());
  return child;
}

GpTree crossover(const GpTree& a, const GpTree& b, int max_height, Rng& rng) {
  const std::size_t pos_a = rng.index(a.size());
  const std::size_t pos_b = rng.index(b.size());
  GpTree child = crossover_at(a, b, pos_a, pos_b);
  if (tree_height(child) > max_height) return a;
  return child;
}

GpTree mutate(const GpTree& tree, const FunctionSet& function_set, int terminal_count,
              int max_height, Rng& rng) {
  constexpr int kReplacementDepth = 4;
  const std::size_t pos = rng.index(tree.size());
  const GpTree replacement =
      random_tree(function_set, terminal_count, InitMethod::grow, kReplacementDepth, rng);
  GpTree child = crossover_at(tree, replacement, pos, 0);
  if (tree_height(child) > max_height) return tree;
  return child;
}

namespace {

Value eval_walk(const std::int32_t* code, std::size_t& pos,
                std::span<const BehaviorVector> terminals, std::size_t k) {
  const std::int32_t c = code[pos++];
  if (!is_op_code(c)) return terminals[c][k];
  const Op op = decode_op(c);
  Value args[2];
  for (int a = 0; a < arity(op); ++a) args[a] = eval_walk(code, pos, terminals, k);
  return detail::apply_unchecked(op, args);
}

}  // namespace

BehaviorVector eval_tree(const GpTree& tree, std::span<const BehaviorVector> terminals) {
  check_tree(tree, static_cast<int>(terminals.size()));
  const std::size_t m = terminals.empty() ? 0 : terminals[0].size();
  BehaviorVector out(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pos = 0;
    out[k] = eval_walk(tree.code.data(), pos, terminals, k);
  }
  return out;
}

Value detail::eval_case(const GpTree& tree, std::span<const BehaviorVector> terminals,
                        std::size_t k) {
  std::size_t pos = 0;
  return eval_walk(tree.code.data(), pos, terminals, k);
}

}  // namespace lsgp
