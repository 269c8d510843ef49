#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsgp/core.hpp"
#include "lsgp/rng.hpp"

namespace lsgp {

// Expression tree stored as a preorder code string. Codes >= 0 are terminal
// indices; codes < 0 are function symbols (decode with ~code). Subtrees are
// contiguous slices, which makes subtree crossover a splice.
struct GpTree {
  std::vector<std::int32_t> code;

  std::size_t size() const { return code.size(); }
  bool operator==(const GpTree&) const = default;
};

inline std::int32_t encode_op(Op op) { return ~static_cast<std::int32_t>(op); }
inline bool is_op_code(std::int32_t code) { return code < 0; }
inline Op decode_op(std::int32_t code) { return static_cast<Op>(~code); }

GpTree leaf(int terminal_index);

// One past the last node of the subtree rooted at pos.
std::size_t subtree_end(const GpTree& tree, std::size_t pos);

// Number of nodes on the longest root-to-leaf path; a lone leaf has height 1.
int tree_height(const GpTree& tree);

// Throws std::invalid_argument if any node is malformed or any leaf index
// falls outside [0, terminal_count).
void check_tree(const GpTree& tree, int terminal_count);

// Infix rendering, e.g. "NAND(x1, AND(x2, x3))". Leaves print as
// terminal_names[index] when provided, else "t<index>".
std::string to_string(const GpTree& tree, std::span<const std::string> terminal_names = {});

enum class InitMethod { grow, full };

// Random tree over terminal_count leaves. full puts every leaf at exactly the
// target depth; grow may stop a branch early by drawing a terminal. depth >= 1.
GpTree random_tree(const FunctionSet& function_set, int terminal_count, InitMethod method,
                   int depth, Rng& rng);

// Replaces the subtree of a at pos_a with the subtree of b at pos_b.
GpTree crossover_at(const GpTree& a, const GpTree& b, std::size_t pos_a, std::size_t pos_b);

// Subtree crossover at uniformly random nodes of both parents. Offspring
// taller than max_height are discarded in favor of a copy of a.
GpTree crossover(const GpTree& a, const GpTree& b, int max_height, Rng& rng);

// Replaces a uniformly random node with a fresh grow tree (depth <= 4), with
// the same height-limit fallback as crossover.
GpTree mutate(const GpTree& tree, const FunctionSet& function_set, int terminal_count,
              int max_height, Rng& rng);

// Evaluates the tree once per fitness case with leaf i reading terminals[i].
// All terminal vectors must share one length.
BehaviorVector eval_tree(const GpTree& tree, std::span<const BehaviorVector> terminals);

namespace detail {
// Single-case evaluation; the tree must already be checked against the
// terminal set.
Value eval_case(const GpTree& tree, std::span<const BehaviorVector> terminals, std::size_t k);
}

}  // namespace lsgp
