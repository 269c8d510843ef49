#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "lsgp/core.hpp"
#include "lsgp/tree.hpp"

namespace lsgp {

// Boolean behavior vector packed one bit per fitness case, least significant
// bit first. Bits at positions >= m in the last word are always zero, so
// whole-vector comparisons and popcounts need no special casing. The word
// width is a template parameter; tests force narrow words to hit boundary
// cases cheaply.
template <std::unsigned_integral Word = std::uint64_t>
struct BasicPackedVector {
  static constexpr int word_bits = std::numeric_limits<Word>::digits;

  std::vector<Word> words;
  std::size_t bits = 0;  // logical length m

  static std::size_t words_for(std::size_t m) {
    return (m + word_bits - 1) / static_cast<std::size_t>(word_bits);
  }

  // Mask selecting the live bits of the final word.
  static Word last_word_mask(std::size_t m) {
    const std::size_t rem = m % word_bits;
    return rem == 0 ? ~Word{0} : static_cast<Word>((Word{1} << rem) - 1);
  }

  bool get(std::size_t k) const {
    return (words[k / word_bits] >> (k % word_bits)) & Word{1};
  }

  bool canonical() const {
    if (bits == 0) return words.empty();
    if (words.size() != words_for(bits)) return false;
    return (words.back() & ~last_word_mask(bits)) == 0;
  }

  bool operator==(const BasicPackedVector&) const = default;
};

using PackedVector = BasicPackedVector<std::uint64_t>;

template <std::unsigned_integral Word = std::uint64_t>
BasicPackedVector<Word> pack(const BehaviorVector& v) {
  BasicPackedVector<Word> out;
  out.bits = v.size();
  out.words.assign(BasicPackedVector<Word>::words_for(v.size()), Word{0});
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!is_boolean_value(v[k])) throw std::invalid_argument("pack: non-boolean entry");
    if (v[k] == 1.0)
      out.words[k / BasicPackedVector<Word>::word_bits] |=
          Word{1} << (k % BasicPackedVector<Word>::word_bits);
  }
  return out;
}

template <std::unsigned_integral Word>
BehaviorVector unpack(const BasicPackedVector<Word>& p) {
  BehaviorVector out(p.bits);
  for (std::size_t k = 0; k < p.bits; ++k) out[k] = p.get(k) ? 1.0 : 0.0;
  return out;
}

namespace detail {

template <std::unsigned_integral Word>
void packed_apply_into(Op op, std::span<const Word> a, std::span<const Word> b, Word mask,
                       std::span<Word> out) {
  const std::size_t n = out.size();
  switch (op) {
    case Op::AND:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
      break;
    case Op::OR:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
      break;
    case Op::NAND:
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Word>(~(a[i] & b[i]));
      if (n > 0) out[n - 1] &= mask;
      break;
    case Op::NOR:
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Word>(~(a[i] | b[i]));
      if (n > 0) out[n - 1] &= mask;
      break;
    default:
      throw std::invalid_argument("packed evaluation supports boolean symbols only");
  }
}

}  // namespace detail

// Word-parallel symbol application; semantics match apply_symbol elementwise.
template <std::unsigned_integral Word>
BasicPackedVector<Word> packed_apply(Op op, std::span<const BasicPackedVector<Word>> args) {
  if (static_cast<int>(args.size()) != arity(op))
    throw std::invalid_argument("packed_apply: arity mismatch");
  if (algebra(op) != Algebra::boolean)
    throw std::invalid_argument("packed_apply: non-boolean symbol");
  for (const auto& a : args)
    if (a.bits != args[0].bits) throw std::invalid_argument("packed_apply: length mismatch");

  BasicPackedVector<Word> out;
  out.bits = args[0].bits;
  out.words.assign(args[0].words.size(), Word{0});
  detail::packed_apply_into<Word>(op, args[0].words, args.back().words,
                                  BasicPackedVector<Word>::last_word_mask(out.bits), out.words);
  return out;
}

// Q between two canonical packed vectors: popcount of the XOR.
template <std::unsigned_integral Word>
Value packed_q(const BasicPackedVector<Word>& targets, const BasicPackedVector<Word>& outputs) {
  if (targets.bits != outputs.bits) throw std::invalid_argument("packed_q: length mismatch");
  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < targets.words.size(); ++i)
    mismatches += static_cast<std::uint64_t>(std::popcount(targets.words[i] ^ outputs.words[i]));
  return static_cast<Value>(mismatches);
}

// Tree fitness over packed terminals; equals the plain fitness exactly.
template <std::unsigned_integral Word>
Value packed_fitness(const GpTree& tree, std::span<const BasicPackedVector<Word>> terminals,
                     const BasicPackedVector<Word>& targets) {
  check_tree(tree, static_cast<int>(terminals.size()));
  for (const auto& t : terminals)
    if (t.bits != targets.bits) throw std::invalid_argument("packed_fitness: length mismatch");

  const std::size_t wc = targets.words.size();
  const Word mask = BasicPackedVector<Word>::last_word_mask(targets.bits);

  // One scratch row per tree level: a node evaluates into its own row, its
  // second child into the row below, and the combine happens in place.
  std::vector<Word> rows(static_cast<std::size_t>(tree_height(tree) + 1) * wc);
  struct Walker {
    const std::int32_t* code;
    std::span<const BasicPackedVector<Word>> terminals;
    Word* rows;
    std::size_t wc;
    Word mask;
    std::size_t pos = 0;

    void eval(std::size_t level) {
      Word* out = rows + level * wc;
      const std::int32_t c = code[pos++];
      if (!is_op_code(c)) {
        const auto& words = terminals[c].words;
        for (std::size_t i = 0; i < wc; ++i) out[i] = words[i];
        return;
      }
      const Op op = decode_op(c);
      eval(level);
      if (arity(op) == 2) {
        eval(level + 1);
        const Word* b = rows + (level + 1) * wc;
        detail::packed_apply_into<Word>(op, {out, wc}, {b, wc}, mask, {out, wc});
      } else {
        detail::packed_apply_into<Word>(op, {out, wc}, {out, wc}, mask, {out, wc});
      }
    }
  };

  Walker walker{tree.code.data(), terminals, rows.data(), wc, mask};
  walker.eval(0);

  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < wc; ++i)
    mismatches += static_cast<std::uint64_t>(std::popcount(rows[i] ^ targets.words[i]));
  return static_cast<Value>(mismatches);
}

}  // namespace lsgp
