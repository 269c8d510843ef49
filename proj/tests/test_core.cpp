#include <doctest.h>

#include <array>
#include <vector>

#include "lsgp/core.hpp"
#include "lsgp/rng.hpp"
#include "oracles.hpp"

using namespace lsgp;

namespace {
Value apply2(Op op, Value a, Value b) {
  const std::array<Value, 2> args{a, b};
  return apply_symbol(op, args);
}
}  // namespace

TEST_CASE("function symbol metadata") {
  for (Op op : boolean_ops()) {
    CHECK(arity(op) == 2);
    CHECK(algebra(op) == Algebra::boolean);
  }
  CHECK(boolean_ops().size() == 4);
  CHECK(arithmetic_ops().size() == 5);
  CHECK(arity(Op::SIN) == 1);
  CHECK(algebra(Op::DIV) == Algebra::arithmetic);
}

TEST_CASE("apply_symbol boolean identities") {
  CHECK(apply2(Op::AND, 1, 0) == 0.0);
  CHECK(apply2(Op::NAND, 1, 1) == 0.0);

  // NAND/NOR are the negations of AND/OR on all four input pairs
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      CHECK(apply2(Op::NAND, a, b) == 1.0 - apply2(Op::AND, a, b));
      CHECK(apply2(Op::NOR, a, b) == 1.0 - apply2(Op::OR, a, b));
      for (Op op : boolean_ops()) {
        const Value out = apply2(op, a, b);
        CHECK(is_boolean_value(out));
        CHECK(out == static_cast<Value>(oracle::apply_bool(op, a, b)));
      }
    }
}

TEST_CASE("apply_symbol arithmetic") {
  CHECK(apply2(Op::DIV, 5.0, 0.0) == 1.0);  // protected division
  CHECK(apply2(Op::DIV, 6.0, 3.0) == 2.0);
  CHECK(apply2(Op::ADD, 2.5, 0.5) == 3.0);
  CHECK(apply2(Op::SUB, 2.5, 0.5) == 2.0);
  CHECK(apply2(Op::MUL, 2.5, 4.0) == 10.0);
  const std::array<Value, 1> one{0.0};
  CHECK(apply_symbol(Op::SIN, one) == 0.0);
}

TEST_CASE("apply_symbol usage errors") {
  const std::array<Value, 1> one{1.0};
  const std::array<Value, 2> two{1.0, 0.5};
  CHECK_THROWS_AS(apply_symbol(Op::AND, one), std::invalid_argument);
  CHECK_THROWS_AS(apply_symbol(Op::SIN, two), std::invalid_argument);
  CHECK_THROWS_AS(apply_symbol(Op::AND, two), std::invalid_argument);  // 0.5 is not boolean
}

TEST_CASE("apply_symbol call counter") {
  reset_apply_call_count();
  CHECK(apply_call_count() == 0);
  apply2(Op::OR, 0, 1);
  apply2(Op::AND, 1, 1);
  CHECK(apply_call_count() == 2);
  reset_apply_call_count();
}

TEST_CASE("q_error examples") {
  const std::vector<Value> even3_targets{1, 0, 0, 1, 0, 1, 1, 0};

  CHECK(q_error(even3_targets, even3_targets) == 0.0);

  // all-zero output misses exactly the four 1-target rows
  const std::vector<Value> zeros(8, 0.0);
  CHECK(oracle::q(even3_targets, zeros) == 4.0);
  CHECK(q_error(even3_targets, zeros) == 4.0);

  CHECK(q_error(std::vector<Value>{1, 0}, std::vector<Value>{0, 1}) == 2.0);

  CHECK_THROWS_AS(q_error(std::vector<Value>{1}, std::vector<Value>{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("q_error symmetry and identity of indiscernibles") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.index(40);
    std::vector<Value> t(m), o(m);
    for (std::size_t k = 0; k < m; ++k) {
      t[k] = rng.range(-5.0, 5.0);
      o[k] = rng.chance(0.3) ? t[k] : rng.range(-5.0, 5.0);
    }
    const Value q = q_error(t, o);
    CHECK(q >= 0.0);
    CHECK(q == q_error(o, t));
    CHECK(q == oracle::q(t, o));
    if (t == o) CHECK(q == 0.0);
    if (q == 0.0) CHECK(t == o);
  }
}

TEST_CASE("fitness case table validation") {
  FitnessCaseTable table;
  table.n = 2;
  table.m = 2;
  table.inputs = {0, 1, 1, 0};
  table.targets = {0, 0};
  CHECK_NOTHROW(table.validate());

  FitnessCaseTable bad = table;
  bad.targets = {0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = table;
  bad.inputs[2] = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = table;
  bad.m = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
