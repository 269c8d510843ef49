#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "lsgp/harness.hpp"
#include "lsgp/problems.hpp"
#include "oracles.hpp"

using namespace lsgp;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "lsgp_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("even-3 parity matches the published truth table") {
  const FitnessCaseTable t = make_parity({3});
  REQUIRE(t.n == 3);
  REQUIRE(t.m == 8);

  const int rows[8][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                          {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  const int outputs[8] = {1, 0, 0, 1, 0, 1, 1, 0};
  for (int k = 0; k < 8; ++k) {
    for (int j = 0; j < 3; ++j) CHECK(t.input(k, j) == static_cast<Value>(rows[k][j]));
    CHECK(t.targets[k] == static_cast<Value>(outputs[k]));
  }
}

TEST_CASE("small parity instances") {
  const FitnessCaseTable one = make_parity({1});
  CHECK(one.m == 2);
  CHECK(one.targets == std::vector<Value>{1, 0});

  // derived by enumerating the four rows of the parity definition
  const FitnessCaseTable two = make_parity({2});
  CHECK(two.targets == std::vector<Value>{1, 0, 0, 1});
}

TEST_CASE("parity tables agree with the odometer oracle up to k = 6") {
  for (int k = 1; k <= 6; ++k) {
    const auto expected = oracle::parity_table(k);
    const FitnessCaseTable t = make_parity({k});
    REQUIRE(t.m == static_cast<int>(expected.rows.size()));
    for (int r = 0; r < t.m; ++r) {
      for (int j = 0; j < k; ++j)
        CHECK(t.input(r, j) == static_cast<Value>(expected.rows[r][j]));
      CHECK(t.targets[r] == static_cast<Value>(expected.outputs[r]));
    }
  }
}

TEST_CASE("parity structural properties") {
  for (int k = 1; k <= 6; ++k) {
    const FitnessCaseTable t = make_parity({k});
    CHECK(t.m == (1 << k));
    CHECK(t.targets[0] == 1.0);  // the all-zeros row has an even (zero) count

    std::set<std::vector<Value>> distinct;
    for (int r = 0; r < t.m; ++r) {
      std::vector<Value> row(t.n);
      for (int j = 0; j < k; ++j) row[j] = t.input(r, j);
      distinct.insert(row);
    }
    CHECK(static_cast<int>(distinct.size()) == t.m);

    // flipping any single bit of any row flips the target
    for (int r = 0; r < t.m; ++r)
      for (int j = 0; j < k; ++j) {
        const int flipped = r ^ (1 << (k - 1 - j));
        CHECK(t.targets[r] == 1.0 - t.targets[flipped]);
      }
  }
}

TEST_CASE("parity arity bounds") {
  CHECK_THROWS_AS(make_parity({0}), std::invalid_argument);
  CHECK_THROWS_AS(make_parity({21}), std::invalid_argument);
  CHECK_NOTHROW(make_parity({10}));
}

TEST_CASE("regression csv loading") {
  const auto path = temp_file("basic.csv");

  SUBCASE("single row") {
    std::ofstream(path) << "1.0,2.0,3.0\n";
    const FitnessCaseTable t = load_regression_csv(path, 2);
    CHECK(t.m == 1);
    CHECK(t.n == 2);
    CHECK(t.input(0, 0) == 1.0);
    CHECK(t.input(0, 1) == 2.0);
    CHECK(t.targets[0] == 3.0);
    CHECK(t.algebra == Algebra::arithmetic);
  }

  SUBCASE("header line and CRLF endings") {
    std::ofstream(path) << "x,y\r\n0.5,1.5\r\n-0.25,7\r\n";
    const FitnessCaseTable t = load_regression_csv(path, 1);
    CHECK(t.m == 2);
    CHECK(t.input(1, 0) == -0.25);
    CHECK(t.targets[1] == 7.0);
  }

  SUBCASE("empty file is a data error") {
    std::ofstream(path) << "";
    CHECK_THROWS_AS(load_regression_csv(path, 1), std::runtime_error);
  }

  SUBCASE("malformed row reports its line number") {
    std::ofstream(path) << "1,2\n3,oops\n";
    try {
      load_regression_csv(path, 1);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }

  SUBCASE("wrong column count reports its line number") {
    std::ofstream(path) << "1,2\n3,4,5\n";
    try {
      load_regression_csv(path, 1);
      FAIL("expected a column-count error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }

  SUBCASE("non-finite value is a data error") {
    std::ofstream(path) << "1,inf\n";
    CHECK_THROWS_AS(load_regression_csv(path, 1), std::runtime_error);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_regression_csv(temp_file("nope.csv"), 1), std::runtime_error);
  }
}

TEST_CASE("quartic generation and exact csv round-trip") {
  Rng rng(42);
  const FitnessCaseTable t = make_quartic(20, rng);
  REQUIRE(t.m == 20);
  REQUIRE(t.n == 1);
  for (int k = 0; k < t.m; ++k) {
    const Value x = t.input(k, 0);
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
    CHECK(t.targets[k] == quartic_poly(x));
  }
  CHECK(quartic_poly(0.0) == 0.0);
  CHECK(quartic_poly(1.0) == 4.0);
  CHECK(quartic_poly(-1.0) == 0.0);

  // write with shortest round-trip formatting, read back, compare exactly
  const auto path = temp_file("quartic.csv");
  {
    std::ofstream out(path);
    for (int k = 0; k < t.m; ++k)
      out << format_double(t.input(k, 0)) << ',' << format_double(t.targets[k]) << '\n';
  }
  const FitnessCaseTable back = load_regression_csv(path, 1);
  CHECK(back.inputs == t.inputs);
  CHECK(back.targets == t.targets);
}
