#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "unionbound/bound.hpp"
#include "unionbound/conditions.hpp"
#include "unionbound/matrix.hpp"

using namespace unionbound;
using testutil::all_orderings;
using testutil::matrix_n4_series;
using testutil::ref_pattern_count;

namespace {

// All first-order probabilities 0.5; off-diagonals chosen so that the first
// certificate appears only in column 4 (0-based 3), where the column maximum
// is tied between rows 1 and 3 (0-based 0 and 2) and only the second tie
// partner admits a qualifying b.
ProbabilityMatrix tie_matrix() {
  ProbabilityMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i) m.set(i, i, 0.5);
  m.set(0, 1, 0.30);
  m.set(0, 2, 0.25);
  m.set(1, 2, 0.05);
  m.set(0, 3, 0.20);
  m.set(1, 3, 0.15);
  m.set(2, 3, 0.20);
  return m;
}

ProbabilityMatrix product_matrix_n4() {
  return generate_delta({{0.01, 0.025, 0.03, 0.07}, 0.0});
}

}  // namespace

TEST_CASE("first certificate is absent for the optimal series ordering") {
  CHECK_FALSE(condition1(matrix_n4_series(), Ordering::identity(4)).has_value());
}

TEST_CASE("first certificate appears for the reversed series ordering") {
  const auto witness = condition1(matrix_n4_series(), Ordering::parse("4-3-2-1"));
  REQUIRE(witness.has_value());
  CHECK(*witness == Condition1Witness{1, 0, 2});
  // And it keeps its promise: level 2 strictly improves this ordering.
  const auto m = matrix_n4_series();
  CHECK(bound(m, Ordering::parse("4-3-2-1"), 2) < bound(m, Ordering::parse("4-3-2-1"), 1));
}

TEST_CASE("column scan tries every tied column maximum") {
  const auto witness = condition1(tie_matrix(), Ordering::identity(4));
  REQUIRE(witness.has_value());
  CHECK(*witness == Condition1Witness{2, 1, 3});
  CHECK(bound(tie_matrix(), Ordering::identity(4), 2) <
        bound(tie_matrix(), Ordering::identity(4), 1));
}

TEST_CASE("first certificate needs at least three events") {
  ProbabilityMatrix m(2);
  m.set(0, 0, 0.2);
  m.set(1, 1, 0.3);
  CHECK_THROWS_AS(condition1(m, Ordering::identity(2)), std::invalid_argument);
}

TEST_CASE("equal off-diagonals never produce the first certificate") {
  ProbabilityMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i) m.set(i, i, 0.4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m.set(i, j, 0.1);
  for (const auto& sigma : all_orderings(4)) {
    CHECK_FALSE(condition1(m, sigma).has_value());
  }
}

TEST_CASE("first certificate implies a strictly better level 2") {
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto orderings = all_orderings(n);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto m = generate_conditional_uniform(n, seed);
      for (const auto& sigma : orderings) {
        if (condition1(m, sigma).has_value()) {
          CHECK(bound(m, sigma, 2) < bound(m, sigma, 1));
        }
      }
    }
  }
}

TEST_CASE("second certificate holds line by line on the product matrix") {
  const auto m = product_matrix_n4();
  const auto identity = Ordering::identity(4);
  // Both eligible lines carry the level-1 certificate; the scan reports the
  // smaller one.
  CHECK(condition2_at(m, identity, 1, 2));
  CHECK(condition2_at(m, identity, 1, 3));
  const auto witness = condition2_any(m, identity, 1);
  REQUIRE(witness.has_value());
  CHECK(*witness == Condition2Witness{1, 2});
  CHECK(bound(m, identity, 2) < bound(m, identity, 1));
}

TEST_CASE("second certificate fails on the series example") {
  const auto m = matrix_n4_series();
  const auto identity = Ordering::identity(4);
  CHECK_FALSE(condition2_at(m, identity, 1, 3));
  CHECK_FALSE(condition2_at(m, identity, 2, 3));
  CHECK_FALSE(condition2_any(m, identity, 1).has_value());
  CHECK_FALSE(condition2_any(m, identity, 2).has_value());
}

TEST_CASE("independent events never carry the second certificate") {
  ProbabilityMatrix m(5);
  for (std::size_t i = 0; i < 5; ++i) m.set(i, i, 0.2);
  const auto identity = Ordering::identity(5);
  for (std::size_t level = 1; level <= 3; ++level) {
    CHECK_FALSE(condition2_any(m, identity, level).has_value());
  }
}

TEST_CASE("second certificate validates its domain") {
  const auto m = matrix_n4_series();
  const auto identity = Ordering::identity(4);
  CHECK_THROWS_AS(condition2_at(m, identity, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(condition2_at(m, identity, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(condition2_at(m, identity, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(condition2_any(m, identity, 0), std::invalid_argument);
  CHECK_THROWS_AS(condition2_any(m, identity, 4), std::invalid_argument);
  // The top level has no eligible line left: empty scan, no witness.
  CHECK_FALSE(condition2_any(m, identity, 3).has_value());
}

TEST_CASE("second certificate implies a strictly better next level") {
  for (std::size_t n : {4u, 5u}) {
    const auto orderings = all_orderings(n);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      const auto m = generate_conditional_uniform(n, seed);
      for (const auto& sigma : orderings) {
        for (std::size_t level = 1; level + 2 <= n; ++level) {
          if (condition2_any(m, sigma, level).has_value()) {
            CHECK(bound(m, sigma, level + 1) < bound(m, sigma, level));
          }
        }
      }
    }
  }
}

TEST_CASE("certificate-count formula matches hand-checked points") {
  CHECK(count_orderings_condition1(4, 3) == 2);
  CHECK(count_orderings_condition1(4, 4) == 8);
  CHECK(count_orderings_condition1(5, 4) == 10);
  CHECK(count_orderings_condition1(7, 7) == 1680);
}

TEST_CASE("certificate-count formula endpoints") {
  // c = 3 gives 2 (n-3)!; c = n gives n!/3.
  BigInt fact = 1;
  for (int i = 2; i <= 3; ++i) fact *= i;
  CHECK(count_orderings_condition1(6, 3) == 2 * fact);  // 2 * 3!
  BigInt f6 = 1;
  for (int i = 2; i <= 6; ++i) f6 *= i;
  CHECK(count_orderings_condition1(6, 6) == f6 / 3);
  BigInt f25 = 1;
  for (int i = 2; i <= 25; ++i) f25 *= i;
  CHECK(count_orderings_condition1(25, 25) == f25 / 3);
}

TEST_CASE("certificate-count formula matches brute-force placement counts") {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t c = 3; c <= n; ++c) {
      CHECK(count_orderings_condition1(n, c) == ref_pattern_count(n, c));
    }
  }
}

TEST_CASE("certificate-count formula validates its domain") {
  CHECK_THROWS_AS(count_orderings_condition1(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_orderings_condition1(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(count_orderings_condition1(2, 3), std::invalid_argument);
}
