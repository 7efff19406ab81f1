#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <limits>

#include "doctest.h"
#include "latred/unimodular.hpp"

using namespace latred;

TEST_CASE("checked arithmetic reports overflow instead of wrapping") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(-4, 5) == -20);
  CHECK_THROWS_AS(checked_add(big, 1), Overflow);
  CHECK_THROWS_AS(checked_mul(big, 2), Overflow);
  CHECK_THROWS_AS(checked_neg(std::numeric_limits<std::int64_t>::min()), Overflow);
}

TEST_CASE("identity determinant and verification") {
  const UnimodularMatrix t(4);
  CHECK(t.determinant() == 1);
  CHECK_NOTHROW(t.verify_unimodular());
}

TEST_CASE("elementary operations preserve unimodularity") {
  UnimodularMatrix t(3);
  t.add_multiple_of_column(2, 0, 7);
  t.swap_columns(0, 1);
  t.negate_column(2);
  CHECK(t.determinant() * t.determinant() == 1);
  CHECK_NOTHROW(t.verify_unimodular());
}

TEST_CASE("determinant of a non-unimodular integer matrix") {
  UnimodularMatrix t(2, {2, 0, 0, 1});
  CHECK(t.determinant() == 2);
  CHECK_THROWS_AS(t.verify_unimodular(), NotUnimodular);
}

TEST_CASE("combine_into_column requires a unit self-coefficient") {
  UnimodularMatrix t(3);
  t.combine_into_column(2, {5, -3, 1});
  CHECK(t(0, 2) == 5);
  CHECK(t(1, 2) == -3);
  CHECK(t(2, 2) == 1);
  CHECK_NOTHROW(t.verify_unimodular());
  CHECK_THROWS_AS(t.combine_into_column(0, {2, 0, 0}), Error);
}

TEST_CASE("block right multiplication") {
  UnimodularMatrix t(3);
  t.add_multiple_of_column(1, 0, 4);
  UnimodularMatrix u(2, {0, 1, 1, 0});  // swap
  t.multiply_block_right(1, u);
  CHECK(t(0, 1) == 0);
  CHECK(t(0, 2) == 4);
  CHECK_NOTHROW(t.verify_unimodular());
}

TEST_CASE("matrix-vector product with checked arithmetic") {
  UnimodularMatrix t(2, {1, 2, 3, 5});
  const IntVector y = t.multiply({7, -1});
  CHECK(y[0] == 5);
  CHECK(y[1] == 16);
}

TEST_CASE("integer rank over exact arithmetic") {
  CHECK(integer_rank({{1, 0}, {0, 1}}) == 2);
  CHECK(integer_rank({{2, 4}, {1, 2}}) == 1);
  CHECK(integer_rank({{0, 0, 0}}) == 0);
  CHECK(integer_rank({{3, 1, 0}, {0, 2, 5}, {3, 3, 5}}) == 2);
  CHECK(integer_rank({{3, 1, 0}, {0, 2, 5}, {1, 1, 1}}) == 3);
}

TEST_CASE("gcd helper") {
  CHECK(gcd64(12, 18) == 6);
  CHECK(gcd64(-7, 0) == 7);
  CHECK(gcd64(0, 0) == 0);
  CHECK(gcd64(6, 35) == 1);
}
