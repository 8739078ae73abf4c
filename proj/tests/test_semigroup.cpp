#include "doctest.h"
#include "semiq/error.hpp"
#include "semiq/semigroup.hpp"
#include "support.hpp"

using namespace semiq;
using semiq::testing::thrown_kind;

namespace {

std::vector<Int> to_vec(std::span<const Int> s) { return {s.begin(), s.end()}; }

GeneratorList gl(std::vector<Int> v) { return GeneratorList::validate(v); }

}  // namespace

TEST_SUITE("semigroup") {

TEST_CASE("arith helpers reject overflow and inexact division") {
  CHECK(arith::floor_div(-7, 2) == -4);
  CHECK(arith::ceil_div(-7, 2) == -3);
  CHECK(arith::ceil_div(7, 2) == 4);
  CHECK(arith::mod(-1, 5) == 4);
  CHECK(thrown_kind([] { (void)arith::mul(Int{1} << 40, Int{1} << 40); }) == ErrorKind::Overflow);
  CHECK(thrown_kind([] { (void)arith::add(INT64_MAX, 1); }) == ErrorKind::Overflow);
  CHECK(thrown_kind([] { (void)arith::exact_div(7, 2, "test"); }) == ErrorKind::NonIntegerResult);
  CHECK(arith::exact_div(-8, 2, "test") == -4);
}

TEST_CASE("validate sorts and deduplicates") {
  CHECK(to_vec(gl({5, 3, 3}).gens()) == std::vector<Int>{3, 5});
  CHECK(to_vec(gl({84, 353, 454, 555, 656}).gens()) == std::vector<Int>{84, 353, 454, 555, 656});
  CHECK(to_vec(gl({1}).gens()) == std::vector<Int>{1});
}

TEST_CASE("validate errors name the constraint") {
  try {
    gl({4, 6});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GcdNotOne);
    CHECK(e.detail() == 2);
    CHECK(std::string(e.what()).find("gcd is 2") != std::string::npos);
  }
  CHECK(thrown_kind([] { gl({}); }) == ErrorKind::EmptyInput);
  CHECK(thrown_kind([] { gl({0, 3}); }) == ErrorKind::NonPositiveEntry);
  CHECK(thrown_kind([] { gl({-3, 5}); }) == ErrorKind::NonPositiveEntry);
}

TEST_CASE("membership") {
  const auto A = gl({3, 5});
  CHECK_FALSE(is_member(A, 7));
  CHECK(is_member(A, 8));
  CHECK_FALSE(is_member(A, -3));
  for (const auto& v : {std::vector<Int>{3, 5}, {2, 3}, {7, 11, 13}, {1}}) CHECK(is_member(gl(v), 0));
}

TEST_CASE("Apery tables") {
  CHECK(to_vec(apery_set(gl({3, 5}), 3).entries()) == std::vector<Int>{0, 10, 5});
  CHECK(to_vec(apery_set(gl({3, 5}), 5).entries()) == std::vector<Int>{0, 6, 12, 3, 9});
  CHECK(to_vec(apery_set(gl({2, 3}), 2).entries()) == std::vector<Int>{0, 3});
  CHECK(thrown_kind([] { apery_set(gl({3, 5}), 4); }) == ErrorKind::NotAGenerator);

  // The table w.r.t. a non-minimal generator gives the same invariants.
  const auto A = gl({33, 137, 147, 157});
  CHECK(invariants_from_apery(apery_set(A, 33)) == InvariantPair{1183, 592});
  CHECK(invariants_from_apery(apery_set(A, 147)) == InvariantPair{1183, 592});
}

TEST_CASE("invariants read off a table") {
  const auto t35 = apery_set(gl({3, 5}), 3);
  CHECK(frobenius_from_apery(t35) == 7);
  CHECK(genus_from_apery(t35) == 4);
  const AperyTable naturals(1, {0});
  CHECK(frobenius_from_apery(naturals) == -1);
  CHECK(genus_from_apery(naturals) == 0);
  const auto t23 = apery_set(gl({2, 3}), 2);
  CHECK(frobenius_from_apery(t23) == 1);
  CHECK(genus_from_apery(t23) == 1);
  CHECK(invariants(gl({86, 457, 466, 475, 484})) == InvariantPair{7156, 3723});
}

TEST_CASE("malformed tables are rejected") {
  CHECK(thrown_kind([] { AperyTable(3, {0, 5, 5}); }) == ErrorKind::InvalidTable);
  CHECK(thrown_kind([] { AperyTable(3, {3, 1, 2}); }) == ErrorKind::InvalidTable);
  CHECK(thrown_kind([] { AperyTable(3, {0, 1}); }) == ErrorKind::InvalidTable);
  CHECK(thrown_kind([] { AperyTable(3, {0, -2, 2}); }) == ErrorKind::InvalidTable);
  CHECK(thrown_kind([] { AperyTable(0, {}); }) == ErrorKind::InvalidTable);
}

TEST_CASE("two-generator closed form") {
  CHECK(sylvester_two(3, 5) == InvariantPair{7, 4});
  CHECK(sylvester_two(2, 3) == InvariantPair{1, 1});
  CHECK(sylvester_two(1, 7) == InvariantPair{-1, 0});
  CHECK(thrown_kind([] { sylvester_two(4, 6); }) == ErrorKind::NotCoprime);
  for (Int a = 1; a <= 25; ++a) {
    for (Int b = 1; b <= 25; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const std::vector<Int> v{a, b};
      CHECK(sylvester_two(a, b) == invariants(gl(v)));
    }
  }
}

TEST_CASE("error kinds render with stable names") {
  CHECK(to_string(ErrorKind::Overflow) == "OverflowError");
  CHECK(to_string(ErrorKind::InternalBound) == "InternalBoundError");
  CHECK(to_string(ErrorKind::GcdNotOne) == "GcdNotOne");
  CHECK(to_string(ErrorKind::TPrimeOdd) == "TPrimeOdd");
}

}  // TEST_SUITE
