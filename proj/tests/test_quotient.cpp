#include <numeric>

#include "doctest.h"
#include "semiq/quotient.hpp"
#include "support.hpp"

using namespace semiq;
using semiq::testing::thrown_kind;

namespace {

GeneratorList gl(std::vector<Int> v) { return GeneratorList::validate(v); }

std::vector<Int> to_vec(std::span<const Int> s) { return {s.begin(), s.end()}; }

const std::vector<Int> kAap84{84, 353, 454, 555, 656};

}  // namespace

TEST_SUITE("quotient") {

TEST_CASE("quotient membership") {
  CHECK(quotient_member(QuotientSpec(gl({3, 5}), 2), 4));
  CHECK_FALSE(quotient_member(QuotientSpec(gl({3, 5}), 1), 7));
  CHECK_FALSE(quotient_member(QuotientSpec(gl({3, 5}), 2), -1));
  // 8 is in <3,5>, so the quotient by 8 is all of N.
  const QuotientSpec everything(gl({3, 5}), 8);
  for (Int x = 0; x <= 60; ++x) CHECK(quotient_member(everything, x));
}

TEST_CASE("QuotientSpec checks its anchor and p") {
  CHECK(QuotientSpec(gl({5, 3}), 3).anchor() == 3);
  CHECK(QuotientSpec(gl({3, 5}), 5, 5).p_divides_anchor());
  CHECK_FALSE(QuotientSpec(gl({3, 5}), 2).p_divides_anchor());
  CHECK(thrown_kind([] { QuotientSpec(gl({3, 5}), 1, 4); }) == ErrorKind::NotAGenerator);
  CHECK(thrown_kind([] { QuotientSpec(gl({3, 5}), 0); }) == ErrorKind::NonPositiveEntry);
}

TEST_CASE("quotient Apery tables") {
  const auto whole = quotient_apery(QuotientSpec(gl({3, 5}), 3));
  CHECK(whole.modulus() == 1);
  CHECK(to_vec(whole.entries()) == std::vector<Int>{0});

  const auto t14 = quotient_apery(QuotientSpec(gl(kAap84), 14));
  CHECK(to_vec(t14.entries()) == std::vector<Int>{0, 829, 656, 501, 328, 173});
  CHECK(invariants_from_apery(t14) == InvariantPair{823, 412});

  const auto t21 = quotient_apery(QuotientSpec(gl(kAap84), 21));
  CHECK(frobenius_from_apery(t21) == 491);
  CHECK(genus_from_apery(t21) == 249);

  const auto t11 = quotient_apery(QuotientSpec(gl({33, 137, 147, 157}), 11));
  CHECK(to_vec(t11.entries()) == std::vector<Int>{0, 82, 41});

  CHECK(quotient_invariants(QuotientSpec(gl({1120, 7831, 7849}), 28)) == InvariantPair{156580, 78376});
  CHECK(thrown_kind([] { quotient_apery(QuotientSpec(gl({3, 5}), 2)); }) == ErrorKind::DivisorMismatch);
}

TEST_CASE("quotient invariants") {
  CHECK(quotient_invariants(QuotientSpec(gl({86, 457, 466, 475, 484}), 43)) == InvariantPair{87, 44});
  CHECK(quotient_invariants(QuotientSpec(gl({3, 5}), 3)) == InvariantPair{-1, 0});
  CHECK(quotient_invariants(QuotientSpec(gl({7, 9, 11}), 7)) == InvariantPair{-1, 0});
  CHECK(quotient_invariants(QuotientSpec(gl({3, 5}), 1)) == InvariantPair{7, 4});
  // Anchor other than the smallest generator.
  CHECK(quotient_invariants(QuotientSpec(gl({4, 15}), 5, 15)) == InvariantPair{5, 3});
}

TEST_CASE("two-generator quotient closed form") {
  CHECK(two_gen_quotient(15, 4, 5) == InvariantPair{5, 3});
  CHECK(two_gen_quotient(6, 5, 6) == InvariantPair{-1, 0});
  for (Int a1 = 1; a1 <= 20; ++a1) {
    for (Int a2 = 1; a2 <= 20; ++a2) {
      if (std::gcd(a1, a2) == 1) CHECK(two_gen_quotient(a1, a2, 1) == sylvester_two(a1, a2));
    }
  }
  CHECK(thrown_kind([] { two_gen_quotient(4, 6, 2); }) == ErrorKind::NotCoprime);
  CHECK(thrown_kind([] { two_gen_quotient(15, 4, 4); }) == ErrorKind::DivisorMismatch);
}

TEST_CASE("min-coins values") {
  const std::vector<Int> B{1, 2, 3, 4};
  CHECK(ob_solve(B, 10) == 3);
  CHECK(ob_solve(B, 7) == 2);
  CHECK(ob_solve(std::vector<Int>{3, 5}, 1) == std::nullopt);
  CHECK(ob_solve(std::vector<Int>{3, 5}, 7) == std::nullopt);
  CHECK(ob_solve(std::vector<Int>{3, 5}, 8) == 2);
  for (const auto& coins : {std::vector<Int>{1}, {2, 7}, {3, 5, 11}}) CHECK(ob_solve(coins, 0) == 0);
}

TEST_CASE("OBTable contract") {
  OBTable table(std::vector<Int>{4, 1, 4, 3});
  CHECK(to_vec(table.coins()) == std::vector<Int>{1, 3, 4});
  CHECK(table.value(6) == 2);
  CHECK(table.limit() >= 6);
  CHECK(table.values()[0] == 0);

  const auto w = table.witness(10);
  REQUIRE(w);
  Int parts = 0, total = 0;
  for (std::size_t i = 0; i < w->size(); ++i) {
    parts += (*w)[i];
    total += (*w)[i] * table.coins()[i];
  }
  CHECK(total == 10);
  CHECK(parts == table.value(10));
  // Largest coin first: 10 = 4 + 3 + 3.
  CHECK(*w == std::vector<Int>{0, 2, 1});

  OBTable gaps(std::vector<Int>{2, 4});
  CHECK(gaps.value(5) == std::nullopt);
  CHECK(gaps.witness(5) == std::nullopt);
  CHECK(gaps.values()[5] == OBTable::kInfeasible);

  CHECK(thrown_kind([&] { table.value(-1); }) == ErrorKind::ConstraintViolation);
  CHECK(thrown_kind([] { OBTable(std::vector<Int>{}); }) == ErrorKind::EmptyInput);
  CHECK(thrown_kind([] { OBTable(std::vector<Int>{0, 1}); }) == ErrorKind::NonPositiveEntry);
}

TEST_CASE("structured families") {
  const StructuredFamily fam(84, 3, 101, {1, 2, 3, 4});
  CHECK(fam.raw_generators() == kAap84);
  CHECK(fam.generators() == gl(kAap84));

  const auto decomposed = StructuredFamily::decompose(gl(kAap84), 84);
  // Largest h keeping every offset positive: 353 = 4 * 84 + 17.
  CHECK(decomposed.h() == 4);
  CHECK(decomposed.d() == 1);
  CHECK(to_vec(decomposed.B()) == std::vector<Int>{17, 118, 219, 320});
  CHECK(n_drp_apery(decomposed, 14) == n_drp_apery(fam, 14));

  const auto pm = StructuredFamily::decompose(gl({1120, 7831, 7849}), 1120);
  CHECK(pm.h() == 6);
  CHECK(pm.d() == 1);
  CHECK(to_vec(pm.B()) == std::vector<Int>{1111, 1129});
  CHECK(pm.raw_generators() == std::vector<Int>{1120, 7831, 7849});

  CHECK(thrown_kind([] { StructuredFamily(6, 1, 1, {2, 1}); }) == ErrorKind::ConstraintViolation);
  CHECK(thrown_kind([] { StructuredFamily(6, -1, 1, {1}); }) == ErrorKind::ConstraintViolation);
  CHECK(thrown_kind([] { StructuredFamily(6, 1, 0, {1}); }) == ErrorKind::ConstraintViolation);
  CHECK(thrown_kind([] { StructuredFamily(6, 0, 2, {2}); }) == ErrorKind::GcdNotOne);
}

TEST_CASE("min-coins Apery entries") {
  const StructuredFamily fam(84, 3, 101, {1, 2, 3, 4});
  CHECK(n_drp(fam, 14, 5) == 829);
  CHECK(n_drp(fam, 14, 0) == 0);
  CHECK(n_drp(fam, 21, 0) == 0);
  // d r mod a/p: 101 * 5 = 505 = 1 mod 6.
  CHECK(to_vec(n_drp_apery(fam, 14).entries()) == std::vector<Int>{0, 829, 656, 501, 328, 173});
  CHECK(n_drp_apery(fam, 21) == quotient_apery(QuotientSpec(gl(kAap84), 21)));

  const StructuredFamily odd(33, 4, 5, {1, 3, 5});
  const auto values = n_drp_values(odd, 11);
  CHECK(values[2] == 82);
  CHECK(*std::max_element(values.begin(), values.end()) - 3 == 79);
  CHECK(to_vec(n_drp_apery(odd, 11).entries()) == std::vector<Int>{0, 82, 41});

  CHECK(thrown_kind([&] { n_drp(fam, 5, 1); }) == ErrorKind::DivisorMismatch);
  CHECK(thrown_kind([&] { n_drp(fam, 14, 6); }) == ErrorKind::ConstraintViolation);
  OBTable wrong(std::vector<Int>{1, 2});
  CHECK(thrown_kind([&] { n_drp(fam, 14, 1, wrong); }) == ErrorKind::ConstraintViolation);
}

}  // TEST_SUITE
