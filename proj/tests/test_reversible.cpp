#include <doctest.h>

#include <set>

#include "cadyn/kernels.hpp"
#include "cadyn/reversible.hpp"
#include "support.hpp"

using namespace cadyn;
using testing::word;

TEST_CASE("zeta family to rule") {
  const RuleTable z = family_to_rule(zeta_family());
  CHECK(z == zeta_rule());
  CHECK(z.table() == word("010222101"));
  const auto back = rule_to_family(z);
  REQUIRE(back);
  CHECK(*back == zeta_family());
}

TEST_CASE("identity family gives the identity") {
  PermutationFamily id{3, {word("012"), word("012"), word("012")}};
  CHECK(equal_ca(family_to_rule(id), identity_rule(1, 3)));
}

TEST_CASE("colliding diagonals make the rule non-injective") {
  // rho_0(0) = rho_1(1) = 0, so F(0^w) = F(1^w)
  PermutationFamily fam{2, {word("01"), word("01")}};
  fam.perms[1] = word("10");
  const RuleTable f = family_to_rule(fam);
  const State zeros[2] = {0, 0};
  const State ones[2] = {1, 1};
  CHECK(f(zeros) == f(ones));
  CHECK_FALSE(invert_up_to_radius(f, 2));
}

TEST_CASE("family validation") {
  PermutationFamily bad{2, {word("00"), word("01")}};
  CHECK_THROWS_AS(bad.validate(), Error);
  PermutationFamily short_family{3, {word("012")}};
  CHECK_THROWS_AS(short_family.validate(), Error);
}

TEST_CASE("inverse of zeta") {
  const auto inv = invert_up_to_radius(zeta_rule(), 1);
  REQUIRE(inv);
  CHECK(inv->radius() == 1);
  const auto fam = rule_to_family(*inv);
  REQUIRE(fam);
  CHECK(fam->perms[0] == word("021"));
  CHECK(fam->perms[1] == word("021"));
  CHECK(fam->perms[2] == word("201"));
  const RuleTable id = identity_rule(1, 3);
  CHECK(equal_ca(compose(*inv, zeta_rule()), id));
  CHECK(equal_ca(compose(zeta_rule(), *inv), id));
  CHECK_FALSE(invert_up_to_radius(zeta_rule(), 0));
}

TEST_CASE("inverse search: serial and parallel agree") {
  const auto a = invert_up_to_radius(zeta_rule(), 1, {}, Exec::Serial);
  const auto b = invert_up_to_radius(zeta_rule(), 1, {}, Exec::Parallel);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(*a == *b);
}

TEST_CASE("non-invertible and trivial cases") {
  CHECK_FALSE(invert_up_to_radius(testing::load("shift.rule"), 3));
  const auto id = invert_up_to_radius(identity_rule(1, 3), 0);
  REQUIRE(id);
  CHECK(equal_ca(*id, identity_rule(1, 3)));
  CHECK_FALSE(invert_up_to_radius(constant_rule(2, 0), 2));
  CHECK_FALSE(invert_up_to_radius(testing::load("xor3.rule"), 2));
}

TEST_CASE("two-sided shift has a two-sided inverse") {
  const RuleTable left(1, 2, Sidedness::Two, {{1, 0}}, {0, 1});
  const auto inv = invert_up_to_radius(left, 1);
  REQUIRE(inv);
  const RuleTable right(1, 2, Sidedness::Two, {{-1, 0}}, {0, 1});
  CHECK(equal_ca(*inv, right));
}

TEST_CASE("random permutation families invert at radius one when they invert at all") {
  std::mt19937_64 rng(testing::seed());
  int found = 0;
  for (int trial = 0; trial < 30; ++trial) {
    PermutationFamily fam{3, {}};
    for (int a = 0; a < 3; ++a) {
      std::vector<State> p = word("012");
      std::shuffle(p.begin(), p.end(), rng);
      fam.perms.push_back(p);
    }
    const RuleTable f = family_to_rule(fam);
    if (const auto g = invert_up_to_radius(f, 1)) {
      ++found;
      CHECK(equal_ca(compose(*g, f), identity_rule(1, 3)));
      CHECK(equal_ca(compose(f, *g), identity_rule(1, 3)));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("rho_step examples") {
  CHECK(rho_step(word("0")) == word("1"));
  CHECK(rho_step(word("00")) == word("01"));
  CHECK(rho_step(word("12")) == word("20"));
  CHECK_THROWS_AS(rho_step(std::vector<State>{}), Error);
}

TEST_CASE("rho agrees with the zeta table except at the last cell") {
  const RuleTable z = zeta_rule();
  std::vector<State> w(5);
  for (std::uint64_t i = 0; i < 243; ++i) {
    kernels::decode_word(i, 3, w);
    const auto r = rho_step(w);
    for (std::size_t j = 0; j + 1 < w.size(); ++j) CHECK(r[j] == z.eval_word(w, static_cast<int>(j)));
    CHECK(r.back() == zeta_family().perms[1][w.back()]);
  }
}

TEST_CASE("rho is a cyclic permutation") {
  std::uint64_t expected = 1;
  for (int n = 1; n <= 10; ++n) {
    expected *= 3;
    const RhoOrbit orbit = rho_orbit(n);
    CHECK(orbit.length == expected);
    CHECK(orbit.visits_all);
    CHECK(rho_orbit_length(n) == expected);
  }
  CHECK_THROWS_AS(rho_orbit(0), Error);
  CHECK_THROWS_AS(rho_orbit(kRhoMaxLength + 1), Error);
}

TEST_CASE("rho orbit visits the same set as brute force for small n") {
  std::set<std::vector<State>> seen;
  std::vector<State> w = word("000");
  do {
    seen.insert(w);
    w = rho_step(w);
  } while (w != word("000"));
  CHECK(seen.size() == 27);
}
