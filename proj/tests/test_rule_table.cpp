#include <doctest.h>

#include "cadyn/reversible.hpp"
#include "cadyn/rule_table.hpp"
#include "support.hpp"

using namespace cadyn;
using testing::word;

TEST_CASE("constructor rejects malformed tables") {
  CHECK_THROWS_AS(RuleTable(1, 2, Sidedness::One, {{0, 0}, {1, 0}}, {0, 1, 1}), Error);
  CHECK_THROWS_AS(RuleTable(1, 2, Sidedness::One, {{0, 0}}, {0, 2}), Error);
  CHECK_THROWS_AS(RuleTable(1, 2, Sidedness::One, {{-1, 0}}, {0, 1}), Error);
  CHECK_THROWS_AS(RuleTable(1, 2, Sidedness::Two, {{0, 0}, {0, 0}}, {0, 1, 1, 0}), Error);
  CHECK_THROWS_AS(RuleTable(2, 2, Sidedness::One, {{0, 0}}, {0, 1}), Error);
  CHECK_THROWS_AS(RuleTable(1, 2, Sidedness::Two, {{0, 1}}, {0, 1}), Error);
  CHECK_NOTHROW(RuleTable(2, 2, Sidedness::Two, {{0, 0}, {0, 1}}, {0, 1, 1, 0}));
}

TEST_CASE("pattern index is big-endian over the neighborhood") {
  const RuleTable z = zeta_rule();
  CHECK(z.index_of(word("12")) == 5);
  CHECK(z.pattern_at(5) == word("12"));
  for (std::size_t i = 0; i < z.pattern_count(); ++i) CHECK(z.index_of(z.pattern_at(i)) == i);
  CHECK(z(word("01")) == 1);
  CHECK(z(word("12")) == 2);
  CHECK(z(word("20")) == 1);
  CHECK(z.radius() == 1);
}

TEST_CASE("compose examples") {
  const RuleTable z = zeta_rule();
  const RuleTable id = identity_rule(1, 3);
  CHECK(equal_ca(compose(id, z), z));
  CHECK(equal_ca(compose(z, id), z));
  const RuleTable zz = compose(z, z);
  CHECK(zz.neighborhood().size() == 3);
  CHECK(zz(word("012")) == 2);
  const auto inv = invert_up_to_radius(z, 1);
  REQUIRE(inv);
  CHECK(equal_ca(compose(z, *inv), id));
  CHECK(equal_ca(compose(*inv, z), id));
}

TEST_CASE("equal_ca across neighborhoods") {
  const RuleTable z = zeta_rule();
  CHECK(equal_ca(z, z));
  CHECK_FALSE(equal_ca(z, identity_rule(1, 3)));
  const RuleTable wide = extend_to(z, {{0, 0}, {1, 0}, {2, 0}});
  CHECK(wide.pattern_count() == 27);
  CHECK(equal_ca(wide, z));
  CHECK_FALSE(wide == z);
  CHECK(equal_ca(identity_rule(1, 3), extend_to(identity_rule(1, 3), {{0, 0}, {1, 0}})));
  CHECK_THROWS_AS(equal_ca(z, identity_rule(1, 2)), MismatchError);
  CHECK_THROWS_AS(extend_to(z, {{0, 0}}), Error);
}

TEST_CASE("compose is associative on random rules") {
  std::mt19937_64 rng(testing::seed());
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t k = 2 + trial % 2;
    const auto a = testing::random_rule(rng, k, {{0, 0}, {1, 0}});
    const auto b = testing::random_rule(rng, k, {{0, 0}, {2, 0}});
    const auto c = testing::random_rule(rng, k, {{1, 0}});
    CHECK(equal_ca(compose(a, compose(b, c)), compose(compose(a, b), c)));
    const RuleTable ab = compose(a, b);
    for (const Offset& o : ab.neighborhood()) {
      CHECK(o.x >= 0);
      CHECK(o.x <= 3);
    }
  }
}

TEST_CASE("serial and parallel composition agree") {
  std::mt19937_64 rng(testing::seed() + 1);
  const auto a = testing::random_rule(rng, 3, {{-1, 0}, {0, 0}, {1, 0}}, Sidedness::Two);
  const auto b = testing::random_rule(rng, 3, {{0, 0}, {1, 0}}, Sidedness::Two);
  CHECK(compose(a, b, {}, Exec::Serial) == compose(a, b, {}, Exec::Parallel));
  CHECK(power(a, 3, {}, Exec::Serial) == power(a, 3, {}, Exec::Parallel));
}

TEST_CASE("power and budget") {
  const RuleTable z = zeta_rule();
  CHECK(power(z, 1) == z);
  CHECK(equal_ca(power(z, 2), compose(z, z)));
  CHECK_THROWS_AS(power(z, 0), Error);
  try {
    (void)power(z, 20, Budget{1000});
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.limit() == 1000);
    CHECK(e.required() > 1000);
  }
}

TEST_CASE("product acts componentwise") {
  const RuleTable z = zeta_rule();
  const RuleTable zz = product(z, z);
  CHECK(zz.alphabet_size() == 9);
  CHECK(zz.radius() == 1);
  const RuleTable h = testing::load("next_chain.rule");
  const RuleTable ih = product(identity_rule(1, 3), h);
  CHECK(ih.neighborhood() == h.neighborhood());
  for (State a0 = 0; a0 < 3; ++a0)
    for (State b0 = 0; b0 < 3; ++b0)
      for (State a1 = 0; a1 < 3; ++a1)
        for (State b1 = 0; b1 < 3; ++b1) {
          const State p[2] = {static_cast<State>(a0 * 3 + b0), static_cast<State>(a1 * 3 + b1)};
          const State hb[2] = {b0, b1};
          CHECK(ih(p) == a0 * 3 + h(hb));
        }
  // union neighborhood
  const RuleTable left = identity_rule(1, 2, Sidedness::Two);
  const RuleTable right = RuleTable(1, 2, Sidedness::Two, {{1, 0}}, {0, 1});
  CHECK(product(left, right).neighborhood() == std::vector<Offset>{{0, 0}, {1, 0}});
}

TEST_CASE("constant and identity rules") {
  const RuleTable c = constant_rule(3, 2);
  for (State s : c.table()) CHECK(s == 2);
  CHECK_THROWS_AS(constant_rule(3, 3), Error);
  const RuleTable id = identity_rule(2, 4, Sidedness::Two);
  CHECK(id.dimension() == 2);
  CHECK(id.pattern_count() == 4);
}
