#include <gtest/gtest.h>

#include <random>

#include "hermpic/cli.hpp"
#include "oracles.hpp"

using namespace hermpic;

namespace {

AbGroup g(Vec t, std::size_t r = 0) { return AbGroup(std::move(t), r); }

ScenarioResult run(const std::string& name) { return run_scenario(builtin_scenario(name)); }

}  // namespace

TEST(Scenarios, BuiltinValues) {
  EXPECT_EQ(*run("algclosed-char-ne-2").unknown, g({4}));
  EXPECT_EQ(*run("algclosed-char-2").unknown, AbGroup::free(1));
  EXPECT_TRUE(run("split-quadratic").unknown->is_trivial());
  EXPECT_EQ(*run("sphere").unknown, AbGroup::free(1));
  EXPECT_EQ(*run("unit-picp").unknown, g({2}));
  ScenarioResult kr = run("kr");
  EXPECT_EQ(*kr.unknown, g({2, 2}));
  ASSERT_TRUE(kr.extension.has_value());
  EXPECT_EQ(kr.extension->verdict, ExtensionVerdict::split_by_witness);
  ASSERT_EQ(kr.lower_bounds.size(), 1u);
  EXPECT_EQ(kr.lower_bounds[0].group, g({8}));
  EXPECT_TRUE(kr.lower_bounds[0].verified);
}

TEST(Scenarios, PrecheckAndFullCheck) {
  for (const auto& name : builtin_scenario_names()) {
    ScenarioResult r = run(name);
    EXPECT_TRUE(r.precheck.exact()) << name;
    EXPECT_TRUE(r.full.exact()) << name;
    EXPECT_FALSE(r.full.junctions.empty()) << name;
  }
}

TEST(Scenarios, InconsistentChainRejected) {
  Scenario s = builtin_scenario("sphere");
  // Z --1--> Z --(2,1)--> Z^2 is not exact at the middle term
  s.objects[0].group = AbGroup::free(1);
  s.maps[0].kind = ScenarioMap::Kind::matrix;
  s.maps[0].matrix = IntMatrix::from_rows({{1}});
  try {
    (void)run_scenario(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::inconsistent);
  }
}

TEST(Scenarios, UnderdeterminedRejected) {
  Scenario s = builtin_scenario("split-quadratic");
  s.maps[0].kind = ScenarioMap::Kind::derived;
  try {
    (void)run_scenario(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::underdetermined);
  }
}

TEST(Scenarios, KernelUnknown) {
  json j = parse_json(R"({
    "name": "kernel-test",
    "chain": [
      {"object": "X", "unknown": "kernel"},
      {"map": "derived"},
      {"object": "A", "group": {"torsion": [], "rank": 1}},
      {"map": [[6]]},
      {"object": "B", "group": {"torsion": [], "rank": 1}},
      {"map": [[1]]},
      {"object": "C", "group": {"torsion": [6], "rank": 0}}
    ]
  })");
  ScenarioResult r = run_scenario(scenario_from_json(j));
  ASSERT_TRUE(r.unknown.has_value());
  EXPECT_TRUE(r.unknown->is_trivial());
}

TEST(H1, ExtraJunk) {
  SpecWithAction point{{"x"}, {0}};
  EXPECT_EQ(h1_extra_junk(point, H1Mode::trivial_action), g({2}));
  SpecWithAction orbit{{"x", "y"}, {1, 0}};
  EXPECT_TRUE(h1_extra_junk(orbit, H1Mode::reduced).is_trivial());
  SpecWithAction three{{"a", "b", "c"}, {0, 1, 2}};
  EXPECT_EQ(h1_extra_junk(three, H1Mode::trivial_action), g({2, 2, 2}));
  // both parts agree where the action is trivial
  EXPECT_EQ(h1_extra_junk(three, H1Mode::reduced), h1_extra_junk(three, H1Mode::trivial_action));
}

TEST(BrPrime, Examples) {
  EXPECT_EQ(br_prime_kernel(g({4}), GroupHom(g({4}), g({2}), IntMatrix::from_rows({{1}}))).group, g({2}));
  Subgroup k = br_prime_kernel(AbGroup::free(1), GroupHom(AbGroup::free(1), g({2}), IntMatrix::from_rows({{1}})));
  EXPECT_EQ(k.group, AbGroup::free(1));
  EXPECT_EQ(std::abs(k.inclusion.matrix()(0, 0)), 2);
  EXPECT_EQ(br_prime_kernel(g({6}), GroupHom::zero(g({6}), g({2}))).group, g({6}));
  EXPECT_THROW(br_prime_kernel(g({4}), GroupHom::zero(g({2}), g({2}))), Error);
}

TEST(BrPrime, KernelComposesToZero) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    AbGroup b = g({Int(2 + rng() % 10)}, rng() % 2);
    IntMatrix m(1, b.ngens());
    for (std::size_t j = 0; j < b.ngens(); ++j) m(0, j) = b.modulus(j) % 2 == 0 ? Int(rng() % 2) : 0;
    GroupHom h(b, g({2}), m);
    Subgroup k = br_prime_kernel(b, h);
    ASSERT_TRUE(compose(h, k.inclusion).is_zero());
  }
}

TEST(Saltman, Examples) {
  AbGroup z4 = g({4});
  EXPECT_FALSE(saltman_check(z4, {1}, SaltmanMode::trivial_action).holds);
  EXPECT_TRUE(saltman_check(z4, {2}, SaltmanMode::trivial_action).holds);
  EXPECT_TRUE(saltman_check(z4, {2}, SaltmanMode::galois, GroupHom::multiply(z4, 2)).holds);
  EXPECT_THROW(saltman_check(z4, {2}, SaltmanMode::galois), Error);
  EXPECT_THROW(saltman_check(z4, {1, 0}, SaltmanMode::trivial_action), Error);
}
