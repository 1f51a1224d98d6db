#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hermpic;

namespace {

AbGroup g(Vec t) { return AbGroup(std::move(t), 0); }

}  // namespace

TEST(Forms, Reduction) {
  Form f = reduce({6, 1, 1});
  EXPECT_EQ(f.a, 1);
  EXPECT_TRUE(f.is_reduced());
  EXPECT_EQ(f.disc(), -23);
  EXPECT_EQ(reduce({3, -2, 2}).to_string(), "(2,2,3)");
}

TEST(Forms, ReducedFormsOfMinus23) {
  std::vector<Form> fs = reduced_forms(-23);
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs[0].to_string(), "(1,1,6)");
  EXPECT_EQ(fs[1].to_string(), "(2,-1,3)");
  EXPECT_EQ(fs[2].to_string(), "(2,1,3)");
  EXPECT_EQ(compose({2, 1, 3}, {2, 1, 3}).to_string(), "(2,-1,3)");
}

TEST(Forms, Errors) {
  EXPECT_THROW(check_discriminant(-5), Error);
  EXPECT_THROW(check_discriminant(8), Error);
  EXPECT_THROW(check_discriminant(-2'000'004), Error);
  EXPECT_THROW(compose({1, 1, 6}, {1, 0, 1}), Error);
}

TEST(ClassGroup, KnownGroups) {
  EXPECT_TRUE(class_group(-4, Involution::conjugation).group.is_trivial());
  EXPECT_TRUE(class_group(-23, Involution::conjugation).group.isomorphic(g({3})));
  EXPECT_TRUE(class_group(-15, Involution::conjugation).group.isomorphic(g({2})));
  EXPECT_TRUE(class_group(-56, Involution::conjugation).group.isomorphic(g({4})));
  EXPECT_TRUE(class_group(-84, Involution::conjugation).group.isomorphic(g({2, 2})));
  EXPECT_TRUE(class_group(-420, Involution::conjugation).group.isomorphic(g({2, 2, 2})));
  EXPECT_TRUE(class_group(-47, Involution::conjugation).group.isomorphic(g({5})));
}

TEST(ClassGroup, MatchesAnalyticClassNumber) {
  for (Int d = -3; d >= -400; --d) {
    if (((d % 4) + 4) % 4 > 1) continue;
    const Int want = oracle::class_number_analytic(d);
    ASSERT_EQ(class_group(d, Involution::conjugation).group.order(), want) << d;
    ASSERT_EQ(oracle::class_number_by_triples(d), want) << d;
  }
}

TEST(ClassGroup, ConjugationActsByInversion) {
  for (Int d : {-23, -56, -84, -71}) {
    ClassGroupData cg = class_group(d, Involution::conjugation);
    for (std::size_t i = 0; i < cg.forms.size(); ++i) {
      Vec x = cg.coords_of(cg.forms[i]);
      ASSERT_EQ(cg.group.act(x), cg.group.negate(x));
    }
    EXPECT_EQ(twisted_fixed_classes(cg).group.order(), cg.group.order());
  }
}

TEST(ClassGroup, TrivialInvolutionTwistedIsTwoTorsion) {
  ClassGroupData cg = class_group(-15, Involution::trivial);
  EXPECT_EQ(twisted_fixed_classes(cg).group, g({2}));
  ClassGroupData cg2 = class_group(-23, Involution::trivial);
  EXPECT_TRUE(twisted_fixed_classes(cg2).group.is_trivial());
}

TEST(ClassGroup, CoordinatesRespectComposition) {
  ClassGroupData cg = class_group(-260, Involution::conjugation);
  for (const Form& f : cg.forms)
    for (const Form& h : cg.forms)
      ASSERT_EQ(cg.coords_of(compose(f, h)), cg.group.add(cg.coords_of(f), cg.coords_of(h)));
}
