#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hermpic;

namespace {

AbGroup g(Vec t, std::size_t r = 0) { return AbGroup(std::move(t), r); }

}  // namespace

TEST(SignFunctions, OneFreeOrbit) {
  EquivariantSignFunctions s = equivariant_sign_functions(load_ring("finite:zmod3*zmod3:swap").spec_components());
  EXPECT_EQ(s.group, AbGroup::free(1));
  Vec f = s.function_of({1});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], -f[1]);
}

TEST(SignFunctions, FixedComponentsContributeNothing) {
  EXPECT_TRUE(equivariant_sign_functions(load_ring("finite:zmod15").spec_components()).group.is_trivial());
  EXPECT_EQ(equivariant_sign_functions(load_ring("finite:zmod4*zmod4*zmod3*zmod3:swap").spec_components()).group,
            AbGroup::free(2));
}

TEST(PicP, SwapOfTwoFields) {
  PicPData p = pic_p(load_ring("finite:zmod3*zmod3:swap"));
  EXPECT_EQ(p.total.group, AbGroup::free(1));
  EXPECT_TRUE(p.hermitian.group().is_trivial());
  EXPECT_EQ(p.shift.group.rank(), 1u);
}

TEST(PicP, ConnectedTrivialInvolutionEqualsPicH) {
  for (const char* s : {"finite:zmod8", "finite:zmod7", "finite:gf9", "imquad:-15:trivial", "imquad:-56:trivial"}) {
    Ring r = load_ring(s);
    PicPData p = pic_p(r);
    EXPECT_EQ(p.shift.group.rank(), 0u) << s;
    EXPECT_TRUE(p.total.group.isomorphic(pich(r).group())) << s;
  }
}

TEST(PicP, ElementsCarryDegreeFunctions) {
  PicPData p = pic_p(load_ring("finite:zmod5*zmod5:swap"));
  for (const Vec& x : {Vec{3}, Vec{-2}}) {
    auto e = p.element(x);
    ASSERT_EQ(e.degree.size(), 2u);
    EXPECT_EQ(e.degree[0], x[0]);
    EXPECT_EQ(e.degree[1], -x[0]);
  }
}

TEST(Extensions, Verdicts) {
  ExtensionResult a = resolve_extension(g({3}), g({2}));
  EXPECT_EQ(a.verdict, ExtensionVerdict::determined);
  EXPECT_EQ(*a.middle, g({6}));

  ExtensionResult b = resolve_extension(g({2}), g({2}));
  EXPECT_EQ(b.verdict, ExtensionVerdict::ambiguous);
  EXPECT_FALSE(b.middle.has_value());

  ExtensionResult c = resolve_extension(g({2}), g({2}), std::vector<Vec>{{0}});
  EXPECT_EQ(c.verdict, ExtensionVerdict::split_by_witness);
  EXPECT_EQ(*c.middle, g({2, 2}));

  ExtensionResult d = resolve_extension(g({2}), g({2}), std::vector<Vec>{{1}});
  EXPECT_EQ(d.verdict, ExtensionVerdict::determined);
  EXPECT_EQ(*d.middle, g({4}));

  EXPECT_THROW(resolve_extension(g({2}), g({2}), std::vector<Vec>{}), Error);
}

TEST(Extensions, BorelPieces) {
  ExtensionResult r = borel_symmetric_pieces(imquad_ring(-23, Involution::conjugation));
  EXPECT_EQ(r.kernel, g({2}));
  EXPECT_EQ(r.quotient, g({3}));
  EXPECT_EQ(r.verdict, ExtensionVerdict::determined);
}
