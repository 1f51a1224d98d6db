#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hermpic;

namespace {

AbGroup g(Vec t) { return AbGroup(std::move(t), 0); }

}  // namespace

TEST(PicH, Minus23Conjugation) {
  PicHData ph = pich(imquad_ring(-23, Involution::conjugation));
  EXPECT_EQ(ph.kernel.group, g({2}));
  EXPECT_EQ(ph.twisted.group, g({3}));
  EXPECT_EQ(ph.group(), g({6}));
  EXPECT_EQ(primary_factors(ph.group()), (Vec{2, 3}));
  EXPECT_TRUE(ph.warnings.empty());
}

TEST(PicH, Examples) {
  EXPECT_EQ(pich(imquad_ring(-15, Involution::trivial)).group(), g({2, 2}));
  EXPECT_EQ(pich(load_ring("finite:zmod8")).group(), g({2, 2}));
  EXPECT_TRUE(pich(load_ring("finite:gf9:frob")).group().is_trivial());
  EXPECT_EQ(pich(load_ring("finite:zmod5")).group(), g({2}));
  EXPECT_TRUE(pich(load_ring("finite:zmod3*zmod3:swap")).group().is_trivial());
}

TEST(PicH, LineRoundTrip) {
  for (Int d : {-23, -56, -84}) {
    PicHData ph = pich(imquad_ring(d, Involution::conjugation));
    for (const Vec& x : ph.group().elements()) {
      HermitianLine l = ph.line_of(x);
      ASSERT_TRUE(ph.group().equal(ph.classify(l), x)) << d;
    }
  }
}

TEST(PicH, TensorIsGroupLaw) {
  PicHData ph = pich(imquad_ring(-23, Involution::conjugation));
  const auto els = ph.group().elements();
  for (const Vec& x : els)
    for (const Vec& y : els) {
      HermitianLine t = tensor(ph.line_of(x), ph.line_of(y));
      ASSERT_TRUE(ph.group().equal(ph.classify(t), ph.group().add(x, y)));
    }
}

TEST(Forms, MakeFormErrors) {
  Ring r = load_ring("finite:gf9:frob");
  UnitGroupData u = unit_group(r);
  for (const auto& x : u.units)
    if (!(r.lambda(x) == x)) {
      EXPECT_THROW(make_form(r, std::nullopt, x), Error);
      break;
    }
  EXPECT_THROW(make_form(r, std::nullopt, r.zero()), Error);
  Ring q = imquad_ring(-23, Involution::conjugation);
  EXPECT_THROW(make_form(q, Form{1, 1, 1}, q.one()), Error);
}

TEST(Forms, IsomorphismWitness) {
  Ring r = load_ring("finite:zmod5");
  IsoResult a = isomorphic(make_form(r, std::nullopt, r.one()), make_form(r, std::nullopt, r.from_int(4)));
  EXPECT_TRUE(a.isomorphic);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_EQ(*a.witness, r.from_int(2));
  EXPECT_FALSE(isomorphic(make_form(r, std::nullopt, r.one()), make_form(r, std::nullopt, r.from_int(2))).isomorphic);
}

TEST(FiveTerm, ExactOnExamples) {
  for (const char* s : {"imquad:-23:conj", "imquad:-15:trivial", "imquad:-84:conj", "imquad:-4:conj", "imquad:-3:trivial",
                        "finite:zmod8", "finite:gf9:frob", "finite:zmod3*zmod3:swap"}) {
    FiveTermReport rep = verify_five_term(load_ring(s));
    EXPECT_TRUE(rep.exactness.exact()) << s;
    EXPECT_EQ(rep.exactness.junctions.size() + 2, rep.objects.size()) << s;
  }
}

TEST(PicH, FormulaMatchesBruteForceOnCorpus) {
  for (const auto& s : oracle::finite_ring_corpus()) {
    Ring r = load_ring(s);
    PicHData ph = pich(r);
    ASSERT_TRUE(ph.oracle.has_value()) << s;
    EXPECT_TRUE(ph.oracle->isomorphic(ph.group())) << s << ": " << ph.group().to_string() << " vs "
                                                   << ph.oracle->to_string();
  }
}

TEST(PicH, TrivialInvolutionGivesTwoTorsion) {
  for (const auto& s : oracle::finite_ring_corpus()) {
    Ring r = load_ring(s);
    if (!r.has_trivial_involution()) continue;
    AbGroup h = pich(r).group();
    for (const Vec& x : h.elements()) ASSERT_LE(h.element_order(x), 2) << s;
  }
}

TEST(PicH, ProductFormula) {
  EXPECT_TRUE(product_formula_check(load_ring("finite:gf4"), load_ring("finite:zmod5")).holds);
  EXPECT_TRUE(product_formula_check(load_ring("finite:gf9:frob"), load_ring("finite:zmod8")).holds);
  EXPECT_TRUE(product_formula_check(load_ring("finite:zmod3*zmod3:swap"), load_ring("finite:zmod7")).holds);
}
