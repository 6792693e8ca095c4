#include <gtest/gtest.h>

#include "printers.hpp"
#include "ctrace/algebra.hpp"
#include "ctrace/hecke.hpp"
#include "generators.hpp"

using namespace ctrace;
using ctrace::testing::Gen;

namespace {

constexpr int kIterations = 200;

LaurentScalar q_half(int k, long long c = 1) { return LaurentScalar::monomial(k, c); }

LeviPoly sym2(std::initializer_list<std::pair<Exponent, LaurentScalar>> terms) {
  LeviPoly p(Composition::whole(2), Scaling::symbolic);
  for (const auto& [e, c] : terms) p.add_orbit(e, c);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// LaurentScalar
// ---------------------------------------------------------------------------

TEST(LaurentScalar, DropsZeroCoefficients) {
  LaurentScalar x(Scaling::symbolic, {{0, 1}, {2, 0}, {3, -4}});
  EXPECT_EQ(x.terms().size(), 2u);
  x.add_term(3, 4);
  EXPECT_EQ(x.terms().size(), 1u);
  EXPECT_EQ(x.coefficient(0), 1);
  EXPECT_EQ(x.coefficient(3), 0);
}

TEST(LaurentScalar, MultiplicationAddsExponents) {
  const auto x = q_half(1, 2) + q_half(-1);
  const auto y = q_half(3, -1);
  const auto p = x * y;
  EXPECT_EQ(p, q_half(4, -2) + q_half(2, -1));
}

TEST(LaurentScalar, PolynomialInQAlphaPredicate) {
  EXPECT_TRUE((q_half(0) + q_half(2) + q_half(4, 3)).is_polynomial_in_q_alpha());
  EXPECT_FALSE(q_half(1).is_polynomial_in_q_alpha());
  EXPECT_FALSE(q_half(-2).is_polynomial_in_q_alpha());
  EXPECT_TRUE(LaurentScalar().is_polynomial_in_q_alpha());
}

TEST(LaurentScalar, MixingScalingsThrows) {
  const auto sym = LaurentScalar::constant(1, Scaling::symbolic);
  const auto num = LaurentScalar::constant(1, Scaling::numeric);
  EXPECT_THROW(sym + num, scaling_mismatch);
  EXPECT_THROW(sym * num, scaling_mismatch);
}

TEST(LaurentScalarProperty, RingAxioms) {
  Gen g(1);
  for (int i = 0; i < kIterations; ++i) {
    const auto a = g.scalar(), b = g.scalar(), c = g.scalar();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

// ---------------------------------------------------------------------------
// LeviPoly
// ---------------------------------------------------------------------------

TEST(LeviPoly, RejectsNonRepresentativeKeys) {
  LeviPoly p(Composition({1, 2}), Scaling::symbolic);
  EXPECT_THROW(p.add_orbit({0, 0, 1}, q_half(0)), invalid_argument);
  EXPECT_THROW(p.add_orbit({1, 0}, q_half(0)), invalid_argument);
  EXPECT_NO_THROW(p.add_orbit({0, 1, 0}, q_half(0)));
}

TEST(PolyMul, BinomialSquare) {
  // (X1 + X2)^2 = X1^2 + 2 X1 X2 + X2^2
  const auto e1 = sym2({{{1, 0}, q_half(0)}});
  const auto expected = sym2({{{2, 0}, q_half(0)}, {{1, 1}, q_half(0, 2)}});
  EXPECT_EQ(poly_mul(e1, e1), expected);
}

TEST(PolyMul, UnitIsNeutral) {
  Gen g(2);
  for (int i = 0; i < 50; ++i) {
    const auto c = g.composition(g.uniform(1, 4));
    const auto f = g.levi_poly(c);
    EXPECT_EQ(poly_mul(f, LeviPoly::unit(c)), f);
  }
}

TEST(PolyMul, KottwitzSquare) {
  // S(f_{2,a,1})^2 = q^a (X1^{2a} + 2 X1^a X2^a + X2^{2a})
  const auto s = kottwitz_satake(2, 1);
  const auto expected = sym2({{{2, 0}, q_half(2)}, {{1, 1}, q_half(2, 2)}});
  EXPECT_EQ(poly_mul(s, s), expected);
}

TEST(PolyMul, MismatchErrors) {
  const auto a = LeviPoly::unit(Composition({1, 1}));
  EXPECT_THROW(poly_mul(a, LeviPoly::unit(Composition({2}))), composition_mismatch);
  EXPECT_THROW(poly_mul(a, LeviPoly::unit(Composition({1, 1}), Scaling::numeric)), scaling_mismatch);
}

TEST(PolyMul, MatchesMonomialExpansion) {
  // Multiply expanded forms naively and compare with the expansion of the
  // normalized product.
  Gen g(3);
  for (int i = 0; i < 60; ++i) {
    const auto c = g.composition(g.uniform(1, 4));
    const auto a = g.levi_poly(c), b = g.levi_poly(c);
    LeviPoly::Terms naive;
    for (const auto& [ma, ca] : a.expand())
      for (const auto& [mb, cb] : b.expand()) {
        Exponent m(ma.size());
        for (std::size_t j = 0; j < m.size(); ++j) m[j] = ma[j] + mb[j];
        auto [it, ins] = naive.try_emplace(m, ca * cb);
        if (!ins) it->second += ca * cb;
      }
    std::erase_if(naive, [](const auto& kv) { return kv.second.is_zero(); });
    EXPECT_EQ(poly_mul(a, b).expand(), naive);
  }
}

TEST(LeviPolyProperty, RingAxioms) {
  Gen g(4);
  for (int i = 0; i < 80; ++i) {
    const auto c = g.composition(g.uniform(1, 4));
    const auto a = g.levi_poly(c), b = g.levi_poly(c), d = g.levi_poly(c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ((a + b) + d, a + (b + d));
  }
}

TEST(LeviPolyProperty, NormalizationIdempotent) {
  Gen g(5);
  for (int i = 0; i < 80; ++i) {
    const auto c = g.composition(g.uniform(1, 5));
    const auto p = g.levi_poly(c);
    const auto expanded = p.expand();
    const auto normalized = LeviPoly::from_expanded(c, p.scaling(), expanded);
    EXPECT_EQ(normalized, p);
    EXPECT_EQ(LeviPoly::from_expanded(c, p.scaling(), normalized.expand()), normalized);
    EXPECT_EQ(normalized.expand(), expanded);
  }
}

TEST(Tensor, ConcatenatesBlocks) {
  const auto t = tensor({kottwitz_satake(1, 1), kottwitz_satake(2, 1)});
  EXPECT_EQ(t.composition(), Composition({1, 2}));
  // q^{0} X1 (x) q^{1/2} (X2 + X3)
  EXPECT_EQ(t.orbit_count(), 1u);
  EXPECT_EQ(t.coefficient({1, 1, 0}), q_half(1));
}

// ---------------------------------------------------------------------------
// eval_point
// ---------------------------------------------------------------------------

TEST(EvalPoint, SingleSubstitution) {
  LeviPoly p(Composition({1, 1}), Scaling::symbolic);
  p.add_orbit({1, 0}, q_half(0));
  EXPECT_EQ(eval_point(p, HeckePoint(Composition({1, 1}), {-1, 1})), q_half(-1));
}

TEST(EvalPoint, KottwitzAtTrivialPoint) {
  // q^{a/2}(X1^a + X2^a) at (-1/2, 1/2) = 1 + q^a
  const auto p = kottwitz_satake(2, 1);
  EXPECT_EQ(eval_point(p, HeckePoint(Composition::whole(2), {-1, 1})), q_half(0) + q_half(2));
}

TEST(EvalPoint, ConstantIsUnchanged) {
  const auto c = q_half(3, 7) + q_half(-1, 2);
  const auto p = c * LeviPoly::unit(Composition({2, 1}));
  EXPECT_EQ(eval_point(p, HeckePoint(Composition({2, 1}), {5, -3, 1})), c);
}

TEST(EvalPoint, SlotCountMismatch) {
  EXPECT_THROW(eval_point(kottwitz_satake(3, 1), HeckePoint(Composition::whole(2), {1, -1})), invalid_argument);
  EXPECT_THROW(HeckePoint(Composition::whole(3), {1, 1}), invalid_argument);
}

TEST(EvalPointProperty, RingHomomorphism) {
  Gen g(6);
  for (int i = 0; i < 80; ++i) {
    const auto c = g.composition(g.uniform(1, 4));
    const auto a = g.levi_poly(c), b = g.levi_poly(c);
    std::vector<int> h(static_cast<std::size_t>(c.total()));
    for (auto& x : h) x = g.uniform(-5, 5);
    const HeckePoint pt(c, h);
    EXPECT_EQ(eval_point(a * b, pt), eval_point(a, pt) * eval_point(b, pt));
    EXPECT_EQ(eval_point(a + b, pt), eval_point(a, pt) + eval_point(b, pt));
  }
}

// ---------------------------------------------------------------------------
// homogeneous_degree
// ---------------------------------------------------------------------------

TEST(HomogeneousDegree, KottwitzFunctions) {
  for (int n = 1; n <= 8; ++n)
    for (int s = 1; s <= n; ++s) EXPECT_EQ(homogeneous_degree(kottwitz_satake(n, s)), s) << n << "," << s;
}

TEST(HomogeneousDegree, MixedOrbits) {
  EXPECT_EQ(homogeneous_degree(sym2({{{1, 1}, q_half(0)}, {{2, 0}, q_half(0)}})), 2);
}

TEST(HomogeneousDegree, InhomogeneousReportsWitnesses) {
  const auto p = sym2({{{1, 0}, q_half(0)}, {{1, 1}, q_half(0)}});
  try {
    homogeneous_degree(p);
    FAIL() << "expected inhomogeneous_error";
  } catch (const inhomogeneous_error& e) {
    EXPECT_EQ(e.first_witness(), "X^(1,0)");
    EXPECT_EQ(e.second_witness(), "X^(1,1)");
  }
}

TEST(HomogeneousDegree, ZeroInputThrows) {
  EXPECT_THROW(homogeneous_degree(LeviPoly(Composition::whole(2), Scaling::symbolic)), invalid_argument);
}
