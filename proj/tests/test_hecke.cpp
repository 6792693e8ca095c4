#include <gtest/gtest.h>

#include <numeric>

#include "printers.hpp"
#include "ctrace/chambers.hpp"
#include "ctrace/hecke.hpp"
#include "ctrace/oracle.hpp"

using namespace ctrace;

namespace {

LaurentScalar q_half(int k, long long c = 1) { return LaurentScalar::monomial(k, c); }

std::vector<int> degrees_of_single_signature(const LeviPoly& p) {
  std::set<std::vector<int>> seen;
  for (const auto& [e, coeff] : p.terms()) seen.insert(block_degrees(p.composition(), e));
  if (seen.size() != 1) return {};
  return *seen.begin();
}

}  // namespace

TEST(KottwitzFunction, RankTwo) {
  const auto f = kottwitz_function(2, 1);
  EXPECT_EQ(f.rank, 2);
  EXPECT_EQ(f.residue_exp, 1);
  LeviPoly expected(Composition::whole(2), Scaling::symbolic);
  expected.add_orbit({1, 0}, q_half(1));
  EXPECT_EQ(f.satake, expected);
}

TEST(KottwitzFunction, UnitAndZero) {
  EXPECT_EQ(kottwitz_function(4, 0).satake, LeviPoly::unit(Composition::whole(4)));
  EXPECT_TRUE(kottwitz_function(3, 4).satake.is_zero());
  EXPECT_TRUE(kottwitz_function(3, -1).satake.is_zero());
}

TEST(KottwitzFunction, MonomialCountAndCoefficient) {
  for (int n = 1; n <= 7; ++n)
    for (int s = 0; s <= n; ++s) {
      const auto f = kottwitz_function(n, s);
      ASSERT_EQ(f.satake.orbit_count(), 1u);
      EXPECT_EQ(f.satake.terms().begin()->second, q_half(s * (n - s)));
      long long expanded = 0;
      for (const auto& [e, c] : f.satake.expand()) {
        EXPECT_EQ(c, q_half(s * (n - s)));
        ++expanded;
      }
      long long binom = 1;
      for (int i = 1; i <= s; ++i) binom = binom * (n - s + i) / i;
      EXPECT_EQ(expanded, binom);
    }
}

TEST(KottwitzFunction, NumericScalingUsesDegree) {
  const auto f = kottwitz_function_numeric(3, 1, 4);
  EXPECT_EQ(f.scaling(), Scaling::numeric);
  EXPECT_EQ(f.satake.coefficient({4, 0, 0}), LaurentScalar::monomial(8, 1, Scaling::numeric));
}

TEST(Convolve, MultipliesSatakeTransforms) {
  const auto f = convolve(kottwitz_function(3, 1), kottwitz_function(3, 1));
  EXPECT_EQ(f.satake, poly_mul(kottwitz_satake(3, 1), kottwitz_satake(3, 1)));
  EXPECT_THROW(convolve(kottwitz_function(3, 1), kottwitz_function(2, 1)), composition_mismatch);
}

// ---------------------------------------------------------------------------
// Constant terms
// ---------------------------------------------------------------------------

TEST(ConstantTerm, RankTwoBorel) {
  const Composition c({1, 1});
  LeviPoly expected(c, Scaling::symbolic);
  expected.add_orbit({1, 0}, q_half(1));
  expected.add_orbit({0, 1}, q_half(1));
  EXPECT_EQ(constant_term(kottwitz_function(2, 1), c), expected);
  EXPECT_EQ(constant_term_closed_form(2, 1, c), expected);
  EXPECT_EQ(oracle::oracle_constant_term(2, 1, c), expected);
}

TEST(ConstantTerm, WholeCompositionIsIdentity) {
  for (int n = 1; n <= 5; ++n)
    for (int s = 0; s <= n; ++s) {
      const auto f = kottwitz_function(n, s);
      EXPECT_EQ(constant_term(f, Composition::whole(n)), f.satake);
      EXPECT_EQ(constant_term_closed_form(n, s, Composition::whole(n)), f.satake);
      EXPECT_EQ(oracle::oracle_constant_term(n, s, Composition::whole(n)), f.satake);
    }
}

TEST(ConstantTerm, FourTwoAtTwoTwo) {
  const Composition c({2, 2});
  const auto ct = constant_term(kottwitz_function(4, 2), c);
  EXPECT_EQ(ct, constant_term_closed_form(4, 2, c));
  // Summands (2,0), (1,1), (0,2) with q-exponents 2 - 0, 2 - 1/2 - 1/2, 2 - 0.
  EXPECT_EQ(ct.coefficient({1, 1, 0, 0}), q_half(4));
  EXPECT_EQ(ct.coefficient({1, 0, 1, 0}), q_half(2) * q_half(1) * q_half(1));
  EXPECT_EQ(ct.coefficient({0, 0, 1, 1}), q_half(4));
  EXPECT_EQ(ct.orbit_count(), 3u);
}

TEST(ConstantTerm, ThreeRoutesAgreeUpToRankFive) {
  // n <= 6 runs in the acceptance binary.
  for (int n = 1; n <= 5; ++n)
    for (int s = 0; s <= n; ++s) {
      const auto f = kottwitz_function(n, s);
      for (const auto& c : enumerate_compositions(n)) {
        const auto regrouped = constant_term(f, c);
        EXPECT_EQ(regrouped, constant_term_closed_form(n, s, c)) << n << "," << s << " " << c.to_string();
        EXPECT_EQ(regrouped, oracle::oracle_constant_term(n, s, c)) << n << "," << s << " " << c.to_string();
      }
    }
}

TEST(ConstantTerm, Transitivity) {
  const auto f = kottwitz_function(4, 2);
  const Composition mid({2, 2}), fine({1, 1, 1, 1});
  EXPECT_EQ(regroup(constant_term(f, mid), fine), constant_term(f, fine));
  const auto g = convolve(kottwitz_function(4, 1), kottwitz_function(4, 3));
  EXPECT_EQ(regroup(regroup(constant_term(g, Composition({3, 1})), Composition({1, 2, 1})), fine),
            constant_term(g, fine));
}

TEST(ConstantTerm, Errors) {
  EXPECT_THROW(constant_term(kottwitz_function(3, 1), Composition({1, 1})), composition_mismatch);
  EXPECT_THROW(regroup(constant_term(kottwitz_function(4, 1), Composition({2, 2})), Composition({1, 3})),
               composition_mismatch);
  EXPECT_THROW(constant_term_closed_form(3, 1, Composition({2, 2})), composition_mismatch);
}

TEST(ConstantTermShift, ClosedForm) {
  EXPECT_EQ(constant_term_shift(Composition({1, 1}), ExtendedComposition({1, 0})), 1);
  EXPECT_EQ(constant_term_shift(Composition({2, 2}), ExtendedComposition({1, 1})), 2);
  EXPECT_EQ(constant_term_shift(Composition({5}), ExtendedComposition({2})), 0);
}

// ---------------------------------------------------------------------------
// Truncated constant terms
// ---------------------------------------------------------------------------

TEST(CompactConstantTerm, Examples) {
  const auto t = compact_constant_term(4, 2, Composition({2, 2}));
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->coefficient, q_half(2));
  EXPECT_EQ(t->factors, (std::vector<KottwitzDescriptor>{{2, 1}, {2, 1}}));
  EXPECT_FALSE(compact_constant_term(4, 2, Composition({1, 3})).has_value());
  for (int n = 1; n <= 6; ++n)
    for (int s = 1; s <= n; ++s) {
      const auto w = compact_constant_term(n, s, Composition::whole(n));
      ASSERT_TRUE(w.has_value());
      EXPECT_EQ(w->coefficient, q_half(0));
      EXPECT_EQ(w->factors, (std::vector<KottwitzDescriptor>{{n, s}}));
    }
}

TEST(CompactConstantTerm, RejectsDegenerateSignature) {
  EXPECT_THROW(compact_constant_term(3, 0, Composition::whole(3)), invalid_argument);
  EXPECT_THROW(compact_constant_term(3, 4, Composition::whole(3)), invalid_argument);
  EXPECT_THROW(compact_constant_term(3, 1, Composition::whole(2)), composition_mismatch);
}

TEST(CompactConstantTerm, SurvivalMatchesEqualRatioOracleUpToRankFive) {
  for (int n = 1; n <= 5; ++n)
    for (int s = 1; s <= n; ++s)
      for (const auto& c : enumerate_compositions(n)) {
        const auto filtered = chamber_filter(constant_term_closed_form(n, s, c), ChamberKind::equal_ratio);
        const auto compact = compact_constant_term(n, s, c);
        const auto survivors = oracle::oracle_equal_ratio_survivors(s, c);
        EXPECT_EQ(!filtered.is_zero(), compact.has_value()) << n << "," << s << " " << c.to_string();
        EXPECT_EQ(survivors.size(), compact.has_value() ? 1u : 0u);
        if (!compact) continue;
        EXPECT_EQ(compact->signature().parts(), survivors.front());
        EXPECT_EQ(degrees_of_single_signature(filtered), survivors.front());
      }
}

TEST(CompactConstantTerm, CoprimeDegreeVanishesOnProperParabolics) {
  for (int n = 2; n <= 6; ++n)
    for (int s = 1; s <= n; ++s) {
      if (std::gcd(n, s) != 1) continue;
      for (const auto& c : enumerate_compositions(n)) {
        if (c.length() == 1) continue;
        EXPECT_TRUE(chamber_filter(constant_term(kottwitz_function(n, s), c), ChamberKind::equal_ratio).is_zero());
      }
    }
}
