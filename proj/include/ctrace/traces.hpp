#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "ctrace/algebra.hpp"
#include "ctrace/chambers.hpp"
#include "ctrace/composition.hpp"
#include "ctrace/hecke.hpp"

namespace ctrace {

/// Hecke matrix of delta_{P_0}^{1/2}: X_i = q^{(2i-1-n)/2}.
inline HeckePoint steinberg_point(int n) {
  std::vector<int> halves;
  for (int i = 1; i <= n; ++i) halves.push_back(2 * i - 1 - n);
  return HeckePoint(Composition::borel(n), std::move(halves));
}

/// Hecke matrix of the trivial representation of M twisted by
/// delta_P^{-1/2}: slot (a,i) -> (n_a + 1 - 2i)/2 + r_a/2 with
/// r_a = sum_{b>a} n_b - sum_{b<a} n_b.
inline HeckePoint trivial_twist_point(const Composition& c) {
  std::vector<int> halves;
  const int n = c.total();
  for (std::size_t a = 0; a < c.length(); ++a) {
    const int before = c.offset(a);
    const int after = n - c.offset(a + 1);
    const int r = after - before;
    for (int i = 1; i <= c.part(a); ++i) halves.push_back(c.part(a) + 1 - 2 * i + r);
  }
  return HeckePoint(c, std::move(halves));
}

/// Tr(chi_c f, St): only the Borel term of the parabolic sum survives,
///   eps_{P_0} * S_T(hat chi_{N_0} f^{(P_0)}) at delta_{P_0}^{1/2}.
inline QAlphaPoly compact_trace_steinberg(const SphericalFunction& f) {
  const auto borel = Composition::borel(f.rank);
  const auto truncated = chamber_filter(constant_term(f, borel), ChamberKind::obtuse);
  return eval_point(truncated, steinberg_point(f.rank)) * Integer(eps_parabolic(borel));
}

/// Tr(chi_c f, 1) as the parabolic sum
///   sum_P eps_P S_M(hat chi_N f^{(P)}) at the Hecke matrix of 1_M(delta_P^{-1/2}).
inline QAlphaPoly compact_trace_trivial(const SphericalFunction& f) {
  const auto expanded = f.satake.expand();
  QAlphaPoly total(f.scaling());
  for (const auto& c : enumerate_compositions(f.rank)) {
    const auto ct = LeviPoly::from_expanded(c, f.scaling(), expanded);
    const auto truncated = chamber_filter(ct, ChamberKind::obtuse);
    if (truncated.is_zero()) continue;
    total += eval_point(truncated, trivial_twist_point(c)) * Integer(eps_parabolic(c));
  }
  return total;
}

struct CtTrivialCheck {
  QAlphaPoly lhs;  ///< Tr(chi_c f, 1), parabolic sum
  QAlphaPoly rhs;  ///< eps_{P_0} Tr(chi_c f, St), Borel route
  bool equal = false;
};

/// Both sides of Tr(chi_c f, 1) = eps_{P_0} Tr(chi_c f, St) for f homogeneous
/// of degree prime to n. In symbolic mode the degree is counted in units of
/// alpha.
inline CtTrivialCheck cttrivial_check(const SphericalFunction& f) {
  const int degree = homogeneous_degree(f.satake);
  if (std::gcd(degree, f.rank) != 1)
    throw invalid_argument("cttrivial_check: degree " + std::to_string(degree) + " is not prime to n = " +
                           std::to_string(f.rank));
  CtTrivialCheck out;
  out.lhs = compact_trace_trivial(f);
  out.rhs = compact_trace_steinberg(f) * Integer(eps_parabolic(Composition::borel(f.rank)));
  out.equal = out.lhs == out.rhs;
  return out;
}

/// q^{alpha s(n-s)/2} sum X_{i_1}^alpha ... X_{i_s}^alpha over i_1 = 1 <
/// i_2 < ... < i_s with i_j < 1 + (n/s)(j-1), as a polynomial in the Borel
/// variables.
inline LeviPoly intro_monomial_family(int n, int s) {
  if (n < 1 || s < 1 || s > n) throw invalid_argument("intro_monomial_family: need 1 <= s <= n");
  const auto borel = Composition::borel(n);
  LeviPoly out(borel, Scaling::symbolic);
  const auto coeff = LaurentScalar::monomial(s * (n - s));
  Exponent e(static_cast<std::size_t>(n), 0);
  e[0] = 1;
  // j is 1-based: choosing i_j given i_{j-1} = prev.
  auto rec = [&](auto&& self, int j, int prev) -> void {
    if (j > s) {
      out.add_orbit(e, coeff);
      return;
    }
    // i_j < 1 + n(j-1)/s  <=>  s (i_j - 1) < n (j-1)
    for (int i = prev + 1; i <= n && s * (i - 1) < n * (j - 1); ++i) {
      e[static_cast<std::size_t>(i - 1)] = 1;
      self(self, j + 1, i);
      e[static_cast<std::size_t>(i - 1)] = 0;
    }
  };
  rec(rec, 2, 1);
  return out;
}

}  // namespace ctrace
