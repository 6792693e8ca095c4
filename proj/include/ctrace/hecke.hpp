#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ctrace/algebra.hpp"
#include "ctrace/chambers.hpp"
#include "ctrace/composition.hpp"

namespace ctrace {

/// A spherical function on GL_n, represented faithfully by its Satake
/// transform (a symmetric polynomial over the composition (n)).
struct SphericalFunction {
  int rank = 0;
  /// The residue field has p^residue_exp elements.
  int residue_exp = 1;
  LeviPoly satake;

  Scaling scaling() const { return satake.scaling(); }

  friend bool operator==(const SphericalFunction&, const SphericalFunction&) = default;
};

inline SphericalFunction make_spherical(LeviPoly satake, int residue_exp = 1) {
  if (satake.composition().length() != 1)
    throw composition_mismatch("spherical function needs a polynomial over the trivial composition, got " +
                               satake.composition().to_string());
  const int n = satake.rank();
  return SphericalFunction{n, residue_exp, std::move(satake)};
}

/// Convolution of spherical functions.
inline SphericalFunction convolve(const SphericalFunction& a, const SphericalFunction& b) {
  if (a.rank != b.rank) throw composition_mismatch("convolve: ranks differ");
  if (a.residue_exp != b.residue_exp) throw invalid_argument("convolve: residue fields differ");
  return SphericalFunction{a.rank, a.residue_exp, poly_mul(a.satake, b.satake)};
}

/// Satake transform of f_{n, m alpha, s}:
///   q^{m alpha s(n-s)/2} * sum_{|I| = s} prod_{i in I} X_i^{m alpha}
/// where the degree multiplier m is `degree` (alpha itself is implicit in
/// symbolic mode, 1 in numeric mode). Zero for s < 0 or s > n.
inline LeviPoly kottwitz_satake(int n, int s, int degree = 1, Scaling scaling = Scaling::symbolic) {
  if (n < 1) throw invalid_argument("kottwitz function: rank must be positive");
  if (degree < 1) throw invalid_argument("kottwitz function: degree must be positive");
  LeviPoly p(Composition::whole(n), scaling);
  if (s < 0 || s > n) return p;
  Exponent rep(static_cast<std::size_t>(n), 0);
  std::fill(rep.begin(), rep.begin() + s, degree);
  p.add_orbit(rep, LaurentScalar::monomial(degree * s * (n - s), 1, scaling));
  return p;
}

/// The Kottwitz function f_{n alpha s} with symbolic degree alpha.
inline SphericalFunction kottwitz_function(int n, int s) {
  return SphericalFunction{n, 1, kottwitz_satake(n, s)};
}

/// f_{n, degree, s} with a concrete degree (numeric scaling).
inline SphericalFunction kottwitz_function_numeric(int n, int s, int degree, int residue_exp = 1) {
  return SphericalFunction{n, residue_exp, kottwitz_satake(n, s, degree, Scaling::numeric)};
}

/// Restriction of a block-symmetric polynomial to a finer Levi: the same
/// expanded polynomial grouped by the blocks of `target`.
inline LeviPoly regroup(const LeviPoly& p, const Composition& target) {
  if (!p.composition().is_refined_by(target))
    throw composition_mismatch("cannot regroup " + p.composition().to_string() + " as " +
                               target.to_string() + ": not a refinement");
  return LeviPoly::from_expanded(target, p.scaling(), p.expand());
}

/// Satake transform of the constant term f^{(P)} along the standard
/// parabolic of c.
inline LeviPoly constant_term(const SphericalFunction& f, const Composition& c) {
  if (c.total() != f.rank)
    throw composition_mismatch("constant_term: composition " + c.to_string() + " is not of rank " +
                               std::to_string(f.rank));
  return regroup(f.satake, c);
}

/// 2 C(n_a, s_a) = s(n-s) - sum_a s_a(n_a - s_a): the q^{alpha/2}-exponent of
/// the coefficient of the (s_a) summand in the constant term of f_{n alpha s}.
inline int constant_term_shift(const Composition& c, const ExtendedComposition& sa) {
  if (sa.length() != c.length()) throw invalid_argument("constant_term_shift: length mismatch");
  const int n = c.total();
  const int s = sa.total();
  int shift = s * (n - s);
  for (std::size_t a = 0; a < c.length(); ++a) shift -= sa.part(a) * (c.part(a) - sa.part(a));
  return shift;
}

/// Constant term of f_{n alpha s} via the closed form
///   sum_{(s_a)} q^{alpha C(n_a,s_a)} (f_{n_1 alpha s_1} x ... x f_{n_k alpha s_k})
/// over extended compositions of s with s_a <= n_a.
inline LeviPoly constant_term_closed_form(int n, int s, const Composition& c, int degree = 1,
                                          Scaling scaling = Scaling::symbolic) {
  if (c.total() != n)
    throw composition_mismatch("constant_term_closed_form: " + c.to_string() + " is not a composition of " +
                               std::to_string(n));
  LeviPoly out(c, scaling);
  if (s < 0 || s > n) return out;
  for (const auto& sa : enumerate_extended(s, static_cast<int>(c.length()), c.parts())) {
    std::vector<LeviPoly> factors;
    factors.reserve(c.length());
    for (std::size_t a = 0; a < c.length(); ++a)
      factors.push_back(kottwitz_satake(c.part(a), sa.part(a), degree, scaling));
    const auto coeff = LaurentScalar::monomial(degree * constant_term_shift(c, sa), 1, scaling);
    out += coeff * tensor(factors);
  }
  return out;
}

/// Symbolic factor chi_c^{G_{n_a}} f_{n_a alpha s_a} of a truncated constant
/// term. Not spherical, so it is never expanded into a polynomial.
struct KottwitzDescriptor {
  int n = 0;
  int s = 0;
  friend bool operator==(const KottwitzDescriptor&, const KottwitzDescriptor&) = default;
};

struct TruncatedConstantTerm {
  LaurentScalar coefficient;
  std::vector<KottwitzDescriptor> factors;

  ExtendedComposition signature() const {
    std::vector<int> s;
    for (const auto& f : factors) s.push_back(f.s);
    return ExtendedComposition(std::move(s));
  }
};

/// chi_c^G (f_{n alpha s}^{(P)}). Nonzero only when every n_a is a multiple
/// of n/d, d = gcd(n, s); then the single surviving summand has
/// s_a = (s/d) d_a with d_a = n_a d/n.
inline std::optional<TruncatedConstantTerm> compact_constant_term(int n, int s, const Composition& c) {
  if (c.total() != n)
    throw composition_mismatch("compact_constant_term: " + c.to_string() + " is not a composition of " +
                               std::to_string(n));
  if (s < 1 || s > n)
    throw invalid_argument("compact_constant_term: need 1 <= s <= n, got s = " + std::to_string(s));
  const int d = std::gcd(n, s);
  const int block_unit = n / d;
  std::vector<int> sa;
  TruncatedConstantTerm out;
  for (int na : c.parts()) {
    if (na % block_unit != 0) return std::nullopt;
    const int da = na / block_unit;
    sa.push_back((s / d) * da);
    out.factors.push_back({na, sa.back()});
  }
  out.coefficient = LaurentScalar::monomial(constant_term_shift(c, ExtendedComposition(sa)));
  return out;
}

}  // namespace ctrace
