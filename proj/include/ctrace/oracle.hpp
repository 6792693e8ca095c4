#pragma once

// Brute-force re-derivations used to check the production routes. Slow on
// purpose and built from definitions: chamber membership from root and
// fundamental-weight pairings computed by linear algebra, constant terms by
// expanding subsets and grouping them, surviving extended compositions by
// exhaustive search. Nothing here calls the filters or constant-term code of
// chambers.hpp / hecke.hpp.

#include <cstddef>
#include <map>
#include <vector>

#include "ctrace/algebra.hpp"
#include "ctrace/chambers.hpp"

namespace ctrace::oracle {

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

/// Orthogonal projection of R^n onto a_P^G: the vectors that are constant on
/// each block and have coordinate sum zero.
inline Vec project(const Composition& c, const Vec& x) {
  const int n = c.total();
  Vec out(static_cast<std::size_t>(n));
  Rational mean = 0;
  for (const auto& v : x) mean += v;
  mean /= n;
  for (std::size_t a = 0; a < c.length(); ++a) {
    Rational avg = 0;
    for (int i = c.offset(a); i < c.offset(a + 1); ++i) avg += x[static_cast<std::size_t>(i)];
    avg /= c.part(a);
    for (int i = c.offset(a); i < c.offset(a + 1); ++i) out[static_cast<std::size_t>(i)] = avg - mean;
  }
  return out;
}

/// Solves A x = b for square invertible A by Gauss-Jordan elimination.
inline Vec solve(std::vector<Vec> a, Vec b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw error("oracle::solve: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t j = col; j < m; ++j) a[r][j] -= factor * a[col][j];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < m; ++i) b[i] /= a[i][i];
  return b;
}

/// Simple roots Delta_P, their restricted coroots and the dual basis of
/// fundamental weights, all realized in R^n with the standard pairing.
struct PairingTable {
  Composition composition;
  /// Slot index i such that alpha_i = e_i - e_{i+1} (0-based) lies in Delta_P.
  std::vector<int> root_slots;
  std::vector<Vec> roots;
  std::vector<Vec> coroots;  ///< restricted to a_P^G
  std::vector<Vec> weights;  ///< <weights[a], coroots[b]> = delta_ab
};

inline PairingTable pairing_table(const Composition& c) {
  const int n = c.total();
  PairingTable t{c, {}, {}, {}, {}};
  for (std::size_t a = 0; a + 1 < c.length(); ++a) {
    const int i = c.offset(a + 1) - 1;
    t.root_slots.push_back(i);
    Vec root(static_cast<std::size_t>(n), Rational(0));
    root[static_cast<std::size_t>(i)] = 1;
    root[static_cast<std::size_t>(i + 1)] = -1;
    t.roots.push_back(root);
    t.coroots.push_back(project(c, root));
  }
  const std::size_t r = t.coroots.size();
  // weight_a = sum_b g_ab coroot_b with Gram(coroots) g_a = e_a.
  std::vector<Vec> gram(r, Vec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(t.coroots[i], t.coroots[j]);
  for (std::size_t a = 0; a < r; ++a) {
    Vec e(r, Rational(0));
    e[a] = 1;
    const Vec g = solve(gram, e);
    Vec w(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += g[b] * t.coroots[b][i];
    t.weights.push_back(w);
  }
  return t;
}

/// H_M(m) for block determinants |det m_a| = q^{-d_a}, as a vector of R^n
/// (slot value d_a/n_a on block a), projected to a_P^G.
inline Vec harish_chandra_point(const Composition& c, const std::vector<int>& d) {
  Vec x;
  for (std::size_t a = 0; a < c.length(); ++a)
    for (int i = 0; i < c.part(a); ++i) x.push_back(Rational(d[a], c.part(a)));
  return project(c, x);
}

/// Membership by direct pairing: acute <alpha, x> > 0, obtuse <varpi, x> > 0,
/// equal_ratio x = 0 in a_P^G.
inline bool oracle_chamber(const std::vector<int>& d, const Composition& c, ChamberKind kind,
                           const PairingTable& table) {
  const Vec x = harish_chandra_point(c, d);
  switch (kind) {
    case ChamberKind::acute:
      for (const auto& root : table.roots)
        if (!(dot(root, x) > 0)) return false;
      return true;
    case ChamberKind::obtuse:
      for (const auto& w : table.weights)
        if (!(dot(w, x) > 0)) return false;
      return true;
    case ChamberKind::equal_ratio:
      for (const auto& v : x)
        if (v != 0) return false;
      return true;
  }
  return false;
}

inline bool oracle_chamber(const std::vector<int>& d, const Composition& c, ChamberKind kind) {
  return oracle_chamber(d, c, kind, pairing_table(c));
}

/// Constant term of f_{n alpha s} along c: expand sum_{|I|=s} X_I, group the
/// monomials by block-sorted exponent, attach q^{alpha s(n-s)/2}.
inline LeviPoly oracle_constant_term(int n, int s, const Composition& c) {
  std::map<Exponent, long long> counts;
  if (s >= 0 && s <= n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != s) continue;
      Exponent e(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
      bool rep = true;
      for (std::size_t a = 0; a < c.length() && rep; ++a)
        for (int i = c.offset(a); i + 1 < c.offset(a + 1); ++i)
          if (e[static_cast<std::size_t>(i)] < e[static_cast<std::size_t>(i + 1)]) rep = false;
      if (rep) ++counts[e];
    }
  }
  LeviPoly::Terms terms;
  for (const auto& [e, k] : counts) terms.emplace(e, LaurentScalar::monomial(s * (n - s), k));
  return LeviPoly(c, Scaling::symbolic, std::move(terms));
}

/// All (s_a) with sum s, 0 <= s_a <= n_a, whose block degrees lie in the
/// equal-ratio set according to the pairing oracle.
inline std::vector<std::vector<int>> oracle_equal_ratio_survivors(int s, const Composition& c) {
  const auto table = pairing_table(c);
  std::vector<std::vector<int>> out;
  std::vector<int> cur(c.length(), 0);
  // Odometer over the box prod [0, n_a].
  while (true) {
    int total = 0;
    for (int v : cur) total += v;
    if (total == s && oracle_chamber(cur, c, ChamberKind::equal_ratio, table)) out.push_back(cur);
    std::size_t a = 0;
    while (a < cur.size() && cur[a] == c.part(a)) cur[a++] = 0;
    if (a == cur.size()) break;
    ++cur[a];
  }
  return out;
}

}  // namespace ctrace::oracle
