#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ctrace/algebra.hpp"
#include "ctrace/composition.hpp"

namespace ctrace {

/// The three truncations of a Levi-spherical function that depend only on
/// the block determinants |det m_a| = q^{-d_a}:
///   acute       chi_N      d_1/n_1 > d_2/n_2 > ... > d_k/n_k
///   obtuse      hat chi_N  d_1+..+d_a > (D/n)(n_1+..+n_a) for all a < k
///   equal_ratio chi_M^G    d_a/n_a all equal
/// All inequalities are strict (open chambers).
enum class ChamberKind { acute, obtuse, equal_ratio };

inline const char* to_string(ChamberKind k) {
  switch (k) {
    case ChamberKind::acute: return "acute";
    case ChamberKind::obtuse: return "obtuse";
    case ChamberKind::equal_ratio: return "equal_ratio";
  }
  return "?";
}

inline ChamberKind parse_chamber_kind(const std::string& s) {
  if (s == "acute") return ChamberKind::acute;
  if (s == "obtuse") return ChamberKind::obtuse;
  if (s == "equal_ratio" || s == "equal-ratio") return ChamberKind::equal_ratio;
  throw invalid_argument("unknown chamber kind '" + s + "'");
}

/// Total exponent of each block of a monomial.
inline std::vector<int> block_degrees(const Composition& c, const Exponent& e) {
  std::vector<int> d(c.length(), 0);
  for (std::size_t a = 0; a < c.length(); ++a)
    for (int i = c.offset(a); i < c.offset(a + 1); ++i) d[a] += e[static_cast<std::size_t>(i)];
  return d;
}

/// Membership of a block-degree vector in the chamber of the given kind.
/// Ratios are compared by cross multiplication; everything stays integral.
inline bool in_chamber(const std::vector<int>& d, const Composition& c, ChamberKind kind) {
  const std::size_t k = c.length();
  if (d.size() != k) throw invalid_argument("in_chamber: block-degree vector has wrong length");
  switch (kind) {
    case ChamberKind::acute:
      for (std::size_t a = 0; a + 1 < k; ++a)
        if (!(static_cast<long long>(d[a]) * c.part(a + 1) >
              static_cast<long long>(d[a + 1]) * c.part(a)))
          return false;
      return true;
    case ChamberKind::obtuse: {
      long long total = 0;
      for (int x : d) total += x;
      const long long n = c.total();
      long long partial_d = 0;
      long long partial_n = 0;
      for (std::size_t a = 0; a + 1 < k; ++a) {
        partial_d += d[a];
        partial_n += c.part(a);
        if (!(partial_d * n > total * partial_n)) return false;
      }
      return true;
    }
    case ChamberKind::equal_ratio:
      for (std::size_t a = 1; a < k; ++a)
        if (static_cast<long long>(d[a]) * c.part(0) != static_cast<long long>(d[0]) * c.part(a))
          return false;
      return true;
  }
  return false;
}

/// Keeps the orbit terms whose block-degree vector lies in the chamber.
/// Linear and idempotent; inhomogeneous input is fine (obtuse uses each
/// monomial's own total degree).
inline LeviPoly chamber_filter(const LeviPoly& p, ChamberKind kind) {
  LeviPoly out(p.composition(), p.scaling());
  for (const auto& [rep, coeff] : p.terms())
    if (in_chamber(block_degrees(p.composition(), rep), p.composition(), kind))
      out.add_orbit(rep, coeff);
  return out;
}

}  // namespace ctrace
