#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ctrace/composition.hpp"
#include "ctrace/error.hpp"

namespace ctrace {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// How exponents are read.
///
/// symbolic: every X-exponent is a multiple of the degree alpha and is stored
///           in units of alpha; a scalar exponent k stands for q^{k alpha/2}.
/// numeric:  X-exponents are absolute and k stands for q^{k/2}.
///
/// The two never meet in one expression.
enum class Scaling { symbolic, numeric };

inline const char* to_string(Scaling s) { return s == Scaling::symbolic ? "symbolic" : "numeric"; }

inline void require_same_scaling(Scaling a, Scaling b, const char* where) {
  if (a != b)
    throw scaling_mismatch(std::string(where) + ": cannot mix " + to_string(a) + " and " +
                           to_string(b) + " scalars");
}

/// A finite Laurent polynomial sum_k c_k q^{k/2} (or q^{k alpha/2}) with
/// integer coefficients. No stored coefficient is zero.
class LaurentScalar {
 public:
  using Terms = std::map<int, Integer>;

  explicit LaurentScalar(Scaling scaling = Scaling::symbolic) : scaling_(scaling) {}

  LaurentScalar(Scaling scaling, Terms terms) : scaling_(scaling), terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
  }

  static LaurentScalar constant(const Integer& c, Scaling scaling = Scaling::symbolic) {
    return monomial(0, c, scaling);
  }

  /// c * q^{half_exponent/2} (times alpha in symbolic mode).
  static LaurentScalar monomial(int half_exponent, const Integer& c = 1,
                                Scaling scaling = Scaling::symbolic) {
    LaurentScalar r(scaling);
    if (c != 0) r.terms_.emplace(half_exponent, c);
    return r;
  }

  Scaling scaling() const { return scaling_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(int half_exponent) const {
    auto it = terms_.find(half_exponent);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  std::optional<int> min_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  std::optional<int> max_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  /// Every exponent is even and nonnegative, i.e. the value is an ordinary
  /// polynomial in q^alpha (resp. q).
  bool is_polynomial_in_q_alpha() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.first >= 0 && kv.first % 2 == 0; });
  }

  /// Multiplication by q^{half_exponent/2}.
  LaurentScalar shifted(int half_exponent) const {
    Terms t;
    for (const auto& [k, c] : terms_) t.emplace(k + half_exponent, c);
    return LaurentScalar(scaling_, std::move(t));
  }

  /// Substitutes q -> q^factor (every exponent multiplied by factor).
  LaurentScalar exponents_scaled(int factor) const {
    if (factor <= 0) throw invalid_argument("exponent scale factor must be positive");
    Terms t;
    for (const auto& [k, c] : terms_) t.emplace(k * factor, c);
    return LaurentScalar(scaling_, std::move(t));
  }

  LaurentScalar& operator+=(const LaurentScalar& o) {
    require_same_scaling(scaling_, o.scaling_, "LaurentScalar +");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  LaurentScalar& operator-=(const LaurentScalar& o) {
    require_same_scaling(scaling_, o.scaling_, "LaurentScalar -");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  LaurentScalar& operator*=(const Integer& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }

  /// Adds c * q^{k/2}.
  void add_term(int half_exponent, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(half_exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator-(LaurentScalar a) { return a *= Integer(-1); }
  friend LaurentScalar operator*(LaurentScalar a, const Integer& c) { return a *= c; }
  friend LaurentScalar operator*(const Integer& c, LaurentScalar a) { return a *= c; }

  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    require_same_scaling(a.scaling_, b.scaling_, "LaurentScalar *");
    LaurentScalar r(a.scaling_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }

  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    return a.scaling_ == b.scaling_ && a.terms_ == b.terms_;
  }

 private:
  Scaling scaling_;
  Terms terms_;
};

/// Values of traces: sum_k c_k q^{k alpha/2} (symbolic) or q^{k/2} (numeric).
using QAlphaPoly = LaurentScalar;

/// Flat exponent vector of length n; slot i is the exponent of X_{i+1}.
using Exponent = std::vector<int>;

inline std::string format_exponent(const Composition& c, const Exponent& e) {
  std::string s = "X^(";
  for (std::size_t a = 0; a < c.length(); ++a) {
    if (a) s += "|";
    for (int i = c.offset(a); i < c.offset(a + 1); ++i) {
      if (i != c.offset(a)) s += ",";
      s += std::to_string(e[static_cast<std::size_t>(i)]);
    }
  }
  return s + ")";
}

/// True if each block segment of e is weakly decreasing.
inline bool is_orbit_representative(const Composition& c, const Exponent& e) {
  if (static_cast<int>(e.size()) != c.total()) return false;
  for (std::size_t a = 0; a < c.length(); ++a) {
    auto first = e.begin() + c.offset(a);
    auto last = e.begin() + c.offset(a + 1);
    if (!std::is_sorted(first, last, std::greater<>())) return false;
  }
  return true;
}

/// Calls f(m) for every distinct monomial m in the orbit of rep under the
/// product of per-block symmetric groups.
template <class F>
void for_each_orbit_member(const Composition& c, const Exponent& rep, F&& f) {
  Exponent cur = rep;
  for (std::size_t a = 0; a < c.length(); ++a)
    std::sort(cur.begin() + c.offset(a), cur.begin() + c.offset(a + 1));
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == c.length()) {
      f(static_cast<const Exponent&>(cur));
      return;
    }
    auto first = cur.begin() + c.offset(a);
    auto last = cur.begin() + c.offset(a + 1);
    do {
      self(self, a + 1);
    } while (std::next_permutation(first, last));
  };
  rec(rec, 0);
}

/// A Laurent polynomial in X_1..X_n invariant under the symmetric group of
/// each block of a composition, stored as orbit representatives (each block
/// weakly decreasing) with Laurent-scalar coefficients. Over the trivial
/// composition (n) this is a fully symmetric polynomial, the Satake image of
/// a spherical function on GL_n.
class LeviPoly {
 public:
  using Terms = std::map<Exponent, LaurentScalar>;

  LeviPoly() = default;
  LeviPoly(Composition c, Scaling scaling) : composition_(std::move(c)), scaling_(scaling) {}

  /// Builds from orbit representatives. Throws if a key is not a
  /// representative or a coefficient has the wrong scaling.
  LeviPoly(Composition c, Scaling scaling, Terms terms)
      : composition_(std::move(c)), scaling_(scaling) {
    for (auto& [e, coeff] : terms) add_orbit(e, coeff);
  }

  static LeviPoly unit(Composition c, Scaling scaling = Scaling::symbolic) {
    LeviPoly p(c, scaling);
    p.add_orbit(Exponent(static_cast<std::size_t>(c.total()), 0), LaurentScalar::constant(1, scaling));
    return p;
  }

  /// Re-normalizes an expanded (monomial-by-monomial) polynomial that is
  /// known to be block-symmetric: keeps the representative monomials only.
  static LeviPoly from_expanded(Composition c, Scaling scaling, const Terms& expanded) {
    LeviPoly p(std::move(c), scaling);
    for (const auto& [e, coeff] : expanded)
      if (is_orbit_representative(p.composition_, e)) p.add_orbit(e, coeff);
    return p;
  }

  const Composition& composition() const { return composition_; }
  int rank() const { return composition_.total(); }
  Scaling scaling() const { return scaling_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t orbit_count() const { return terms_.size(); }

  LaurentScalar coefficient(const Exponent& rep) const {
    auto it = terms_.find(rep);
    return it == terms_.end() ? LaurentScalar(scaling_) : it->second;
  }

  /// Adds coeff * (orbit sum of rep).
  void add_orbit(const Exponent& rep, const LaurentScalar& coeff) {
    if (!is_orbit_representative(composition_, rep))
      throw invalid_argument("not an orbit representative for " + composition_.to_string() + ": " +
                             format_exponent(composition_, rep));
    require_same_scaling(scaling_, coeff.scaling(), "LeviPoly coefficient");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(rep, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Monomial-by-monomial expansion.
  Terms expand() const {
    Terms out;
    for (const auto& [rep, coeff] : terms_)
      for_each_orbit_member(composition_, rep, [&](const Exponent& m) { out.emplace(m, coeff); });
    return out;
  }

  LeviPoly& operator+=(const LeviPoly& o) {
    check_compatible(o, "LeviPoly +");
    for (const auto& [e, c] : o.terms_) add_orbit(e, c);
    return *this;
  }
  LeviPoly& operator-=(const LeviPoly& o) {
    check_compatible(o, "LeviPoly -");
    for (const auto& [e, c] : o.terms_) add_orbit(e, -c);
    return *this;
  }

  friend LeviPoly operator+(LeviPoly a, const LeviPoly& b) { return a += b; }
  friend LeviPoly operator-(LeviPoly a, const LeviPoly& b) { return a -= b; }

  friend LeviPoly operator*(const LaurentScalar& s, const LeviPoly& p) {
    require_same_scaling(s.scaling(), p.scaling_, "scalar * LeviPoly");
    LeviPoly r(p.composition_, p.scaling_);
    for (const auto& [e, c] : p.terms_) r.add_orbit(e, s * c);
    return r;
  }

  friend bool operator==(const LeviPoly& a, const LeviPoly& b) {
    return a.composition_ == b.composition_ && a.scaling_ == b.scaling_ && a.terms_ == b.terms_;
  }

  void check_compatible(const LeviPoly& o, const char* where) const {
    if (composition_ != o.composition_)
      throw composition_mismatch(std::string(where) + ": compositions " + composition_.to_string() +
                                 " and " + o.composition_.to_string() + " differ");
    require_same_scaling(scaling_, o.scaling_, where);
  }

 private:
  Composition composition_;
  Scaling scaling_ = Scaling::symbolic;
  Terms terms_;
};

/// Product of block-symmetric polynomials; on the Satake side this is the
/// convolution of the corresponding Hecke functions.
inline LeviPoly poly_mul(const LeviPoly& a, const LeviPoly& b) {
  a.check_compatible(b, "poly_mul");
  const Composition& c = a.composition();
  const auto ea = a.expand();
  const auto eb = b.expand();
  LeviPoly::Terms acc;
  Exponent sum(static_cast<std::size_t>(c.total()));
  for (const auto& [ma, ca] : ea) {
    for (const auto& [mb, cb] : eb) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ma[i] + mb[i];
      if (!is_orbit_representative(c, sum)) continue;
      auto [it, inserted] = acc.try_emplace(sum, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return LeviPoly(c, a.scaling(), std::move(acc));
}

inline LeviPoly operator*(const LeviPoly& a, const LeviPoly& b) { return poly_mul(a, b); }

/// External tensor product: a polynomial over the concatenated composition.
inline LeviPoly tensor(const std::vector<LeviPoly>& factors) {
  if (factors.empty()) throw invalid_argument("tensor of no factors");
  std::vector<int> parts;
  for (const auto& f : factors) {
    require_same_scaling(factors.front().scaling(), f.scaling(), "tensor");
    parts.insert(parts.end(), f.composition().parts().begin(), f.composition().parts().end());
  }
  const Scaling scaling = factors.front().scaling();
  LeviPoly::Terms acc{{Exponent{}, LaurentScalar::constant(1, scaling)}};
  for (const auto& f : factors) {
    LeviPoly::Terms next;
    for (const auto& [e1, c1] : acc) {
      for (const auto& [e2, c2] : f.terms()) {
        Exponent e = e1;
        e.insert(e.end(), e2.begin(), e2.end());
        next.emplace(std::move(e), c1 * c2);
      }
    }
    acc = std::move(next);
  }
  return LeviPoly(Composition(std::move(parts)), scaling, std::move(acc));
}

/// An evaluation point X_i = q^{e_i} with half-integral e_i, stored as the
/// integers 2 e_i. The composition records which Levi the point belongs to.
class HeckePoint {
 public:
  HeckePoint(Composition c, std::vector<int> half_exponents)
      : composition_(std::move(c)), halves_(std::move(half_exponents)) {
    if (static_cast<int>(halves_.size()) != composition_.total())
      throw invalid_argument("HeckePoint: slot count " + std::to_string(halves_.size()) +
                             " differs from rank " + std::to_string(composition_.total()));
  }

  const Composition& composition() const { return composition_; }
  const std::vector<int>& half_exponents() const { return halves_; }
  std::size_t size() const { return halves_.size(); }
  Rational exponent(std::size_t i) const { return Rational(halves_[i], 2); }

  friend bool operator==(const HeckePoint&, const HeckePoint&) = default;

 private:
  Composition composition_;
  std::vector<int> halves_;
};

/// Substitutes X_i -> q^{e_i}. In symbolic mode a monomial X^{alpha m} goes to
/// q^{alpha <m,e>}, so the result is again a combination of q^{k alpha/2}.
inline QAlphaPoly eval_point(const LeviPoly& p, const HeckePoint& pt) {
  if (static_cast<int>(pt.size()) != p.rank())
    throw invalid_argument("eval_point: point has " + std::to_string(pt.size()) +
                           " slots, polynomial has rank " + std::to_string(p.rank()));
  const auto& h = pt.half_exponents();
  QAlphaPoly out(p.scaling());
  for (const auto& [rep, coeff] : p.terms()) {
    for_each_orbit_member(p.composition(), rep, [&](const Exponent& m) {
      int shift = 0;
      for (std::size_t i = 0; i < m.size(); ++i) shift += m[i] * h[i];
      out += coeff.shifted(shift);
    });
  }
  return out;
}

/// Total X-degree d shared by every monomial (in units of alpha in symbolic
/// mode). A homogeneous spherical function of degree d is supported on
/// {g : |det g| = q^{-d}}.
inline int homogeneous_degree(const LeviPoly& p) {
  if (p.is_zero()) throw invalid_argument("homogeneous_degree of the zero polynomial");
  std::optional<std::pair<int, const Exponent*>> seen;
  for (const auto& [rep, coeff] : p.terms()) {
    int d = 0;
    for (int x : rep) d += x;
    if (!seen) {
      seen.emplace(d, &rep);
    } else if (seen->first != d) {
      throw inhomogeneous_error(format_exponent(p.composition(), *seen->second),
                                format_exponent(p.composition(), rep));
    }
  }
  return seen->first;
}

}  // namespace ctrace
