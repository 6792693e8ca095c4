#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctrace/algebra.hpp"
#include "ctrace/hecke.hpp"
#include "ctrace/traces.hpp"

namespace ctrace {

// ---------------------------------------------------------------------------
// The datum at p
// ---------------------------------------------------------------------------

/// A place of F^+ above p. `signatures` holds s_v for the f embeddings
/// v in V(place), indexed along the Frobenius cycle.
struct Place {
  std::string name;
  int f = 1;
  std::vector<int> signatures;

  int signature_sum() const { return std::accumulate(signatures.begin(), signatures.end(), 0); }
  bool is_ramified() const { return signature_sum() > 0; }

  friend bool operator==(const Place&, const Place&) = default;
};

/// The local-at-p shape of a simple PEL datum: rank n, e_E = [E_p : Q_p],
/// and the places of F^+ above p.
struct PELDatumP {
  int n = 1;
  int e_E = 1;
  std::vector<Place> places;

  std::vector<const Place*> ramified() const {
    std::vector<const Place*> out;
    for (const auto& pl : places)
      if (pl.is_ramified()) out.push_back(&pl);
    return out;
  }
  int ramified_count() const { return static_cast<int>(ramified().size()); }

  friend bool operator==(const PELDatumP&, const PELDatumP&) = default;
};

struct ValidationReport {
  std::vector<std::string> warnings;
  bool clean() const { return warnings.empty(); }
};

/// Structural problems throw; a ramified place with gcd(s_place, n) != 1
/// only produces a warning (P stays computable).
inline ValidationReport validate(const PELDatumP& d) {
  if (d.n < 1) throw invalid_argument("datum: n must be positive");
  if (d.e_E < 1) throw invalid_argument("datum: e_E must be positive");
  if (d.places.empty()) throw invalid_argument("datum: at least one place is required");
  ValidationReport report;
  for (const auto& pl : d.places) {
    const std::string tag = "place '" + pl.name + "'";
    if (pl.f < 1) throw invalid_argument(tag + ": residue degree f must be positive");
    if (static_cast<int>(pl.signatures.size()) != pl.f)
      throw invalid_argument(tag + ": expected " + std::to_string(pl.f) + " signatures, got " +
                             std::to_string(pl.signatures.size()));
    for (int s : pl.signatures)
      if (s < 0 || s > d.n)
        throw invalid_argument(tag + ": signature " + std::to_string(s) + " outside [0, n]");
    // Frobenius^{e_E} orbits on Z/f are the residue classes mod gcd(f, e_E).
    const int g = std::gcd(pl.f, d.e_E);
    for (int v = 0; v < pl.f; ++v)
      if (pl.signatures[static_cast<std::size_t>(v)] != pl.signatures[static_cast<std::size_t>(v % g)])
        throw invalid_argument(tag + ": signatures are not constant on Frobenius^e_E orbits");
    const int s = pl.signature_sum();
    if (s > 0 && std::gcd(s, d.n) != 1)
      report.warnings.push_back(tag + ": s = " + std::to_string(s) + " is not prime to n = " +
                                std::to_string(d.n) + " (basic isocrystal not simple)");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Slopes and orbits
// ---------------------------------------------------------------------------

struct PlaceSlope {
  std::string name;
  Rational slope;
  bool simple = false;
  bool etale = false;
};

/// The basic isocrystal at each place has the single slope s/n; it is simple
/// iff gcd(n, s) = 1.
inline std::vector<PlaceSlope> basic_slopes(const PELDatumP& d) {
  validate(d);
  std::vector<PlaceSlope> out;
  for (const auto& pl : d.places) {
    const int s = pl.signature_sum();
    out.push_back({pl.name, Rational(s, d.n), std::gcd(s, d.n) == 1, s == 0});
  }
  return out;
}

struct Orbit {
  /// alpha_v = [E_{p,alpha}[v] : Q_p].
  int degree = 0;
  int signature = 0;
  std::vector<int> members;
};

struct PlaceOrbits {
  std::string name;
  int f = 1;
  std::vector<Orbit> orbits;
  std::size_t orbit_count() const { return orbits.size(); }
};

struct OrbitData {
  int alpha = 1;
  int e_E = 1;
  std::vector<PlaceOrbits> places;
};

/// Orbits of Gal(/E_{p,alpha}) (Frobenius^{e_E alpha}) on the embeddings of
/// each place: gcd(f, e_E alpha) orbits, each of degree lcm(e_E alpha, f).
inline OrbitData orbit_data(const PELDatumP& d, int alpha) {
  if (alpha < 1) throw invalid_argument("orbit_data: alpha must be positive");
  validate(d);
  OrbitData out{alpha, d.e_E, {}};
  const int step = d.e_E * alpha;
  for (const auto& pl : d.places) {
    PlaceOrbits po{pl.name, pl.f, {}};
    const int g = std::gcd(pl.f, step);
    const int degree = std::lcm(step, pl.f);
    for (int r = 0; r < g; ++r) {
      Orbit o{degree, pl.signatures[static_cast<std::size_t>(r)], {}};
      for (int v = r; v < pl.f; v += g) o.members.push_back(v);
      po.orbits.push_back(std::move(o));
    }
    out.places.push_back(std::move(po));
  }
  return out;
}

/// Smallest M with f | e_E M at every place: for alpha = 0 mod M every orbit
/// is a singleton (the split regime), and the orbit structure depends only on
/// alpha mod M.
inline int split_modulus(const PELDatumP& d) {
  int m = 1;
  for (const auto& pl : d.places) m = std::lcm(m, pl.f / std::gcd(pl.f, d.e_E));
  return m;
}

// ---------------------------------------------------------------------------
// The polynomial P(q^alpha)
// ---------------------------------------------------------------------------

/// Residue cardinality used inside the local factors at a place with f > 1.
///   absolute_p: q = p, f_{n, alpha_v, s_v} with X-exponent alpha_v.
///   local_q:    q = p^f, degree alpha_v/f, exponents rescaled by f at the end.
/// Both give the same P; the flag exists to make that checkable.
enum class ResidueConvention { absolute_p, local_q };

/// The local factor prod_{v in V_alpha(place)} f_{n alpha_v s_v} at one place.
inline SphericalFunction local_kottwitz_factor(int n, const PlaceOrbits& po,
                                               ResidueConvention conv = ResidueConvention::absolute_p) {
  const int residue = conv == ResidueConvention::local_q ? po.f : 1;
  SphericalFunction acc{n, residue, LeviPoly::unit(Composition::whole(n), Scaling::numeric)};
  for (const auto& o : po.orbits)
    acc = convolve(acc, kottwitz_function_numeric(n, o.signature, o.degree / residue, residue));
  return acc;
}

/// P at a concrete alpha: a Laurent polynomial in p^{1/2}.
inline QAlphaPoly polynomial_P(const PELDatumP& d, int alpha,
                               ResidueConvention conv = ResidueConvention::absolute_p) {
  const auto orbits = orbit_data(d, alpha);
  QAlphaPoly total = LaurentScalar::constant(1, Scaling::numeric);
  for (std::size_t i = 0; i < d.places.size(); ++i) {
    if (!d.places[i].is_ramified()) continue;
    const auto& po = orbits.places[i];
    auto local = compact_trace_trivial(local_kottwitz_factor(d.n, po, conv));
    if (conv == ResidueConvention::local_q) local = local.exponents_scaled(po.f);
    total = total * local;
  }
  return total;
}

/// P as a polynomial in q^alpha (q = p^{e_E}) for alpha = 0 mod
/// `alpha_divisible_by` (0 means the split modulus). Requires that every
/// ramified place is split for such alpha.
inline QAlphaPoly polynomial_P_symbolic(const PELDatumP& d, int alpha_divisible_by = 0) {
  validate(d);
  const int m = alpha_divisible_by == 0 ? split_modulus(d) : alpha_divisible_by;
  if (m < 1) throw invalid_argument("polynomial_P_symbolic: divisibility must be positive");
  QAlphaPoly total = LaurentScalar::constant(1);
  for (const auto& pl : d.places) {
    if (!pl.is_ramified()) continue;
    if ((d.e_E * m) % pl.f != 0)
      throw invalid_argument("polynomial_P_symbolic: place '" + pl.name + "' with f = " + std::to_string(pl.f) +
                             " is not split for alpha divisible by " + std::to_string(m));
    SphericalFunction local = make_spherical(LeviPoly::unit(Composition::whole(d.n)));
    for (int s : pl.signatures) local = convolve(local, kottwitz_function(d.n, s));
    total = total * compact_trace_trivial(local);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Residue-class interpolation
// ---------------------------------------------------------------------------

struct InterpolationRequest {
  int residue = 0;
  /// 0: use split_modulus.
  int modulus = 0;
  /// Degree of the fitted polynomial in q^alpha; negative: read off the first sample.
  int degree = -1;
  /// Number of sampled alphas; 0: degree + 2 (one checksum point).
  int samples = 0;
  /// The integer at which p is evaluated for the rational fit.
  long p_value = 2;
  ResidueConvention convention = ResidueConvention::absolute_p;
};

struct InterpolationResult {
  int modulus = 1;
  int residue = 0;
  int degree = 0;
  std::vector<int> alphas;
  std::vector<QAlphaPoly> values;
  /// Pol(X) = sum_j coefficients[j] X^j with X = q^alpha.
  std::vector<Rational> coefficients;
  /// y - Pol(x) at the held-out samples.
  std::vector<Rational> residuals;
  /// Pol(q^alpha) equals P_alpha exactly as Laurent polynomials in p.
  bool exact_match = false;
  bool success = false;
  std::string message;
};

namespace detail {

inline std::optional<Rational> evaluate_at(const QAlphaPoly& v, long p) {
  Rational total = 0;
  for (const auto& [k, c] : v.terms()) {
    if (k % 2 != 0) return std::nullopt;
    const int e = k / 2;
    Rational term = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e < 0 ? -e : e));
    if (e < 0) term = Rational(1) / term;
    total += Rational(c) * term;
  }
  return total;
}

inline Rational pow_rational(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace detail

/// Fits P at alphas in one class mod M by a polynomial in q^alpha through
/// degree+1 samples and checks the remaining samples against it.
inline InterpolationResult interpolate_P(const PELDatumP& d, const InterpolationRequest& req) {
  validate(d);
  InterpolationResult out;
  out.modulus = req.modulus == 0 ? split_modulus(d) : req.modulus;
  if (out.modulus < 1) throw invalid_argument("interpolate_P: modulus must be positive");
  if (req.p_value < 2) throw invalid_argument("interpolate_P: p must be at least 2");
  out.residue = ((req.residue % out.modulus) + out.modulus) % out.modulus;
  const int first = out.residue == 0 ? out.modulus : out.residue;

  const QAlphaPoly first_value = polynomial_P(d, first, req.convention);
  if (req.degree >= 0) {
    out.degree = req.degree;
  } else {
    const int step = 2 * d.e_E * first;
    const int top = first_value.max_exponent().value_or(0);
    out.degree = top <= 0 ? 0 : (top + step - 1) / step;
  }
  const int count = req.samples == 0 ? out.degree + 2 : req.samples;
  if (count < 2) throw invalid_argument("interpolate_P: at least two samples are needed (one fit point and one checksum)");
  if (count < out.degree + 2)
    throw invalid_argument("interpolate_P: " + std::to_string(count) + " samples cannot fit degree " +
                           std::to_string(out.degree) + " with a checksum; need " +
                           std::to_string(out.degree + 2));

  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (int i = 0; i < count; ++i) {
    const int alpha = first + i * out.modulus;
    out.alphas.push_back(alpha);
    out.values.push_back(i == 0 ? first_value : polynomial_P(d, alpha, req.convention));
    auto y = detail::evaluate_at(out.values.back(), req.p_value);
    if (!y) {
      out.message = "P at alpha = " + std::to_string(alpha) + " has a half-integral power of p";
      return out;
    }
    xs.push_back(detail::pow_rational(Rational(req.p_value), d.e_E * alpha));
    ys.push_back(*y);
  }

  // Newton divided differences through the first degree+1 points.
  const std::size_t m = static_cast<std::size_t>(out.degree) + 1;
  std::vector<Rational> dd(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // Expand the Newton form into monomial coefficients.
  std::vector<Rational> coeffs(m, Rational(0));
  for (std::size_t i = m; i-- > 0;) {
    // coeffs <- coeffs * (X - xs[i]) + dd[i]
    std::vector<Rational> next(m, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
      if (coeffs[j] == 0) continue;
      if (j + 1 < m) next[j + 1] += coeffs[j];
      next[j] -= coeffs[j] * xs[i];
    }
    next[0] += dd[i];
    coeffs = std::move(next);
  }
  out.coefficients = coeffs;

  auto eval_fit = [&](const Rational& x) {
    Rational r = 0;
    for (std::size_t j = m; j-- > 0;) r = r * x + coeffs[j];
    return r;
  };
  bool checks_ok = true;
  for (std::size_t i = m; i < xs.size(); ++i) {
    out.residuals.push_back(ys[i] - eval_fit(xs[i]));
    if (out.residuals.back() != 0) checks_ok = false;
  }

  out.exact_match = std::all_of(coeffs.begin(), coeffs.end(),
                                [](const Rational& c) { return denominator(c) == 1; });
  for (std::size_t i = 0; out.exact_match && i < out.alphas.size(); ++i) {
    QAlphaPoly fit(Scaling::numeric);
    for (std::size_t j = 0; j < m; ++j)
      fit.add_term(static_cast<int>(2 * d.e_E * out.alphas[i] * static_cast<int>(j)), numerator(coeffs[j]));
    if (!(fit == out.values[i])) out.exact_match = false;
  }

  out.success = checks_ok && out.exact_match;
  if (!checks_ok)
    out.message = "checksum sample disagrees with the fitted polynomial";
  else if (!out.exact_match)
    out.message = "fit agrees at p = " + std::to_string(req.p_value) + " but not coefficient-wise";
  else
    out.message = "ok";
  return out;
}

// ---------------------------------------------------------------------------
// Dimension of the basic stratum
// ---------------------------------------------------------------------------

inline Integer ceil_div(long long a, long long b) {
  // b > 0
  long long q = a / b;
  if (a % b != 0 && ((a > 0) == (b > 0))) ++q;
  return Integer(q);
}

struct DimensionFormula {
  Rational value;
  bool integral = true;
};

/// The closed formula as printed:
///   sum_{place in Ram} [ sum_v s_v(1-s_v)/2 + sum_{j=0}^{s-1} ceil(j n / s) ].
inline DimensionFormula dimension_paper(const PELDatumP& d) {
  validate(d);
  Rational total = 0;
  for (const auto* pl : d.ramified()) {
    for (int sv : pl->signatures) total += Rational(sv * (1 - sv), 2);
    const int s = pl->signature_sum();
    for (int j = 0; j < s; ++j) total += Rational(ceil_div(static_cast<long long>(j) * d.n, s));
  }
  return {total, denominator(total) == 1};
}

/// Dimension read from the top power of q^alpha in the split-regime P.
inline int dimension_degree(const PELDatumP& d) {
  const auto P = polynomial_P_symbolic(d);
  if (P.is_zero()) throw error("dimension_degree: P vanishes identically");
  const int top = *P.max_exponent();
  if (top % 2 != 0)
    throw error("dimension_degree: top exponent q^(" + std::to_string(top) + "alpha/2) is not integral in q^alpha");
  if (top < 0) throw error("dimension_degree: negative top degree " + std::to_string(top / 2));
  return top / 2;
}

/// The top monomial X_1 X_{ceil(n/s)} ... X_{ceil((s-1)n/s)} times
/// q^{sum_v s_v(n-s_v)/2}, evaluated at X_i = q^{(2i-1-n)/2}, summed over
/// ramified places: the exponent the dimension argument should produce.
inline Rational dimension_top_monomial(const PELDatumP& d) {
  validate(d);
  Rational total = 0;
  for (const auto* pl : d.ramified()) {
    for (int sv : pl->signatures) total += Rational(sv * (d.n - sv), 2);
    const int s = pl->signature_sum();
    total += Rational(1 - d.n, 2);
    for (int j = 1; j < s; ++j) {
      const Integer idx = ceil_div(static_cast<long long>(j) * d.n, s);
      total += Rational(2 * idx - 1 - d.n, 2);
    }
  }
  return total;
}

struct DimensionAuditRow {
  int n = 0;
  int s = 0;
  Rational paper;
  int degree = 0;
  Rational top_monomial;
  Rational difference;             ///< paper - degree
  int conjectured_difference = 0;  ///< s - 1
};

/// Single place, f = 1, one embedding with signature s.
inline PELDatumP single_embedding_datum(int n, int s) {
  return PELDatumP{n, 1, {Place{"p", 1, {s}}}};
}

inline std::vector<DimensionAuditRow> dimension_audit(const std::vector<std::pair<int, int>>& cases) {
  std::vector<DimensionAuditRow> rows;
  for (const auto& [n, s] : cases) {
    const auto d = single_embedding_datum(n, s);
    DimensionAuditRow r;
    r.n = n;
    r.s = s;
    r.paper = dimension_paper(d).value;
    r.degree = dimension_degree(d);
    r.top_monomial = dimension_top_monomial(d);
    r.difference = r.paper - r.degree;
    r.conjectured_difference = s - 1;
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Point-count assembly
// ---------------------------------------------------------------------------

enum class TermKind { one_dim_unramified, steinberg_type };

inline const char* to_string(TermKind k) {
  return k == TermKind::one_dim_unramified ? "one_dim_unramified" : "steinberg_type";
}

inline TermKind parse_term_kind(const std::string& s) {
  if (s == "one_dim_unramified") return TermKind::one_dim_unramified;
  if (s == "steinberg_type") return TermKind::steinberg_type;
  throw invalid_argument("unknown automorphic term kind '" + s + "'");
}

/// The trace-level shadow of one automorphic representation: its type at p,
/// zeta_pi (a Weil q-number of weight w/n) raised to alpha, and
/// Tr(f^p, pi^p). All values are exact and in the scaling of P.
struct AutomorphicTermInput {
  TermKind kind = TermKind::one_dim_unramified;
  std::string zeta_name;
  int weight = 0;
  LaurentScalar zeta_power;
  LaurentScalar hecke_trace;
};

struct PointCount {
  LaurentScalar value;
  int sign = 1;  ///< (-1)^{(n-1) #Ram}
  std::vector<std::string> warnings;
};

/// P * [ sum_{one-dim} zeta^alpha Tr + eps sum_{Steinberg type} zeta^alpha Tr ].
/// `alpha` is only used for the weight check of numeric-mode zeta powers.
inline PointCount assemble_point_count(const QAlphaPoly& P, const PELDatumP& d,
                                       const std::vector<AutomorphicTermInput>& terms, int alpha = 1) {
  validate(d);
  PointCount out;
  out.sign = ((d.n - 1) * d.ramified_count()) % 2 == 0 ? 1 : -1;
  LaurentScalar one_dim(P.scaling());
  LaurentScalar steinberg(P.scaling());
  for (const auto& t : terms) {
    const auto contribution = t.zeta_power * t.hecke_trace;
    (t.kind == TermKind::one_dim_unramified ? one_dim : steinberg) += contribution;

    // |zeta^alpha| = q^{alpha w/(2n)}: k n = w (symbolic) or k n = e_E alpha w (numeric).
    const auto& zt = t.zeta_power.terms();
    if (zt.size() == 1 && abs(zt.begin()->second) == 1) {
      const long long k = zt.begin()->first;
      const long long expected = P.scaling() == Scaling::symbolic
                                     ? static_cast<long long>(t.weight)
                                     : static_cast<long long>(d.e_E) * alpha * t.weight;
      if (k * d.n != expected)
        out.warnings.push_back("term '" + t.zeta_name + "': |zeta^alpha| does not match weight " +
                               std::to_string(t.weight) + "/n");
    }
  }
  out.value = P * (one_dim + steinberg * Integer(out.sign));
  return out;
}

}  // namespace ctrace
