#pragma once

// Canonical JSON, LaTeX and plain-text renderings of the algebra types, and
// the JSON schema of the datum at p.
//
// JSON objects have sorted keys (nlohmann::json stores objects in std::map)
// and coefficients are decimal strings, so equal values serialize to
// byte-identical text.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctrace/algebra.hpp"
#include "ctrace/pel.hpp"

namespace ctrace {

using Json = nlohmann::json;

inline std::string to_decimal(const Integer& x) { return x.str(); }

inline std::string to_decimal(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Integer parse_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (!j.is_string()) throw invalid_argument("expected an integer or a decimal string");
  const auto s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
    throw invalid_argument("malformed integer '" + s + "'");
  return Integer(s);
}

inline Scaling parse_scaling(const std::string& s) {
  if (s == "symbolic") return Scaling::symbolic;
  if (s == "numeric") return Scaling::numeric;
  throw invalid_argument("unknown scaling '" + s + "'");
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json to_json(const LaurentScalar& x) {
  Json terms = Json::array();
  for (const auto& [k, c] : x.terms()) terms.push_back({{"coefficient", to_decimal(c)}, {"half_exponent", k}});
  return {{"scaling", to_string(x.scaling())}, {"terms", terms}};
}

inline LaurentScalar laurent_from_json(const Json& j) {
  LaurentScalar x(parse_scaling(j.at("scaling").get<std::string>()));
  for (const auto& t : j.at("terms")) x.add_term(t.at("half_exponent").get<int>(), parse_integer(t.at("coefficient")));
  return x;
}

inline Json to_json(const Composition& c) { return c.parts(); }

inline Json to_json(const LeviPoly& p) {
  const auto& c = p.composition();
  Json terms = Json::array();
  for (const auto& [e, coeff] : p.terms()) {
    Json blocks = Json::array();
    for (std::size_t a = 0; a < c.length(); ++a)
      blocks.push_back(std::vector<int>(e.begin() + c.offset(a), e.begin() + c.offset(a + 1)));
    terms.push_back({{"coefficient", to_json(coeff)}, {"exponent", blocks}});
  }
  return {{"composition", to_json(c)}, {"scaling", to_string(p.scaling())}, {"terms", terms}};
}

inline LeviPoly levipoly_from_json(const Json& j) {
  Composition c(j.at("composition").get<std::vector<int>>());
  LeviPoly p(c, parse_scaling(j.at("scaling").get<std::string>()));
  for (const auto& t : j.at("terms")) {
    Exponent e;
    const auto& blocks = t.at("exponent");
    if (blocks.size() != c.length()) throw invalid_argument("LeviPoly JSON: block count mismatch");
    for (std::size_t a = 0; a < c.length(); ++a) {
      const auto block = blocks[a].get<std::vector<int>>();
      if (static_cast<int>(block.size()) != c.part(a)) throw invalid_argument("LeviPoly JSON: block size mismatch");
      e.insert(e.end(), block.begin(), block.end());
    }
    p.add_orbit(e, laurent_from_json(t.at("coefficient")));
  }
  return p;
}

inline Json to_json(const PELDatumP& d) {
  Json places = Json::array();
  for (const auto& pl : d.places) places.push_back({{"f", pl.f}, {"name", pl.name}, {"signatures", pl.signatures}});
  return {{"e_E", d.e_E}, {"n", d.n}, {"places", places}};
}

/// Reads {"n": int, "e_E": int, "places": [{"name", "f", "signatures"}]}
/// and validates it.
inline PELDatumP datum_from_json(const Json& j) {
  if (!j.is_object()) throw invalid_argument("datum: expected a JSON object");
  for (const auto& key : {"n", "e_E", "places"})
    if (!j.contains(key)) throw invalid_argument(std::string("datum: missing key '") + key + "'");
  PELDatumP d;
  try {
    d.n = j.at("n").get<int>();
    d.e_E = j.at("e_E").get<int>();
    for (const auto& pj : j.at("places")) {
      Place pl;
      pl.name = pj.at("name").get<std::string>();
      pl.f = pj.at("f").get<int>();
      pl.signatures = pj.at("signatures").get<std::vector<int>>();
      d.places.push_back(std::move(pl));
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("datum: ") + e.what());
  }
  validate(d);
  return d;
}

// ---------------------------------------------------------------------------
// Human-readable renderings
// ---------------------------------------------------------------------------

struct RenderOptions {
  /// Name of the base; P at a concrete alpha is a polynomial in p.
  std::string base = "q";
};

namespace detail {

/// Plain-text power of the base for exponent k/2 (times alpha if symbolic).
inline std::string plain_power(int k, Scaling scaling, const std::string& base) {
  if (k == 0) return "";
  const bool sym = scaling == Scaling::symbolic;
  const std::string unit = sym ? "α" : "";
  std::string e;
  if (k % 2 == 0) {
    const int m = k / 2;
    if (m == 1) return base + (sym ? "^α" : "");
    if (!sym && m > 0) return base + "^" + std::to_string(m);
    e = (m == -1 && sym) ? "-α" : std::to_string(m) + unit;
  } else {
    e = std::to_string(k) + unit + "/2";
    if (k == 1) e = (sym ? unit : "1") + "/2";
    if (k == -1) e = "-" + (sym ? unit : std::string("1")) + "/2";
  }
  return base + "^(" + e + ")";
}

inline std::string latex_power(int k, Scaling scaling, const std::string& base) {
  if (k == 0) return "";
  const bool sym = scaling == Scaling::symbolic;
  std::string e;
  if (k % 2 == 0) {
    const int m = k / 2;
    if (sym)
      e = m == 1 ? "\\alpha" : m == -1 ? "-\\alpha" : std::to_string(m) + "\\alpha";
    else
      e = std::to_string(m);
    if (!sym && m == 1) return base;
  } else {
    const std::string num = sym ? (k == 1 ? "\\alpha" : k == -1 ? "-\\alpha" : std::to_string(k) + "\\alpha")
                                : std::to_string(k);
    e = num + "/2";
  }
  return base + "^{" + e + "}";
}

template <class PowerFn>
std::string render_sum(const LaurentScalar& x, const std::string& base, PowerFn power) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    const bool negative = c < 0;
    const Integer mag = negative ? Integer(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const std::string pw = power(k, x.scaling(), base);
    if (pw.empty())
      out += mag.str();
    else
      out += (mag == 1 ? std::string() : mag.str()) + pw;
    first = false;
  }
  return out;
}

}  // namespace detail

inline std::string to_plain(const LaurentScalar& x, const RenderOptions& opt = {}) {
  return detail::render_sum(x, opt.base, detail::plain_power);
}

inline std::string to_latex(const LaurentScalar& x, const RenderOptions& opt = {}) {
  return detail::render_sum(x, opt.base, detail::latex_power);
}

/// Orbit sums are written m[e_1,..|..] (per-block monomial symmetric
/// polynomials; exponents in units of alpha in symbolic mode).
inline std::string to_plain(const LeviPoly& p, const RenderOptions& opt = {}) {
  if (p.is_zero()) return "0";
  const auto& c = p.composition();
  std::string out;
  bool first = true;
  for (const auto& [e, coeff] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    const std::string cs = to_plain(coeff, opt);
    if (coeff.terms().size() > 1)
      out += "(" + cs + ")·";
    else if (cs != "1")
      out += cs + "·";
    out += "m[";
    for (std::size_t a = 0; a < c.length(); ++a) {
      if (a) out += "|";
      for (int i = c.offset(a); i < c.offset(a + 1); ++i) {
        if (i != c.offset(a)) out += ",";
        out += std::to_string(e[static_cast<std::size_t>(i)]);
      }
    }
    out += "]";
  }
  return out;
}

inline std::string to_latex(const LeviPoly& p, const RenderOptions& opt = {}) {
  if (p.is_zero()) return "0";
  const auto& c = p.composition();
  std::string out;
  bool first = true;
  for (const auto& [e, coeff] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    const std::string cs = to_latex(coeff, opt);
    if (coeff.terms().size() > 1)
      out += "\\left(" + cs + "\\right) ";
    else if (cs != "1")
      out += cs + "\\, ";
    out += "m_{";
    for (std::size_t a = 0; a < c.length(); ++a) {
      if (a) out += "\\mid ";
      out += "(";
      for (int i = c.offset(a); i < c.offset(a + 1); ++i) {
        if (i != c.offset(a)) out += ",";
        out += std::to_string(e[static_cast<std::size_t>(i)]);
      }
      out += ")";
    }
    out += "}";
    if (p.scaling() == Scaling::symbolic) out += "(X^{\\alpha})";
  }
  return out;
}

}  // namespace ctrace
