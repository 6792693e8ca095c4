#pragma once

// Cross-route sweeps: every case compares a production route with another
// route or with the brute-force oracle. Shared by the CLI `verify` command
// and the acceptance binary.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ctrace/chambers.hpp"
#include "ctrace/hecke.hpp"
#include "ctrace/oracle.hpp"
#include "ctrace/traces.hpp"

namespace ctrace::verify {

/// A case returns a failure description, or nothing when it passes.
using Case = std::function<std::optional<std::string>()>;

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  double seconds = 0;
  bool passed() const { return failures.empty(); }
};

/// Runs cases on `jobs` threads (strided split); failures keep case order.
inline SuiteResult run_cases(std::string name, const std::vector<Case>& cases, int jobs = 1) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out;
  out.name = std::move(name);
  out.cases = cases.size();
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::optional<std::string>> results(cases.size());
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < cases.size(); i += workers) results[i] = cases[i]();
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) tasks.push_back(std::async(std::launch::async, work, w));
    for (auto& t : tasks) t.get();
  }
  for (auto& r : results)
    if (r) out.failures.push_back(std::move(*r));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace detail {

inline std::string tag(int n, int s, const Composition& c) {
  return "n=" + std::to_string(n) + " s=" + std::to_string(s) + " c=" + c.to_string();
}

}  // namespace detail

/// Closed form = regrouping = oracle for all compositions, n <= max_n, 0 <= s <= n.
inline std::vector<Case> constant_term_cases(int max_n) {
  std::vector<Case> cases;
  for (int n = 1; n <= max_n; ++n)
    for (int s = 0; s <= n; ++s)
      for (const auto& c : enumerate_compositions(n))
        cases.push_back([n, s, c]() -> std::optional<std::string> {
          const auto regrouped = constant_term(kottwitz_function(n, s), c);
          if (regrouped != constant_term_closed_form(n, s, c)) return detail::tag(n, s, c) + ": closed form differs";
          if (regrouped != oracle::oracle_constant_term(n, s, c)) return detail::tag(n, s, c) + ": oracle differs";
          return std::nullopt;
        });
  return cases;
}

/// The equal-ratio part of each constant term is nonzero exactly when
/// compact_constant_term returns a value, and then its only block-degree
/// vector is the returned (s_a), which is also the oracle's unique survivor.
inline std::vector<Case> chicfp_cases(int max_n) {
  std::vector<Case> cases;
  for (int n = 1; n <= max_n; ++n)
    for (int s = 1; s <= n; ++s)
      for (const auto& c : enumerate_compositions(n))
        cases.push_back([n, s, c]() -> std::optional<std::string> {
          const auto filtered = chamber_filter(constant_term_closed_form(n, s, c), ChamberKind::equal_ratio);
          const auto compact = compact_constant_term(n, s, c);
          const auto survivors = oracle::oracle_equal_ratio_survivors(s, c);
          if (filtered.is_zero() != !compact.has_value()) return detail::tag(n, s, c) + ": survival verdict differs";
          if (survivors.size() != (compact ? 1u : 0u)) return detail::tag(n, s, c) + ": oracle survivor count differs";
          if (!compact) return std::nullopt;
          if (compact->signature().parts() != survivors.front()) return detail::tag(n, s, c) + ": surviving (s_a) differs";
          for (const auto& [e, coeff] : filtered.terms())
            if (block_degrees(c, e) != survivors.front()) return detail::tag(n, s, c) + ": stray block degree";
          return std::nullopt;
        });
  return cases;
}

/// gcd(n, s) = 1: equal_ratio kills every proper constant term.
inline std::vector<Case> constant_vanish_cases(int max_n) {
  std::vector<Case> cases;
  for (int n = 2; n <= max_n; ++n)
    for (int s = 1; s <= n; ++s) {
      if (std::gcd(n, s) != 1) continue;
      for (const auto& c : enumerate_compositions(n)) {
        if (c.length() == 1) continue;
        cases.push_back([n, s, c]() -> std::optional<std::string> {
          if (!chamber_filter(constant_term(kottwitz_function(n, s), c), ChamberKind::equal_ratio).is_zero())
            return detail::tag(n, s, c) + ": equal-ratio part is nonzero";
          return std::nullopt;
        });
      }
    }
  return cases;
}

/// Filter verdicts against pairing-table verdicts on every exponent vector
/// with entries in [-bound, bound], one case per composition.
inline std::vector<Case> chamber_cases(int max_n, int bound = 3) {
  std::vector<Case> cases;
  for (int n = 1; n <= max_n; ++n)
    for (const auto& c : enumerate_compositions(n))
      cases.push_back([n, c, bound]() -> std::optional<std::string> {
        const auto table = oracle::pairing_table(c);
        Exponent e(static_cast<std::size_t>(n), -bound);
        while (true) {
          // The filter sees a single orbit sum; sort blocks to make e a representative.
          Exponent rep = e;
          for (std::size_t a = 0; a < c.length(); ++a)
            std::sort(rep.begin() + c.offset(a), rep.begin() + c.offset(a + 1), std::greater<>());
          LeviPoly p(c, Scaling::symbolic);
          p.add_orbit(rep, LaurentScalar::constant(1));
          const auto d = block_degrees(c, e);
          for (auto kind : {ChamberKind::acute, ChamberKind::obtuse, ChamberKind::equal_ratio})
            if (chamber_filter(p, kind).is_zero() == oracle::oracle_chamber(d, c, kind, table))
              return "c=" + c.to_string() + " e=" + format_exponent(c, e) + " kind=" + to_string(kind);
          std::size_t i = 0;
          while (i < e.size() && e[i] == bound) e[i++] = -bound;
          if (i == e.size()) break;
          ++e[i];
        }
        return std::nullopt;
      });
  return cases;
}

/// The closed-form monomial family equals the obtuse Borel constant term,
/// and its value at the Steinberg point is eps_{P_0} times the Steinberg trace.
inline std::vector<Case> intro_family_cases(int max_n) {
  std::vector<Case> cases;
  for (int n = 1; n <= max_n; ++n)
    for (int s = 1; s <= n; ++s)
      cases.push_back([n, s]() -> std::optional<std::string> {
        const auto f = kottwitz_function(n, s);
        const auto family = intro_monomial_family(n, s);
        const auto borel = Composition::borel(n);
        if (family != chamber_filter(constant_term(f, borel), ChamberKind::obtuse))
          return "n=" + std::to_string(n) + " s=" + std::to_string(s) + ": family differs";
        if (eval_point(family, steinberg_point(n)) != compact_trace_steinberg(f) * Integer(eps_parabolic(borel)))
          return "n=" + std::to_string(n) + " s=" + std::to_string(s) + ": Steinberg value differs";
        return std::nullopt;
      });
  return cases;
}

/// Trivial-representation and Steinberg routes for coprime (n, s).
inline std::vector<Case> cttrivial_cases(int max_n) {
  std::vector<Case> cases;
  for (int n = 1; n <= max_n; ++n)
    for (int s = 1; s <= n; ++s) {
      if (std::gcd(n, s) != 1) continue;
      cases.push_back([n, s]() -> std::optional<std::string> {
        if (!cttrivial_check(kottwitz_function(n, s)).equal)
          return "n=" + std::to_string(n) + " s=" + std::to_string(s) + ": routes differ";
        return std::nullopt;
      });
    }
  return cases;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"constant-terms", "chicfp",       "constant-vanish",
                                                 "chambers",       "intro-family", "cttrivial"};
  return names;
}

/// `max_n` <= 0 selects the suite's default range.
inline SuiteResult run_suite(const std::string& name, int max_n = 0, int jobs = 1) {
  auto pick = [&](int fallback) { return max_n > 0 ? max_n : fallback; };
  if (name == "constant-terms") return run_cases(name, constant_term_cases(pick(6)), jobs);
  if (name == "chicfp") return run_cases(name, chicfp_cases(pick(6)), jobs);
  if (name == "constant-vanish") return run_cases(name, constant_vanish_cases(pick(7)), jobs);
  if (name == "chambers") return run_cases(name, chamber_cases(pick(5)), jobs);
  if (name == "intro-family") return run_cases(name, intro_family_cases(pick(8)), jobs);
  if (name == "cttrivial") return run_cases(name, cttrivial_cases(pick(8)), jobs);
  throw invalid_argument("unknown verification suite '" + name + "'");
}

}  // namespace ctrace::verify
