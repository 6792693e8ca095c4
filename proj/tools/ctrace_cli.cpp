// Command-line front end. Exit status: 0 success, 1 usage or domain error,
// 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctrace/ctrace.hpp"
#include "ctrace/io.hpp"
#include "ctrace/verify.hpp"

using namespace ctrace;

namespace {

enum class Format { plain, json, latex };

struct Options {
  Format format = Format::plain;
  int n = 0;
  int s = 0;
  std::string composition;
  std::string kind;
  std::string datum;
  std::optional<int> alpha;
  int jobs = 1;
  std::string suite = "all";
  int max_n = 0;
  std::string convention = "absolute_p";
  int divisible_by = 0;
  int residue = 0;
  int modulus = 0;
  int degree = -1;
  int samples = 0;
  long p_value = 2;
  std::string terms;
  /// Name of the base in rendered output: q, or p for numeric P values.
  std::string base = "q";
};

constexpr int kExitDomain = 1;
constexpr int kExitVerify = 2;

/// Breaks plain output at " + " / " - " separators so no line exceeds
/// CTRACE_WIDTH columns (counted in code points). Unset or 0: no wrapping.
std::string wrap(const std::string& text) {
  const char* env = std::getenv("CTRACE_WIDTH");
  if (!env) return text;
  const long width = std::strtol(env, nullptr, 10);
  if (width <= 0) return text;
  auto columns = [](const std::string& s) {
    std::size_t c = 0;
    for (unsigned char ch : s) c += (ch & 0xC0) != 0x80;
    return c;
  };
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    if ((text.compare(i, 3, " + ") == 0 || text.compare(i, 3, " - ") == 0) && i > start) {
      pieces.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  pieces.push_back(text.substr(start));
  std::string out, line;
  for (const auto& p : pieces) {
    if (!line.empty() && columns(line) + 1 + columns(p) > static_cast<std::size_t>(width)) {
      out += line + "\n";
      line = "  " + p;
    } else {
      line += (line.empty() ? "" : " ") + p;
    }
  }
  return out + line;
}

std::vector<int> parse_parts(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw invalid_argument("malformed composition '" + text + "'");
    }
  }
  if (parts.empty()) throw invalid_argument("empty composition");
  return parts;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

PELDatumP load_datum(const Options& o) {
  if (o.datum.empty()) throw invalid_argument("--datum is required");
  return datum_from_json(read_json_file(o.datum));
}

ResidueConvention parse_convention(const std::string& s) {
  if (s == "absolute_p") return ResidueConvention::absolute_p;
  if (s == "local_q") return ResidueConvention::local_q;
  throw invalid_argument("unknown residue convention '" + s + "'");
}

SphericalFunction kottwitz_for(const Options& o) {
  if (o.n < 1) throw invalid_argument("--n must be positive");
  if (o.alpha) {
    if (*o.alpha < 1) throw invalid_argument("--alpha must be positive");
    return kottwitz_function_numeric(o.n, o.s, *o.alpha);
  }
  return kottwitz_function(o.n, o.s);
}

void emit(const Options& o, const LaurentScalar& x) {
  switch (o.format) {
    case Format::json: std::cout << to_json(x).dump(2) << "\n"; break;
    case Format::latex: std::cout << to_latex(x, RenderOptions{o.base}) << "\n"; break;
    case Format::plain: std::cout << wrap(to_plain(x, RenderOptions{o.base})) << "\n"; break;
  }
}

void emit(const Options& o, const LeviPoly& p) {
  switch (o.format) {
    case Format::json: std::cout << to_json(p).dump(2) << "\n"; break;
    case Format::latex: std::cout << to_latex(p, RenderOptions{o.base}) << "\n"; break;
    case Format::plain: std::cout << wrap(to_plain(p, RenderOptions{o.base})) << "\n"; break;
  }
}

Options with_base(Options o, const char* base) {
  o.base = base;
  return o;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_satake(const Options& o) {
  emit(o, kottwitz_for(o).satake);
  return 0;
}

int cmd_constant_term(const Options& o) {
  const auto f = kottwitz_for(o);
  const Composition c(parse_parts(o.composition));
  auto ct = constant_term(f, c);
  if (!o.kind.empty()) ct = chamber_filter(ct, parse_chamber_kind(o.kind));
  emit(o, ct);
  return 0;
}

int cmd_truncate(const Options& o) {
  const Composition c(parse_parts(o.composition));
  const auto t = compact_constant_term(o.n, o.s, c);
  if (o.format == Format::json) {
    Json j = {{"composition", c.parts()}, {"n", o.n}, {"s", o.s}, {"vanishes", !t.has_value()}};
    if (t) {
      Json factors = Json::array();
      for (const auto& f : t->factors) factors.push_back({{"n", f.n}, {"s", f.s}});
      j["coefficient"] = to_json(t->coefficient);
      j["factors"] = factors;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (!t) {
    std::cout << "0\n";
    return 0;
  }
  const bool latex = o.format == Format::latex;
  std::string out = latex ? to_latex(t->coefficient) : to_plain(t->coefficient);
  const std::string chi = latex ? "\\chi f_{" : "χf(";
  for (const auto& f : t->factors)
    out += (latex ? " \\otimes " : " ⊗ ") + chi + std::to_string(f.n) + "," + std::to_string(f.s) + (latex ? "}" : ")");
  std::cout << out << "\n";
  return 0;
}

int cmd_trace_steinberg(const Options& o) {
  emit(o, compact_trace_steinberg(kottwitz_for(o)));
  return 0;
}

int cmd_trace_trivial(const Options& o) {
  emit(o, compact_trace_trivial(kottwitz_for(o)));
  return 0;
}

int cmd_intro_family(const Options& o) {
  emit(o, intro_monomial_family(o.n, o.s));
  return 0;
}

int cmd_orbits(const Options& o) {
  const auto d = load_datum(o);
  const int alpha = o.alpha.value_or(1);
  const auto data = orbit_data(d, alpha);
  const auto slopes = basic_slopes(d);
  Json places = Json::array();
  for (std::size_t i = 0; i < data.places.size(); ++i) {
    const auto& po = data.places[i];
    Json orbits = Json::array();
    for (const auto& orb : po.orbits)
      orbits.push_back({{"degree", orb.degree}, {"members", orb.members}, {"signature", orb.signature}});
    places.push_back({{"f", po.f},
                      {"name", po.name},
                      {"orbits", orbits},
                      {"simple", slopes[i].simple},
                      {"slope", to_decimal(slopes[i].slope)}});
  }
  const Json j = {{"alpha", alpha}, {"e_E", d.e_E}, {"places", places}, {"split_modulus", split_modulus(d)}};
  if (o.format == Format::json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "alpha = " << alpha << ", split modulus " << split_modulus(d) << "\n";
  for (const auto& p : j["places"]) {
    std::cout << p["name"].get<std::string>() << ": f = " << p["f"] << ", slope " << p["slope"].get<std::string>()
              << (p["simple"].get<bool>() ? " (simple)" : "") << "\n";
    for (const auto& orb : p["orbits"])
      std::cout << "  orbit " << orb["members"].dump() << ": degree " << orb["degree"] << ", signature "
                << orb["signature"] << "\n";
  }
  return 0;
}

int cmd_poly_p(const Options& o) {
  const auto d = load_datum(o);
  for (const auto& w : validate(d).warnings) std::cerr << "warning: " << w << "\n";
  if (o.alpha)
    emit(with_base(o, "p"), polynomial_P(d, *o.alpha, parse_convention(o.convention)));
  else
    emit(o, polynomial_P_symbolic(d, o.divisible_by));
  return 0;
}

int cmd_interpolate(const Options& o) {
  const auto d = load_datum(o);
  InterpolationRequest req;
  req.residue = o.residue;
  req.modulus = o.modulus;
  req.degree = o.degree;
  req.samples = o.samples;
  req.p_value = o.p_value;
  req.convention = parse_convention(o.convention);
  const auto r = interpolate_P(d, req);
  LaurentScalar fit;
  for (std::size_t j = 0; j < r.coefficients.size(); ++j)
    if (denominator(r.coefficients[j]) == 1) fit.add_term(2 * static_cast<int>(j), numerator(r.coefficients[j]));
  if (o.format == Format::json) {
    Json coeffs = Json::array(), residuals = Json::array();
    for (const auto& c : r.coefficients) coeffs.push_back(to_decimal(c));
    for (const auto& c : r.residuals) residuals.push_back(to_decimal(c));
    const Json j = {{"alphas", r.alphas},       {"coefficients", coeffs},  {"degree", r.degree},
                    {"exact_match", r.exact_match}, {"message", r.message}, {"modulus", r.modulus},
                    {"residuals", residuals},   {"residue", r.residue},    {"success", r.success}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "alpha = " << r.residue << " mod " << r.modulus << ": "
              << (r.success ? (o.format == Format::latex ? to_latex(fit) : wrap(to_plain(fit))) : "no fit") << "\n";
    std::cout << "samples";
    for (int a : r.alphas) std::cout << " " << a;
    std::cout << "; " << r.message << "\n";
  }
  return r.success ? 0 : kExitVerify;
}

int cmd_dimension(const Options& o) {
  const auto d = load_datum(o);
  const auto paper = dimension_paper(d);
  const int degree = dimension_degree(d);
  if (o.format == Format::json) {
    const Json j = {{"degree", degree}, {"paper", to_decimal(paper.value)}, {"paper_integral", paper.integral},
                    {"top_monomial", to_decimal(dimension_top_monomial(d))}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "degree of P: " << degree << "\n";
    std::cout << "printed formula: " << to_decimal(paper.value) << (paper.integral ? "" : " (not integral)") << "\n";
  }
  return 0;
}

/// Terms file: [{"kind", "zeta", "weight", "zeta_power", "hecke_trace"}],
/// scalars as {"terms": [{"coefficient", "half_exponent"}]} in P's scaling.
int cmd_assemble(const Options& o) {
  const auto d = load_datum(o);
  if (o.terms.empty()) throw invalid_argument("--terms is required");
  const auto P = o.alpha ? polynomial_P(d, *o.alpha, parse_convention(o.convention)) : polynomial_P_symbolic(d);
  auto scalar = [&](Json j) {
    if (!j.contains("scaling")) j["scaling"] = to_string(P.scaling());
    return laurent_from_json(j);
  };
  std::vector<AutomorphicTermInput> terms;
  const auto tj = read_json_file(o.terms);
  if (!tj.is_array()) throw invalid_argument("terms file: expected an array");
  try {
    for (const auto& t : tj)
      terms.push_back({parse_term_kind(t.at("kind").get<std::string>()), t.value("zeta", std::string()),
                       t.value("weight", 0), scalar(t.at("zeta_power")), scalar(t.at("hecke_trace"))});
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("terms file: ") + e.what());
  }
  const auto r = assemble_point_count(P, d, terms, o.alpha.value_or(1));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (o.format == Format::json) {
    const Json j = {{"P", to_json(P)}, {"sign", r.sign}, {"value", to_json(r.value)}};
    std::cout << j.dump(2) << "\n";
  } else {
    emit(o.alpha ? with_base(o, "p") : o, r.value);
  }
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = verify::suite_names();
  else
    suites.push_back(o.suite);
  bool ok = true;
  Json report = Json::array();
  for (const auto& name : suites) {
    const auto r = verify::run_suite(name, o.max_n, o.jobs);
    ok = ok && r.passed();
    if (o.format == Format::json) {
      report.push_back({{"cases", r.cases}, {"failures", r.failures}, {"passed", r.passed()}, {"suite", r.name}});
    } else {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases\n";
      for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    }
  }
  if (o.format == Format::json) std::cout << report.dump(2) << "\n";
  return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact traces of Kottwitz functions and the basic-stratum polynomial P(q^alpha)"};
  app.require_subcommand(1);
  Options o;
  std::string format = "plain";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"plain", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads for parameter sweeps")->check(CLI::PositiveNumber);

  auto add_ns = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Rank")->required();
    sub->add_option("--s", o.s, "Signature")->required();
  };
  auto add_alpha = [&](CLI::App* sub, const char* help) {
    sub->add_option_function<int>("--alpha", [&](const int& a) { o.alpha = a; }, help);
  };
  auto add_datum = [&](CLI::App* sub) { sub->add_option("--datum", o.datum, "Datum JSON file")->required(); };
  auto add_convention = [&](CLI::App* sub) {
    sub->add_option("--convention", o.convention, "Residue cardinality convention")
        ->check(CLI::IsMember({"absolute_p", "local_q"}));
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* s = app.add_subcommand(name, help);
    handlers.emplace_back(s, fn);
    return s;
  };

  auto* satake = sub("satake", "Satake transform of f_{n,alpha,s}", cmd_satake);
  add_ns(satake);
  add_alpha(satake, "Concrete degree alpha (numeric mode)");

  auto* ct = sub("constant-term", "Constant term along a composition, optionally chamber-filtered", cmd_constant_term);
  add_ns(ct);
  ct->add_option("--composition", o.composition, "Composition, e.g. 2,2")->required();
  ct->add_option("--kind", o.kind, "Chamber filter")->check(CLI::IsMember({"acute", "obtuse", "equal_ratio"}));
  add_alpha(ct, "Concrete degree alpha (numeric mode)");

  auto* tr = sub("truncate", "Equal-ratio truncated constant term", cmd_truncate);
  add_ns(tr);
  tr->add_option("--composition", o.composition, "Composition, e.g. 2,2")->required();

  auto* ts = sub("trace-steinberg", "Compact trace on the Steinberg representation", cmd_trace_steinberg);
  add_ns(ts);
  add_alpha(ts, "Concrete degree alpha (numeric mode)");

  auto* tt = sub("trace-trivial", "Compact trace on the trivial representation", cmd_trace_trivial);
  add_ns(tt);
  add_alpha(tt, "Concrete degree alpha (numeric mode)");

  auto* intro = sub("intro-family", "Explicit monomial family on the Borel", cmd_intro_family);
  add_ns(intro);

  auto* orb = sub("orbits", "Slopes and Frobenius orbits of a datum", cmd_orbits);
  add_datum(orb);
  add_alpha(orb, "Degree alpha (default 1)");

  auto* pp = sub("poly-p", "The polynomial P, symbolic or at a given alpha", cmd_poly_p);
  add_datum(pp);
  add_alpha(pp, "Concrete alpha (numeric, powers of p)");
  add_convention(pp);
  pp->add_option("--divisible-by", o.divisible_by, "Symbolic mode: alpha assumed divisible by this (0: split modulus)");

  auto* ip = sub("interpolate", "Fit P on a residue class of alpha", cmd_interpolate);
  add_datum(ip);
  ip->add_option("--residue", o.residue, "Residue class of alpha");
  ip->add_option("--modulus", o.modulus, "Modulus (0: split modulus)");
  ip->add_option("--degree", o.degree, "Fitted degree in q^alpha (negative: infer)");
  ip->add_option("--samples", o.samples, "Number of sampled alphas (0: degree + 2)");
  ip->add_option("--p", o.p_value, "Integer at which p is evaluated");
  add_convention(ip);

  auto* dim = sub("dimension", "Dimension of the basic stratum, both routes", cmd_dimension);
  add_datum(dim);

  auto* as = sub("assemble", "Point-count assembly from supplied spectral data", cmd_assemble);
  add_datum(as);
  as->add_option("--terms", o.terms, "Automorphic terms JSON file")->required();
  add_alpha(as, "Concrete alpha (numeric mode)");
  add_convention(as);

  auto* vf = sub("verify", "Run cross-route verification suites", cmd_verify);
  std::vector<std::string> suite_choices = verify::suite_names();
  suite_choices.push_back("all");
  vf->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(suite_choices))->capture_default_str();
  vf->add_option("--max-n", o.max_n, "Largest rank (0: suite default)");
  vf->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }
  o.format = format == "json" ? Format::json : format == "latex" ? Format::latex : Format::plain;

  try {
    for (const auto& [s, fn] : handlers)
      if (s->parsed()) return fn(o);
  } catch (const ctrace::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}
