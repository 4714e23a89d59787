#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "casaskit/casearch.hpp"
#include "casaskit/errors.hpp"
#include "casaskit/goncharov.hpp"
#include "casaskit/localize.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"
#include "casaskit/text_format.hpp"
#include "report_json.hpp"

using namespace casaskit;
using report::Json;

namespace {

struct Common {
  std::string input;
  bool json = false;
  std::string output;
};

void add_common(CLI::App* sub, Common& c, bool with_input) {
  if (with_input) {
    sub->add_option("-i,--input", c.input, "inline text, @file, or - for stdin (default: stdin)");
    sub->add_option("source", c.input, "same as --input");
  }
  sub->add_flag("--json", c.json, "machine-readable output");
  sub->add_option("-o,--output", c.output, "write the report to a file instead of stdout");
}

std::string read_input(const std::string& spec) {
  auto slurp = [](std::istream& in) { return std::string(std::istreambuf_iterator<char>(in), {}); };
  if (spec.empty() || spec == "-") return slurp(std::cin);
  if (spec[0] == '@') {
    std::ifstream file(spec.substr(1));
    if (!file) throw std::runtime_error("cannot open input file " + spec.substr(1));
    return slurp(file);
  }
  return spec;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  if (std::isnan(x)) return "n/a";
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

std::string fmt(std::complex<double> z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw std::runtime_error("cannot write " + c.output);
  out << text;
}

Polynomial read_polynomial(const Common& c) {
  Polynomial p = parse_polynomial(trim(read_input(c.input)));
  if (p.degree() < 1) throw DomainError("degree-0 input has no roots to analyze");
  return p;
}

std::string describe_roots(const RootMultiset& rm) {
  std::ostringstream out;
  for (const auto& e : rm.entries) {
    out << "  " << (e.exact ? to_string(*e.exact) : fmt(e.value()) + " +- " + fmt(e.approx.error_radius));
    out << "  (multiplicity " << e.multiplicity << ")\n";
  }
  return out.str();
}

// --- analyze ---------------------------------------------------------------

int run_analyze(const Common& c) {
  const Polynomial p = read_polynomial(c);
  const int n = p.degree();
  const RootMultiset rm = root_multiset(p);
  const bool trivial = is_trivial(p);
  const bool real = is_real_rooted(p);

  Json j{{"command", "analyze"},
         {"polynomial", format_polynomial(p)},
         {"degree", n},
         {"monic", format_polynomial(p.monic())},
         {"roots", report::roots(rm)},
         {"distinct_roots", rm.distinct_count()},
         {"real_rooted", real},
         {"trivial", trivial}};
  std::ostringstream h;
  h << "polynomial: " << format_polynomial(p) << "\ndegree: " << n << "\nmonic: " << format_polynomial(p.monic())
    << "\nroots:\n"
    << describe_roots(rm) << "real-rooted: " << (real ? "yes" : "no") << "\ntrivial: " << (trivial ? "yes" : "no")
    << "\n";

  if (n >= 2) {
    const CentroidData cd = centroid_data(p);
    auto quad = [](const QuadraticRoot& q) {
      return Json{{"exact", q.exact ? report::exact(*q.exact) : Json(nullptr)}, {"value", report::complex_number(q.value)}};
    };
    j["centroid"] = {{"exact", report::exact(cd.centroid)}, {"value", report::complex_number(cd.centroid.to_complex())}};
    j["gap_squared"] = report::exact(cd.gap_squared);
    j["gap"] = report::number(cd.gap());
    j["penultimate"] = quad(cd.penultimate);
    j["mirror"] = quad(cd.mirror);
    h << "centroid x_{n-1}: " << to_string(cd.centroid) << "\ngap^2: " << to_string(cd.gap_squared)
      << "\ngap: " << fmt(cd.gap()) << "\n";
  } else {
    const GaussianRational root = -p.coefficient(0) / p.coefficient(1);
    j["centroid"] = {{"exact", report::exact(root)}, {"value", report::complex_number(root.to_complex())}};
    j["gap_squared"] = nullptr;
    j["gap"] = nullptr;
    j["penultimate"] = nullptr;
    j["mirror"] = nullptr;
    h << "centroid: " << to_string(root) << "\n";
  }
  if (real && n >= 2) {
    const ExtremalStats st = extremal_stats(real_root_profile(p));
    j["extremal"] = report::extremal(st);
    h << "span: " << fmt(st.span) << "\nD: " << (st.D ? fmt(*st.D) : "n/a") << "\nd: " << (st.d ? fmt(*st.d) : "n/a")
      << "\n";
  } else {
    j["extremal"] = nullptr;
  }
  emit(c, c.json ? report::dump(j) : h.str());
  return 0;
}

// --- goncharov -------------------------------------------------------------

struct GoncharovArgs {
  std::string construction = "interpolation";
  bool cross_check = false;
  std::vector<std::string> bound_at;
  int budget = 12;
};

int run_goncharov(const Common& c, const GoncharovArgs& a) {
  const NodeSequence nodes(parse_nodes(trim(read_input(c.input))));
  const GeneticBudget budget{a.budget};
  auto build = [&](const std::string& name) {
    if (name == "interpolation") return build_interpolation(nodes).polynomial;
    if (name == "recursion") return build_recursion(nodes).polynomial;
    return build_genetic(nodes, budget).polynomial;
  };
  const Polynomial g = build(a.construction);
  const int n = nodes.size();

  Json node_list = Json::array();
  for (const auto& z : nodes.values()) node_list.push_back(report::exact(z));
  Json conditions = Json::array();
  bool all_zero = true;
  for (int m = 0; m < n; ++m) {
    const GaussianRational v = derive(g, m).evaluate(nodes[m]);
    all_zero = all_zero && v.is_zero();
    conditions.push_back({{"m", m}, {"value", report::exact(v)}});
  }
  Json j{{"command", "goncharov"},
         {"nodes", node_list},
         {"degree", n},
         {"construction", a.construction},
         {"polynomial", format_polynomial(g, 'z')},
         {"node_conditions", conditions},
         {"node_conditions_hold", all_zero}};
  std::ostringstream h;
  h << "G_" << n << "(z) = " << format_polynomial(g, 'z') << "  [" << a.construction << "]\n"
    << "G^(m)(z_m) = 0 for all m: " << (all_zero ? "yes" : "NO") << "\n";

  if (a.cross_check) {
    Json cc = Json::object();
    bool agree = true;
    for (const char* name : {"interpolation", "recursion", "genetic"}) {
      const Polynomial other = build(name);
      agree = agree && other == g;
      cc[name] = format_polynomial(other, 'z');
    }
    cc["agree"] = agree;
    j["cross_check"] = cc;
    h << "cross-check (interpolation, recursion, genetic): " << (agree ? "agree" : "DISAGREE") << "\n";
  } else {
    j["cross_check"] = nullptr;
  }

  Json bounds = Json::array();
  for (const auto& text : a.bound_at) {
    const GaussianRational z = parse_point(trim(text));
    const GaussianRational value = g.evaluate(z);
    const double abs_value = std::sqrt(value.norm().get_d());
    const Interval sharp = sharp_bound_enclosure(nodes, z, budget);
    const Interval gon = goncharov_bound_enclosure(nodes, z);
    bounds.push_back({{"z", report::exact(z)},
                      {"value", report::exact(value)},
                      {"abs", report::number(abs_value)},
                      {"sharp", report::number(sharp_bound(nodes, z, budget))},
                      {"goncharov", report::number(goncharov_bound(nodes, z))},
                      {"sharp_enclosure", {report::number(sharp.lo), report::number(sharp.hi)}},
                      {"goncharov_enclosure", {report::number(gon.lo), report::number(gon.hi)}}});
    h << "at z = " << to_string(z) << ": |G| = " << fmt(abs_value) << ", sharp <= " << fmt(sharp.hi)
      << ", goncharov = " << fmt(goncharov_bound(nodes, z)) << "\n";
  }
  j["bounds"] = bounds;
  emit(c, c.json ? report::dump(j) : h.str());
  return 0;
}

// --- identities ------------------------------------------------------------

struct IdentityArgs {
  std::vector<std::string> at{"0", "1"};
  std::optional<int> order;
  bool numeric = false;
};

int run_identities(const Common& c, const IdentityArgs& a) {
  const Polynomial p = read_polynomial(c);
  const int n = p.degree();
  if (n < 2) throw DomainError("identities need degree >= 2");
  const Backend backend = a.numeric ? Backend::numeric : Backend::exact;
  if (a.order && (*a.order < 0 || *a.order > n - 2)) throw DomainError("--order must lie in 0..n-2");

  Json reports = Json::array();
  std::ostringstream h;
  bool all_pass = true;
  auto add = [&](const IdentityReport& r) {
    reports.push_back(report::identity(r));
    if (r.hypothesis_ok) all_pass = all_pass && r.pass;
    h << std::left << std::setw(6) << r.id;
    for (const auto& [k, v] : r.inputs) h << " " << k << "=" << v;
    if (!r.hypothesis_ok)
      h << "  gated: " << r.note << "\n";
    else
      h << "  residual " << fmt(r.residual) << (r.pass ? "  pass" : "  FAIL") << "\n";
  };
  for (const auto& text : a.at) {
    const GaussianRational z = parse_point(trim(text));
    for (int m = 0; m <= n - 2; ++m) {
      if (a.order && m != *a.order) continue;
      for (const auto& r : sz_nagy_residuals(p, z, m, backend)) add(r);
    }
  }
  if (n >= 3)
    for (int m = 1; m <= n - 2; ++m) {
      if (a.order && m != *a.order) continue;
      add(lemma2_residual(p, m, std::nullopt, backend));
    }
  Json j{{"command", "identities"},
         {"polynomial", format_polynomial(p)},
         {"degree", n},
         {"backend", to_string(backend)},
         {"reports", reports},
         {"all_pass", all_pass}};
  h << (all_pass ? "all identities pass\n" : "some identity FAILED\n");
  emit(c, c.json ? report::dump(j) : h.str());
  return 0;
}

// --- bounds ----------------------------------------------------------------

int run_bounds(const Common& c, const std::optional<int>& order) {
  const Polynomial p = read_polynomial(c);
  const RealRootProfile f = real_root_profile(p);
  const int n = f.n;
  if (order && (*order < 0 || *order > n - 2)) throw DomainError("--order must lie in 0..n-2");
  auto want = [&](int m) { return !order || m == *order; };

  std::vector<BoundReport> all;
  for (int m = 1; m <= n - 2 && n > 2; ++m)
    if (want(m))
      for (const auto& b : gap_bounds(f, m)) all.push_back(b);
  for (int j = 0; j < f.k(); ++j)
    for (int m = 0; m < f.multiplicities[static_cast<std::size_t>(j)]; ++m)
      if (want(m)) all.push_back(laguerre_interval(f, j, m));
  for (int m = 0; m <= n - 2; ++m)
    if (want(m)) all.push_back(derivative_root_interval(f, m));
  for (int s = 0; s < f.k(); ++s) all.push_back(common_root_interval(f, s));
  for (int m = 0; m <= n - 2; ++m)
    if (want(m)) all.push_back(ca_mth_bound(f, m));
  for (const auto& b : lemma7_bounds(f)) all.push_back(b);
  all.push_back(span_lower_bound(f));
  for (int m = 0; m <= n - 2; ++m)
    if (want(m))
      for (const auto& b : lemma9_bounds(f, m)) all.push_back(b);

  Json reports = Json::array();
  int violations = 0, gated = 0;
  std::ostringstream h;
  h << "polynomial: " << format_polynomial(p) << "\n";
  for (const auto& b : all) {
    reports.push_back(report::bound(b));
    if (!b.hypothesis_ok) {
      ++gated;
      continue;
    }
    if (!b.holds) ++violations;
    h << std::left << std::setw(6) << b.id;
    for (const auto& [k, v] : b.inputs) h << " " << k << "=" << v;
    h << "  " << (b.lower ? fmt(*b.lower) + " <= " : "") << fmt(b.value) << (b.upper ? " <= " + fmt(*b.upper) : "")
      << (b.holds ? "  holds" : "  VIOLATED") << "\n";
  }
  h << gated << " gated, " << violations << " violated\n";

  Json profile{{"roots", f.roots},
               {"multiplicities", f.multiplicities},
               {"centroid", report::number(f.centroid)},
               {"gap", report::number(f.gap)},
               {"centroid_root", f.centroid_root ? Json(*f.centroid_root) : Json(nullptr)},
               {"penultimate_root", f.penultimate_root ? Json(*f.penultimate_root) : Json(nullptr)}};
  Json j{{"command", "bounds"},
         {"polynomial", format_polynomial(p)},
         {"degree", n},
         {"profile", profile},
         {"extremal", report::extremal(extremal_stats(f))},
         {"reports", reports},
         {"violations", violations},
         {"gated", gated}};
  emit(c, c.json ? report::dump(j) : h.str());
  return 0;
}

// --- ca-check --------------------------------------------------------------

int run_ca_check(const Common& c, const std::string& chain_text) {
  const Polynomial p = read_polynomial(c);
  const CACertificate cert = certify_ca(p);
  const UnitDiscScaling scaled = normalize_unit_disc(p, {});
  const CACertificate after = certify_ca(scaled.polynomial);
  const SharedRootCounts counts = shared_root_counts(p);
  const RootMultiset rm = root_multiset(p);
  const bool real = is_real_rooted(p);

  Json j{{"command", "ca-check"}, {"polynomial", format_polynomial(p)}, {"degree", p.degree()}};
  Json cj = report::certificate(cert);
  for (auto it = cj.begin(); it != cj.end(); ++it) j[it.key()] = it.value();
  j["real_rooted"] = real;
  j["unit_disc"] = {{"alpha", to_string(scaled.alpha)},
                    {"polynomial", format_polynomial(scaled.polynomial)},
                    {"verdict", to_string(after.verdict)}};
  j["shared_root_counts"] = report::shared_counts(counts);

  std::ostringstream h;
  h << "polynomial: " << format_polynomial(p) << "\n";
  for (const auto& e : cert.orders)
    h << "  m = " << e.order << ": "
      << (e.shared ? "shared, gcd = " + format_polynomial(e.witness) : std::string("not shared")) << "\n";
  h << "verdict: " << to_string(cert.verdict) << "\nunit-disc scaling alpha = " << to_string(scaled.alpha)
    << ", verdict " << to_string(after.verdict) << "\n";

  if (real && rm.distinct_count() >= 1) {
    MultiplicityPattern pat;
    for (const auto& e : rm.entries) pat.r.push_back(e.multiplicity);
    const FilterVerdict fv = pattern_admissible(pat);
    j["pattern"] = pat.r;
    j["pattern_filter"] = {{"admissible", fv.admissible}, {"filter", fv.filter}, {"reason", fv.reason}};
    h << "pattern " << pat.to_string() << ": "
      << (fv.admissible ? std::string("passes the pattern filters") : "excluded by " + fv.filter) << "\n";
  } else {
    j["pattern"] = nullptr;
    j["pattern_filter"] = nullptr;
  }

  if (!chain_text.empty()) {
    const ChainVerdict v = maximal_chain_check(p, parse_nodes(trim(chain_text)));
    j["chain"] = {{"preconditions_ok", v.preconditions_ok}, {"sign_condition", v.sign_condition},
                  {"non_increasing", v.non_increasing},     {"stationary", v.stationary},
                  {"maximal", v.maximal},                   {"contradiction", v.contradiction},
                  {"note", v.note}};
    h << "chain: " << (v.preconditions_ok ? "valid" : "invalid") << ", stationary " << (v.stationary ? "yes" : "no")
      << (v.note.empty() ? "" : " (" + v.note + ")") << "\n";
  }
  emit(c, c.json ? report::dump(j) : h.str());
  return cert.verdict == CAVerdict::ca_nontrivial_candidate ? 2 : 0;
}

// --- ca-search -------------------------------------------------------------

struct SearchArgs {
  int degree = 4;
  std::string theta = "1e-16";
  std::uint64_t seed = 1;
  std::string filters = "on";
  bool complex_roots = false;
  std::size_t budget = 0;
  int precision = 50;
};

int run_ca_search(const Common& c, const SearchArgs& a) {
  SearchConfig cfg;
  if (a.degree < 1) throw DomainError("invalid degree " + std::to_string(a.degree) + ": must be >= 1");
  cfg.degree = a.degree;
  std::size_t used = 0;
  cfg.theta = std::stod(a.theta, &used);
  if (used != a.theta.size()) throw DomainError("invalid theta '" + a.theta + "'");
  cfg.seed = a.seed;
  cfg.filters = FilterSet::parse(a.filters);
  cfg.complex_roots = a.complex_roots;
  cfg.assignment_budget = a.budget;
  cfg.precision_digits = a.precision;
  const SearchReport rep = search(cfg);

  std::ostringstream h;
  h << "degree " << cfg.degree << ", theta " << fmt(cfg.theta) << ", seed " << cfg.seed << "\n";
  for (const auto& p : rep.patterns) {
    h << "  " << std::left << std::setw(16) << p.pattern.to_string();
    if (p.pruned_by)
      h << "pruned by " << *p.pruned_by;
    else if (p.best_residual)
      h << "best residual " << fmt(*p.best_residual) << " at " << p.best_assignment->to_string();
    else
      h << "no minimizer";
    if (p.brute_force_min) h << "; brute force min " << fmt(*p.brute_force_min);
    if (p.budget_exhausted) h << "; budget exhausted";
    h << "\n";
  }
  for (const auto& cand : rep.candidates)
    h << "candidate " << cand.pattern.to_string() << " " << cand.assignment.to_string() << ": residual "
      << fmt(cand.residual) << ", high precision " << cand.high_precision_residual << "\n";
  h << "verdict: " << rep.verdict << (rep.incomplete ? " (incomplete)" : "") << "\n";
  if (!rep.note.empty()) h << rep.note << "\n";

  emit(c, c.json ? report::dump(report::search_report(rep)) : h.str());
  if (rep.incomplete) return 1;
  return rep.candidates.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"casaskit: exact polynomial analysis around the Casas-Alvero conjecture"};
  app.require_subcommand(1);

  Common analyze_c, gon_c, id_c, bounds_c, check_c, search_c;
  GoncharovArgs gon;
  IdentityArgs ids;
  std::optional<int> bound_order;
  std::string chain;
  SearchArgs sa;

  auto* analyze = app.add_subcommand("analyze", "roots, centroid data and triviality of a polynomial");
  add_common(analyze, analyze_c, true);

  auto* goncharov = app.add_subcommand("goncharov", "Abel-Goncharov polynomial on a node sequence");
  add_common(goncharov, gon_c, true);
  goncharov->add_option("--construction", gon.construction, "interpolation, recursion or genetic")
      ->check(CLI::IsMember({"interpolation", "recursion", "genetic"}));
  goncharov->add_flag("--cross-check", gon.cross_check, "build with all three constructions and compare");
  goncharov->add_option("--bound-at", gon.bound_at, "evaluation point for |G(z)| and its bounds (repeatable)");
  goncharov->add_option("--budget", gon.budget, "largest degree for the genetic-sum enumeration")
      ->check(CLI::Range(1, 20));

  auto* identities = app.add_subcommand("identities", "exact Sz.-Nagy and mixed identities");
  add_common(identities, id_c, true);
  identities->add_option("--at", ids.at, "evaluation point (repeatable; default 0 and 1)");
  identities->add_option("--order", ids.order, "restrict to one derivative order m");
  identities->add_flag("--numeric", ids.numeric, "use the floating-point backend");

  auto* bounds = app.add_subcommand("bounds", "root localization inequalities of a real-rooted polynomial");
  add_common(bounds, bounds_c, true);
  bounds->add_option("--order", bound_order, "restrict order-dependent bounds to one m");

  auto* check = app.add_subcommand("ca-check", "exact Casas-Alvero certificate");
  add_common(check, check_c, true);
  check->add_option("--chain", chain, "common-root chain x_0, x_1, ... as nodes:[...]");

  auto* ca_search = app.add_subcommand("ca-search", "residual search for real-rooted CA-polynomials");
  add_common(ca_search, search_c, false);
  ca_search->add_option("--degree", sa.degree, "degree n");
  ca_search->add_option("--theta", sa.theta, "residual threshold (default 1e-16; inf lists every minimum)");
  ca_search->add_option("--seed", sa.seed, "random seed");
  ca_search->add_option("--filters", sa.filters, "on, off, or a comma-separated list of filters");
  ca_search->add_flag("--complex", sa.complex_roots, "unconstrained complex roots, no filters, n <= 5");
  ca_search->add_option("--budget", sa.budget, "per-pattern assignment cap (0 = none)");
  ca_search->add_option("--precision", sa.precision, "digits for the verification pass (<= 100)")
      ->check(CLI::Range(16, 100));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) return run_analyze(analyze_c);
    if (*goncharov) return run_goncharov(gon_c, gon);
    if (*identities) return run_identities(id_c, ids);
    if (*bounds) return run_bounds(bounds_c, bound_order);
    if (*check) return run_ca_check(check_c, chain);
    if (*ca_search) return run_ca_search(search_c, sa);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
