#include "report_json.hpp"

#include <cmath>

#include "casaskit/text_format.hpp"

namespace casaskit::report {

Json exact(const GaussianRational& z) { return to_string(z); }

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_number(std::complex<double> z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

namespace {

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

Json echo(const InputEcho& inputs) {
  Json out = Json::object();
  for (const auto& [k, v] : inputs) out[k] = v;
  return out;
}

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

}  // namespace

Json roots(const RootMultiset& rm) {
  Json out = Json::array();
  for (const auto& e : rm.entries) {
    out.push_back({{"value", complex_number(e.value())},
                   {"exact", e.exact ? exact(*e.exact) : Json(nullptr)},
                   {"multiplicity", e.multiplicity},
                   {"error_radius", number(e.approx.error_radius)}});
  }
  return out;
}

Json identity(const IdentityReport& r) {
  Json res = Json::array();
  for (const auto& z : r.exact_residuals) res.push_back(exact(z));
  return {{"id", r.id},
          {"backend", to_string(r.backend)},
          {"exact_residuals", res},
          {"residual", number(r.residual)},
          {"pass", r.pass},
          {"hypothesis_ok", r.hypothesis_ok},
          {"note", r.note},
          {"inputs", echo(r.inputs)}};
}

Json bound(const BoundReport& b) {
  return {{"id", b.id},
          {"lower", optional_number(b.lower)},
          {"value", number(b.value)},
          {"upper", optional_number(b.upper)},
          {"holds", b.hypothesis_ok && b.holds},
          {"hypothesis_ok", b.hypothesis_ok},
          {"slack", number(b.slack)},
          {"note", b.note},
          {"inputs", echo(b.inputs)}};
}

Json extremal(const ExtremalStats& s) {
  return {{"d", optional_number(s.d)},     {"D", optional_number(s.D)},   {"span", number(s.span)},
          {"d_m", numbers(s.d_m)},         {"D_m", numbers(s.D_m)},       {"span_m", numbers(s.span_m)},
          {"lambda_star", number(s.lambda_star)}, {"r_star", s.r_star}, {"lambda_low", number(s.lambda_low)},
          {"r_low", s.r_low}};
}

Json certificate(const CACertificate& c) {
  Json orders = Json::array();
  for (const auto& e : c.orders)
    orders.push_back({{"order", e.order},
                      {"shared", e.shared},
                      {"witness", e.shared ? Json(format_polynomial(e.witness)) : Json(nullptr)}});
  return {{"verdict", to_string(c.verdict)}, {"orders", orders}};
}

Json shared_counts(const SharedRootCounts& c) {
  return {{"l", c.l}, {"centroid_is_root", c.centroid_is_root}, {"zero_pairs", c.zero_pairs}};
}

Json search_config(const SearchConfig& c) {
  Json filters = Json::array();
  for (const auto& f : c.filters.enabled) filters.push_back(f);
  return {{"degree", c.degree},
          {"filters", filters},
          {"multistarts", c.multistarts},
          {"max_iterations", c.max_iterations},
          {"theta", number(c.theta)},
          {"seed", c.seed},
          {"precision_digits", c.precision_digits},
          {"assignment_budget", c.assignment_budget},
          {"complex_roots", c.complex_roots},
          {"brute_force_check", c.brute_force_check}};
}

Json search_report(const SearchReport& r) {
  Json patterns = Json::array();
  for (const auto& p : r.patterns) {
    patterns.push_back({{"pattern", p.pattern.r},
                        {"pruned_by", p.pruned_by ? Json(*p.pruned_by) : Json(nullptr)},
                        {"reason", p.reason},
                        {"assignments", p.assignments},
                        {"best_assignment", p.best_assignment ? Json(p.best_assignment->to_string()) : Json(nullptr)},
                        {"best_residual", p.best_residual ? number(*p.best_residual) : Json(nullptr)},
                        {"minimizer", numbers(p.minimizer)},
                        {"minimizer_imag", numbers(p.minimizer_imag)},
                        {"brute_force_min", p.brute_force_min ? number(*p.brute_force_min) : Json(nullptr)},
                        {"brute_force_agrees", p.brute_force_agrees ? Json(*p.brute_force_agrees) : Json(nullptr)},
                        {"budget_exhausted", p.budget_exhausted}});
  }
  Json candidates = Json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back({{"pattern", c.pattern.r},
                          {"assignment", c.assignment.to_string()},
                          {"residual", number(c.residual)},
                          {"high_precision_residual", c.high_precision_residual},
                          {"verified", c.verified},
                          {"roots", numbers(c.roots)},
                          {"roots_imag", numbers(c.roots_imag)}});
  }
  return {{"command", "ca-search"},
          {"config", search_config(r.config)},
          {"verdict", r.verdict},
          {"incomplete", r.incomplete},
          {"note", r.note},
          {"patterns", patterns},
          {"candidates", candidates}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace casaskit::report
