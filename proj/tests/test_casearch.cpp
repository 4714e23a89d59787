#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "casaskit/casearch.hpp"
#include "casaskit/errors.hpp"
#include "casaskit/localize.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"
#include "casaskit/text_format.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace casaskit;
using casaskit::testing::gq;

namespace {

Polynomial P(const char* text) { return parse_polynomial(text); }

std::vector<bool> shared_tags(const CACertificate& c) {
  std::vector<bool> out;
  for (const auto& e : c.orders) out.push_back(e.shared);
  return out;
}

// Independent oracle: f^{(n-2)} is a quadratic a z^2 + b z + c with a double
// root exactly when b^2 - 4ac vanishes.
bool penultimate_double_root(const Polynomial& f) {
  const Polynomial q = derive(f, f.degree() - 2);
  const GaussianRational& a = q.coefficient(2);
  const GaussianRational& b = q.coefficient(1);
  const GaussianRational& c = q.coefficient(0);
  return (b * b - GaussianRational(4) * a * c).is_zero();
}

CandidateStats blank_stats(int n, int k, int r, int r0) {
  CandidateStats s;
  s.n = n;
  s.k = k;
  s.r = r;
  s.r0 = r0;
  s.D_m.assign(static_cast<std::size_t>(n), 0.0);
  s.all_derivative_roots_shared.assign(static_cast<std::size_t>(n), false);
  return s;
}

void check_same_report(const SearchReport& a, const SearchReport& b) {
  REQUIRE(a.patterns.size() == b.patterns.size());
  for (std::size_t i = 0; i < a.patterns.size(); ++i) {
    const auto& x = a.patterns[i];
    const auto& y = b.patterns[i];
    CHECK(x.pattern.r == y.pattern.r);
    CHECK(x.pruned_by == y.pruned_by);
    CHECK(x.reason == y.reason);
    CHECK(x.assignments == y.assignments);
    CHECK(x.best_residual == y.best_residual);
    CHECK(x.brute_force_min == y.brute_force_min);
    CHECK(x.minimizer == y.minimizer);
    CHECK((x.best_assignment ? x.best_assignment->to_string() : "") ==
          (y.best_assignment ? y.best_assignment->to_string() : ""));
  }
  CHECK(a.candidates.size() == b.candidates.size());
  CHECK(a.verdict == b.verdict);
}

}  // namespace

TEST_CASE("certify_ca on the worked examples") {
  auto c = certify_ca(P("(x-2)^4"));
  CHECK(c.verdict == CAVerdict::trivial);
  REQUIRE(c.orders.size() == 3);
  for (const auto& e : c.orders) {
    CHECK(e.shared);
    CHECK(e.witness == P("x - 2").pow(static_cast<unsigned>(4 - e.order)));
  }

  c = certify_ca(P("x^3 - x"));
  CHECK(c.verdict == CAVerdict::not_ca);
  CHECK_FALSE(c.orders[0].shared);
  CHECK(c.orders[0].witness.degree() == 0);
  CHECK(c.orders[1].shared);
  CHECK(c.orders[1].witness == P("x"));

  c = certify_ca(P("x^4 - 3*x^2 + 2*x"));
  CHECK(c.verdict == CAVerdict::not_ca);
  CHECK(c.orders[0].witness == P("x - 1"));
  CHECK_FALSE(c.orders[1].shared);
  CHECK(c.orders[2].witness == P("x"));

  CHECK(certify_ca(P("3*x - 6")).verdict == CAVerdict::trivial);
  CHECK(certify_ca(P("x")).orders.empty());
  CHECK_THROWS_AS(certify_ca(P("7")), DomainError);
  CHECK(std::string(to_string(CAVerdict::ca_nontrivial_candidate)) == "ca_nontrivial_candidate");
}

TEST_CASE("normalize_unit_disc") {
  auto s = normalize_unit_disc(P("(x-2)^4"), {});
  CHECK(s.alpha == make_rational(1, 4));
  CHECK(s.polynomial == P("(x - 1/2)^4"));

  s = normalize_unit_disc(P("x^2 - 1/4"), {});
  CHECK(s.alpha == 1);
  CHECK(s.polynomial == P("x^2 - 1/4"));

  s = normalize_unit_disc(P("x^3"), {});
  CHECK(s.alpha == 1);

  // only the supplied common roots drive the choice
  s = normalize_unit_disc(P("(x-1/3)*(x-100)"), {gq(1, 3)});
  CHECK(s.alpha == 1);
  s = normalize_unit_disc(P("(x-3)*(x+1/5)"), {gq(3)});
  CHECK(s.alpha == make_rational(1, 8));
  CHECK(s.polynomial == P("(x - 3/8)*(x + 1/40)"));

  // roots off the real axis, and a non-rational root bounded numerically
  s = normalize_unit_disc(P("x^2 + 9"), {});
  CHECK(s.alpha == make_rational(1, 8));
  s = normalize_unit_disc(P("x^2 - 2"), {});
  CHECK(s.alpha == make_rational(1, 4));
  for (const auto& e : root_multiset(s.polynomial).entries) CHECK(std::abs(e.value()) < 1.0);

  CHECK(scale_roots(P("x^2 - 3*x + 2"), gq(2)) == P("x^2 - 6*x + 8"));
  CHECK_THROWS_AS(scale_roots(P("x"), gq(0)), DomainError);
}

TEST_CASE("certify_ca is invariant under scaling and translation") {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> deg(2, 8);
  int trivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial f;
    if (trial % 10 == 0) {
      f = Polynomial::linear(GaussianRational(casaskit::testing::random_rational(rng))).pow(static_cast<unsigned>(deg(rng)));
    } else {
      f = casaskit::testing::random_rooted(rng, deg(rng)).poly;
    }
    const auto base = certify_ca(f);
    trivial += base.verdict == CAVerdict::trivial;

    Rational a = 0;
    while (a == 0) a = casaskit::testing::random_rational(rng, 7, 5);
    const Rational b = casaskit::testing::random_rational(rng, 20, 3);
    const Polynomial scaled = f.compose_affine(GaussianRational(a), GaussianRational(0));
    const Polynomial shifted = f.compose_affine(GaussianRational(1), GaussianRational(b));
    const Polynomial disc = normalize_unit_disc(f, {}).polynomial;
    for (const Polynomial* g : {&scaled, &shifted, &disc}) {
      const auto c = certify_ca(*g);
      CHECK(c.verdict == base.verdict);
      CHECK(shared_tags(c) == shared_tags(base));
    }
    for (const auto& e : root_multiset(disc).entries) CHECK(std::abs(e.value()) < 1.0);
  }
  CHECK(trivial >= 10);
}

TEST_CASE("maximal chain check") {
  auto v = maximal_chain_check(P("(x-2)^4"), {gq(2), gq(2), gq(2), gq(2)});
  CHECK(v.preconditions_ok);
  CHECK(v.stationary);
  CHECK(v.non_increasing);
  CHECK(v.sign_condition);
  CHECK_FALSE(v.contradiction);
  CHECK(v.maximal == std::vector<bool>{true, true, true, true});

  // f''(1) = 6 and f'''(1) = 24; 1 is the largest root of f and of f'
  v = maximal_chain_check(P("x^4 - 3*x^2 + 2*x"), {gq(1), gq(1)});
  CHECK(v.preconditions_ok);
  CHECK(v.sign_condition);
  CHECK(v.non_increasing);
  CHECK(v.stationary);
  CHECK(v.maximal == std::vector<bool>{true, true});
  CHECK_FALSE(v.contradiction);
  CHECK(v.note == "partial chain");

  // 0 is a root of f but not the largest one
  v = maximal_chain_check(P("x^4 - 3*x^2 + 2*x"), {gq(0)});
  CHECK(v.preconditions_ok);
  CHECK(v.maximal == std::vector<bool>{false});
  CHECK_FALSE(v.sign_condition);  // f'(0) = 2, f''(0) = -6

  v = maximal_chain_check(P("x^3 - x"), {gq(1), gq(1)});
  CHECK_FALSE(v.preconditions_ok);
  CHECK_FALSE(v.note.empty());

  // seeded real-rooted samples: every valid full chain is stationary
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = casaskit::testing::random_rooted(rng, 2 + trial % 5);
    const Polynomial& f = s.poly;
    const int n = f.degree();
    std::vector<GaussianRational> chain;
    for (int nu = 0; nu < n; ++nu) {
      std::optional<GaussianRational> pick;
      for (const auto& x : s.roots)
        if (derive(f, nu).evaluate(GaussianRational(x)).is_zero() && (!pick || x > pick->re())) pick = GaussianRational(x);
      if (!pick) break;
      chain.push_back(*pick);
    }
    if (static_cast<int>(chain.size()) < n) continue;
    const auto cv = maximal_chain_check(f, chain);
    CHECK(cv.preconditions_ok);
    CHECK(cv.stationary);
    CHECK_FALSE(cv.contradiction);
  }
}

TEST_CASE("compositions and filter sets") {
  for (int n = 1; n <= 9; ++n) {
    const auto all = compositions(n);
    CHECK(all.size() == (std::size_t{1} << (n - 1)));
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].n() == n);
      seen.insert(all[i].r);
      if (i > 0) CHECK(all[i - 1].r < all[i].r);
    }
    CHECK(seen.size() == all.size());
  }
  CHECK(compositions(3)[0].to_string() == "(1,1,1)");
  CHECK_THROWS_AS(compositions(0), DomainError);

  CHECK(FilterSet::parse("on").enabled.size() == 10);
  CHECK(FilterSet::parse("off").enabled.empty());
  const auto some = FilterSet::parse("lemma11,proposition4");
  CHECK(some.has("lemma11"));
  CHECK(some.has("proposition4"));
  CHECK_FALSE(some.has("corollary11"));
  CHECK_THROWS_AS(FilterSet::parse("corollary12"), DomainError);
}

TEST_CASE("pattern filters") {
  auto v = pattern_admissible({{3, 3}});
  CHECK_FALSE(v.admissible);
  CHECK(v.filter == "Corollary 11");

  v = pattern_admissible({{2, 2, 1, 1, 1}});
  CHECK(v.admissible);

  // n = 12, r0 = 2, r = 3: the window [3, 2.75) is empty and the filter steps aside
  v = pattern_admissible({{3, 3, 2, 2, 2}});
  CHECK(v.admissible);
  REQUIRE(v.skipped.size() == 1);
  CHECK(v.skipped[0].find("Corollary 7") == 0);

  v = pattern_admissible({{6}});
  CHECK(v.filter == "trivial class");

  const FilterSet no11 = FilterSet::parse("corollary3,corollary4,multiple_root");
  CHECK(pattern_admissible({{3, 3}}, no11).filter == "Corollary 3");
  CHECK(pattern_admissible({{2, 1, 1}}, no11).filter == "Corollary 4");
  CHECK(pattern_admissible({{1, 1, 1, 1, 1}}, no11).filter == "multiple root (m = 1)");
  CHECK(pattern_admissible({{2, 1, 1, 1}}, no11).admissible);
  CHECK(pattern_admissible({{3, 3}}, FilterSet::none()).admissible);
}

TEST_CASE("candidate-level inequalities on synthetic stats") {
  SUBCASE("Proposition 3") {
    auto s = blank_stats(10, 5, 2, 1);
    s.r1 = 1;
    s.r_star = 1;
    s.D = 1.0;
    s.D_m.assign(10, 0.5);
    s.span = 10.0;  // > (10 - 1 - 1) * 1 + 1 * 0.5
    const auto only = FilterSet::parse("proposition3");
    auto v = prune_inequalities(s, only);
    CHECK_FALSE(v.admissible);
    CHECK(v.filter == "Proposition 3");
    s.span = 8.4;
    CHECK(prune_inequalities(s, only).admissible);
    s.r1.reset();
    v = prune_inequalities(s, only);
    CHECK(v.admissible);
    CHECK(v.skipped.size() == 1);
  }
  SUBCASE("Proposition 4") {
    auto s = blank_stats(10, 5, 2, 1);
    s.r1 = 1;
    s.r2 = 1;
    s.r_star = 1;
    s.gap = 1.0;
    const double bound = (std::sqrt(99.0 / 8.0) - 1.0) / 8.0;
    const auto only = FilterSet::parse("proposition4");
    s.D = bound * 0.9;
    auto v = prune_inequalities(s, only);
    CHECK_FALSE(v.admissible);
    CHECK(v.filter == "Proposition 4");
    s.D = bound * 1.1;
    CHECK(prune_inequalities(s, only).admissible);
    s.r2.reset();
    CHECK(prune_inequalities(s, only).skipped.size() == 1);
  }
  SUBCASE("Proposition 5") {
    // n = 20, r0 = r = 2: the smallest bound in the window is sqrt(32/7)
    auto s = blank_stats(20, 5, 2, 2);
    s.D = 1.0;
    const auto only = FilterSet::parse("proposition5");
    s.d = std::sqrt(32.0 / 7.0) + 0.01;
    auto v = prune_inequalities(s, only);
    CHECK_FALSE(v.admissible);
    CHECK(v.filter == "Proposition 5");
    s.d = std::sqrt(32.0 / 7.0) - 0.01;
    CHECK(prune_inequalities(s, only).admissible);
  }
  SUBCASE("Lemma 11 and Eq. (43)") {
    auto s = blank_stats(6, 4, 2, 1);
    s.r1 = 1;
    s.l = {3, 2, 0, 0, 1, 0};
    auto v = prune_inequalities(s, FilterSet::parse("lemma11"));
    CHECK(v.filter == "Lemma 11");

    s.l = {3, 2, 1, 0, 0, 0};
    s.D = 1.0;
    s.r_star = 1;
    s.span = 4.9;   // top = 5 * 1 - 4.9 = 0.1
    s.D_m[2] = 0.5;  // bound 0.1 / 0.5 = 0.2 < l(2) + l(3) = 1
    v = prune_inequalities(s, FilterSet::parse("eq43"));
    CHECK(v.filter == "Eq. (43)");
    s.span = 4.0;  // bound 2
    CHECK(prune_inequalities(s, FilterSet::parse("eq43")).admissible);
  }
  SUBCASE("Corollary 7") {
    auto s = blank_stats(20, 6, 2, 2);  // window [2, 4.75)
    s.all_derivative_roots_shared[3] = true;
    auto v = prune_inequalities(s, FilterSet::parse("corollary7"));
    CHECK(v.filter == "Corollary 7");
    s.r0 = 1;
    CHECK(prune_inequalities(s, FilterSet::parse("corollary7")).admissible);
  }
}

TEST_CASE("shared-root counts") {
  auto c = shared_root_counts(P("x^4 - 3*x^2 + 2*x"));
  CHECK(c.centroid_is_root);
  CHECK(c.l == std::vector<int>{2, 1, 0, 0});
  CHECK(c.zero_pairs == std::vector<int>{2});

  c = shared_root_counts(P("x^3 - x"));
  CHECK(c.l == std::vector<int>{2, 0, 0});

  c = shared_root_counts(P("(x-2)^4"));
  CHECK(c.centroid_is_root);
  CHECK(c.l == std::vector<int>{0, 0, 0, 0});

  // centroid 1 is not a root: nothing is excluded
  c = shared_root_counts(P("x^2*(x-3)"));
  CHECK_FALSE(c.centroid_is_root);
  CHECK(c.l == std::vector<int>{2, 1, 0});
  CHECK(c.zero_pairs.empty());

  // l(0) = k - 1 and l(1) counts the multiple roots other than the centroid
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    auto s = casaskit::testing::random_rooted(rng, 3 + trial % 6);
    Rational total = 0, sum = 0;
    for (std::size_t j = 0; j < s.roots.size(); ++j) {
      total += s.multiplicities[j];
      sum += s.multiplicities[j] * s.roots[j];
    }
    const Rational centroid = sum / total;
    int k = 0, multiple = 0;
    bool centroid_root = false;
    for (std::size_t j = 0; j < s.roots.size(); ++j) {
      if (s.roots[j] == centroid) {
        centroid_root = true;
        continue;
      }
      ++k;
      multiple += s.multiplicities[j] > 1;
    }
    const auto counts = shared_root_counts(s.poly);
    CHECK(counts.centroid_is_root == centroid_root);
    if (!centroid_root) continue;
    CHECK(counts.l[0] == k);
    CHECK(counts.l[1] == multiple);
    for (int m = 0; m < s.poly.degree(); ++m) CHECK(counts.l[static_cast<std::size_t>(m)] <= s.poly.degree() - m);
  }
}

TEST_CASE("assignment residual") {
  const Assignment none{{-1, -1, -1}};
  // f = x^2 (x - 1): f'(0) = 0, f''(1) = 4, f'(1) = 1
  CHECK(assignment_residual({{2, 1}}, {0.0, 1.0}, {{-1, 0, 1}}, false) == doctest::Approx(16.0));
  CHECK(assignment_residual({{2, 1}}, {0.0, 1.0}, {{-1, 1, 1}}, false) == doctest::Approx(17.0));
  CHECK(assignment_residual({{2, 1}}, {0.0, 1.0}, none, false) == 0.0);
  CHECK_THROWS_AS(assignment_residual({{2, 1}}, {0.0, 1.0}, {{-1, 0, 1}}), DomainError);

  // x^4 - 3x^2 + 2x: f'(1) = 0, f''(0) = -6, f'''(0) = 0
  const MultiplicityPattern pat{{1, 1, 2}};
  const std::vector<double> roots{-2.0, 0.0, 1.0};
  CHECK(assignment_residual(pat, roots, {{-1, 2, -1, -1}}, false) == 0.0);
  CHECK(assignment_residual(pat, roots, {{-1, 2, 1, 1}}, false) == doctest::Approx(36.0));
  CHECK_THROWS_AS(assignment_residual(pat, roots, {{-1, 2, 1, 1}}), DomainError);
  CHECK_THROWS_AS(assignment_residual(pat, {0.0, -2.0, 1.0}, {{-1, 2, -1, -1}}), DomainError);
  CHECK_THROWS_AS(assignment_residual(pat, roots, {{-1, 3, -1, -1}}, false), DomainError);

  // merging roots drive the residual to zero: f'(e) = -e^2, f''(e) = 0
  for (double e : {1e-1, 1e-2, 1e-3}) {
    const double res = assignment_residual({{1, 1, 1}}, {0.0, e, 2 * e}, {{-1, 1, 1}}, false);
    CHECK(res == doctest::Approx(e * e * e * e).epsilon(1e-6));
  }
  CHECK(Assignment{{-1, 2, -1, 1}}.to_string() == "1:2,3:1");
}

TEST_CASE("search at small degree finds nothing") {
  for (int n : {3, 4}) {
    SearchConfig cfg;
    cfg.degree = n;
    cfg.seed = 7;
    const auto rep = search(cfg);
    CHECK(rep.verdict == "no candidate below theta");
    CHECK(rep.candidates.empty());
    CHECK_FALSE(rep.incomplete);
    REQUIRE(rep.patterns.size() == (std::size_t{1} << (n - 1)));
    for (std::size_t i = 0; i < rep.patterns.size(); ++i) {
      const auto& rec = rep.patterns[i];
      CHECK(rec.pattern.r == compositions(n)[i].r);
      REQUIRE(rec.pruned_by.has_value());
      if (rec.pattern.k() >= 2) {
        REQUIRE(rec.brute_force_min.has_value());
        CHECK(*rec.brute_force_min >= cfg.theta);
        CHECK(rec.brute_force_agrees == true);
        CHECK(rec.assignments == static_cast<std::size_t>(std::pow(rec.pattern.k(), n - 1)));
      }
    }
  }

  SearchConfig one;
  one.degree = 1;
  const auto rep = search(one);
  CHECK(rep.verdict == "no candidate below theta");
  CHECK(rep.patterns.size() == 1);
  CHECK(*rep.patterns[0].pruned_by == "trivial class");
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("search without filters: constraints and brute force") {
  SearchConfig cfg;
  cfg.degree = 5;
  cfg.filters = FilterSet::none();
  const auto rep = search(cfg);
  CHECK(rep.verdict == "no candidate below theta");
  for (const auto& rec : rep.patterns) {
    if (rec.pattern.k() == 1) continue;
    if (rec.pattern.k() == 2) {
      CHECK(*rec.pruned_by == "assignment constraints");
      continue;
    }
    if (rec.assignments == 0) continue;
    REQUIRE(rec.best_residual.has_value());
    CHECK(*rec.best_residual >= cfg.theta);
    // the reported minimizer reproduces its residual through the public objective
    CHECK(assignment_residual(rec.pattern, rec.minimizer, *rec.best_assignment) ==
          doctest::Approx(*rec.best_residual).epsilon(1e-9));
    CHECK(rec.minimizer.front() == 0.0);
    CHECK(rec.minimizer.back() == 1.0);
  }
}

TEST_CASE("search reporting mode with theta = infinity") {
  SearchConfig cfg;
  cfg.degree = 4;
  cfg.theta = std::numeric_limits<double>::infinity();
  const auto rep = search(cfg);
  for (const auto& rec : rep.patterns)
    if (rec.pattern.k() >= 2) CHECK(rec.brute_force_min.has_value());
  CHECK_FALSE(rep.candidates.empty());
  for (const auto& c : rep.candidates) CHECK_FALSE(c.verified);
  CHECK(rep.note == "no candidate reaches high-precision zero; none is claimed as a counterexample");
}

TEST_CASE("search is deterministic across thread counts") {
  SearchConfig cfg;
  cfg.degree = 5;
  cfg.seed = 11;
  cfg.threads = 1;
  const auto a = search(cfg);
  cfg.threads = 4;
  const auto b = search(cfg);
  check_same_report(a, b);
  cfg.seed = 12;
  const auto c = search(cfg);
  CHECK(c.verdict == a.verdict);
}

TEST_CASE("search budget and configuration errors") {
  SearchConfig cfg;
  cfg.degree = 5;
  cfg.assignment_budget = 1;
  const auto rep = search(cfg);
  CHECK(rep.incomplete);
  bool any = false;
  for (const auto& rec : rep.patterns) any = any || rec.budget_exhausted;
  CHECK(any);

  SearchConfig bad;
  bad.theta = 0;
  CHECK_THROWS_AS(search(bad), DomainError);
  bad = {};
  bad.degree = 0;
  CHECK_THROWS_AS(search(bad), DomainError);
  bad = {};
  bad.degree = 6;
  bad.complex_roots = true;
  CHECK_THROWS_AS(search(bad), DomainError);
}

TEST_CASE("complex search at degree 4") {
  SearchConfig cfg;
  cfg.degree = 4;
  cfg.complex_roots = true;
  cfg.multistarts = 8;
  const auto rep = search(cfg);
  CHECK(rep.verdict == "no candidate below theta");
  for (const auto& rec : rep.patterns) {
    CHECK(rec.pruned_by != std::optional<std::string>("Corollary 11"));
    if (rec.best_residual) CHECK(rec.minimizer_imag.size() == rec.minimizer.size());
  }
}

TEST_CASE("triviality three ways") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(2, 9);
  int agree = 0;
  for (int trial = 0; trial < 250; ++trial) {
    Polynomial f;
    if (trial < 200) {
      f = casaskit::testing::random_rooted(rng, deg(rng)).poly;
    } else {
      f = Polynomial::linear(GaussianRational(casaskit::testing::random_rational(rng))).pow(static_cast<unsigned>(deg(rng)));
    }
    const bool a = certify_ca(f).verdict == CAVerdict::trivial;
    const bool b = root_multiset(f).distinct_count() == 1;
    const bool c = penultimate_double_root(f);
    CHECK(a == b);
    CHECK(b == c);
    agree += a == b && b == c;
  }
  CHECK(agree == 250);

  // a double root of f^{(n-2)} with two or more distinct roots forces a non-real one
  for (const char* text : {"x^3 - 1", "x^4 + x", "x^5 + x^2 + 1", "x^4 - 2*x + 1"}) {
    const Polynomial f = P(text);
    REQUIRE(penultimate_double_root(f));
    const auto rm = root_multiset(f);
    REQUIRE(rm.distinct_count() >= 2);
    bool nonreal = false;
    for (const auto& e : rm.entries) nonreal = nonreal || std::abs(e.value().imag()) > e.approx.error_radius;
    CHECK(nonreal);
  }
}

TEST_CASE("constructed shared-root instances") {
  const std::vector<SharedRootFamily> specs{
      {1, 1, Rational(1), 1, {}},
      {2, 1, Rational(2), 1, {{Rational(3), 1}}},
      {1, 2, Rational(1, 2), 2, {{Rational(-5, 2), 1}}},
  };
  int built = 0;
  for (const auto& spec : specs) {
    const auto f = shared_root_instance(spec);
    if (!f) continue;
    ++built;
    const int n = f->degree();
    CHECK(centroid_data(*f).centroid == gq(0));
    CHECK(f->evaluate(GaussianRational(spec.w)).is_zero());
    CHECK(derive(*f, n - 2).evaluate(GaussianRational(spec.w)).is_zero());
    CHECK(derive(*f, n - 2).evaluate(GaussianRational(Rational(-spec.w))).is_zero());
    CHECK(is_real_rooted(*f));

    // numeric bookkeeping agrees with the exact counts
    const auto stats = candidate_stats(real_root_profile(*f));
    const auto counts = shared_root_counts(*f);
    REQUIRE(stats.r1.has_value());
    CHECK(*stats.r1 == spec.r1);
    REQUIRE(stats.r2.has_value());
    CHECK(*stats.r2 == spec.r2);
    CHECK(stats.l == counts.l);
  }
  CHECK(built >= 2);
  CHECK_THROWS_AS(shared_root_instance({1, 1, Rational(0), 1, {}}), DomainError);
  CHECK_FALSE(shared_root_instance({1, 1, Rational(1), 1, {{Rational(1), 1}}}).has_value());
}
