#include <random>

#include "casaskit/errors.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"
#include "casaskit/text_format.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace casaskit;
using casaskit::testing::gq;

namespace {

Polynomial P(const char* text) { return parse_polynomial(text); }

// Product of factor^multiplicity.
Polynomial recombine(const std::vector<std::pair<Polynomial, int>>& parts) {
  Polynomial out = Polynomial::constant(1);
  for (const auto& [f, r] : parts) out *= f.pow(static_cast<unsigned>(r));
  return out;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0.25")) == "-1/4");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(to_string(parse_gaussian("(1/2,-3)")) == "(1/2,-3)");
  CHECK(parse_gaussian("(2,0)") == gq(2));
}

TEST_CASE("gaussian rational field operations") {
  GaussianRational a(make_rational(1), make_rational(2));
  GaussianRational b(make_rational(3), make_rational(-1));
  CHECK(a * b == GaussianRational(make_rational(5), make_rational(5)));
  CHECK((a / b) * b == a);
  CHECK_THROWS_AS(a / GaussianRational(), DomainError);
  GaussianRational root;
  CHECK(exact_sqrt(GaussianRational(make_rational(-4)), root));
  CHECK(root * root == gq(-4));
  CHECK_FALSE(exact_sqrt(gq(2), root));
}

TEST_CASE("derive") {
  CHECK(derive(P("x^3 - x"), 1) == P("3*x^2 - 1"));
  CHECK(derive(P("x^4 - 3*x^2 + 2*x"), 0) == P("x^4 - 3*x^2 + 2*x"));
  CHECK(derive(P("x^4 - 3*x^2 + 2*x"), 2) == P("12*x^2 - 6"));
  CHECK(derive(P("x^2"), 2) == P("2"));
  CHECK_THROWS_AS(derive(P("x^2"), 3), DomainError);
}

TEST_CASE("squarefree decomposition") {
  auto d = squarefree_decompose(P("x^2*(x-1)"));
  REQUIRE(d.size() == 2);
  CHECK(d[0].first == P("x - 1"));
  CHECK(d[0].second == 1);
  CHECK(d[1].first == P("x"));
  CHECK(d[1].second == 2);

  d = squarefree_decompose(P("(x-2)^4"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].first == P("x - 2"));
  CHECK(d[0].second == 4);

  d = squarefree_decompose(P("x*(x-1)^2*(x+2)"));
  REQUIRE(d.size() == 2);
  CHECK(d[0].first == P("x^2 + 2*x"));
  CHECK(d[1].first == P("x - 1"));
  CHECK(d[1].second == 2);
}

TEST_CASE("root multiset on spec examples") {
  auto rm = root_multiset(P("x^3 - x"));
  REQUIRE(rm.distinct_count() == 3);
  CHECK(rm.all_exact());
  CHECK(*rm.entries[0].exact == gq(-1));
  CHECK(*rm.entries[1].exact == gq(0));
  CHECK(*rm.entries[2].exact == gq(1));

  rm = root_multiset(P("(x-2)^4"));
  REQUIRE(rm.distinct_count() == 1);
  CHECK(rm.entries[0].multiplicity == 4);
  CHECK(*rm.entries[0].exact == gq(2));

  rm = root_multiset(P("x^4 - 3*x^2 + 2*x"));
  REQUIRE(rm.distinct_count() == 3);
  CHECK(*rm.entries[0].exact == gq(-2));
  CHECK(*rm.entries[1].exact == gq(0));
  CHECK(*rm.entries[2].exact == gq(1));
  CHECK(rm.entries[2].multiplicity == 2);
  CHECK(rm.max_multiplicity() == 2);
  CHECK(rm.min_multiplicity() == 1);

  CHECK_THROWS_AS(root_multiset(P("5")), DomainError);
}

TEST_CASE("irrational and complex roots are certified") {
  Polynomial p = P("x^5 - 3*x + 1");
  auto rm = root_multiset(p);
  CHECK(rm.distinct_count() == 5);
  for (const auto& e : rm.entries) {
    CHECK_FALSE(e.is_exact());
    CHECK(std::abs(p.evaluate(e.value())) <= residual_bound(p, e.approx) + 1e-12);
  }
  rm = root_multiset(P("x^2 + 1"));
  REQUIRE(rm.distinct_count() == 2);
  CHECK(rm.all_exact());
  CHECK_FALSE(is_real_rooted(P("x^2 + 1")));
  CHECK(is_real_rooted(P("x^3 - x")));
  CHECK(count_distinct_real_roots(P("(x-1)^3*(x+1)")) == 2);
}

TEST_CASE("power sums") {
  auto ps = power_sums(P("x^3 - x"), 2);
  CHECK(ps[0] == gq(3));
  CHECK(ps[1] == gq(0));
  CHECK(ps[2] == gq(2));
  CHECK(power_sums(P("(x-3/2)^5"), 1)[1] == gq(15, 2));
  CHECK(power_sums(P("x^2*(x-1)"), 2)[2] == gq(1));
  // non-monic input is normalized first
  CHECK(power_sums(P("2*x^2 - 2"), 2)[2] == gq(2));
}

TEST_CASE("centroid data") {
  auto c = centroid_data(P("x^3 - x"));
  CHECK(c.centroid == gq(0));
  CHECK(c.gap_squared == gq(1, 3));
  CHECK_FALSE(c.penultimate.exact.has_value());
  CHECK(std::abs(c.penultimate.value + c.mirror.value) < 1e-15);

  c = centroid_data(P("(x-5)^4"));
  CHECK(c.centroid == gq(5));
  CHECK(c.gap_squared == gq(0));

  c = centroid_data(P("x^2*(x-1)"));
  CHECK(c.centroid == gq(1, 3));
  CHECK(c.gap_squared == gq(1, 9));
  REQUIRE(c.penultimate.exact.has_value());
  CHECK(*c.penultimate.exact + *c.mirror.exact == gq(2, 3));

  CHECK_THROWS_AS(centroid_data(P("x - 1")), DomainError);
}

TEST_CASE("triviality") {
  CHECK(is_trivial(P("(x-2)^4")));
  CHECK(is_trivial(P("3*(x+1/2)^3")));
  CHECK_FALSE(is_trivial(P("x^3 - x")));
  CHECK_FALSE(is_trivial(P("x^4 - 3*x^2 + 2*x")));
}

TEST_CASE("polynomial text round trip") {
  for (const char* s : {"x^4 - 3*x^2 + 2*x", "3/2*x^2 - 1/3", "-x^5 + x", "poly:[(0,1), 2, (1,-1)]"}) {
    Polynomial p = parse_polynomial(s);
    CHECK(parse_polynomial(format_polynomial(p)) == p);
    CHECK(format_polynomial(parse_polynomial(format_polynomial(p))) == format_polynomial(p));
  }
  CHECK(parse_polynomial("poly:[1,-8,24,-32,16]") == P("(x-2)^4"));
  CHECK(format_polynomial(P("x^4 - 3x^2 + 2x")) == "x^4 - 3*x^2 + 2*x");
  CHECK_THROWS_AS(parse_polynomial("x^2 +* 1"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("poly:[0, 1]"), ParseError);
  try {
    parse_polynomial("x^2 + y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("seeded properties over rational-rooted polynomials") {
  std::mt19937_64 rng(20240601);
  for (int sample = 0; sample < 200; ++sample) {
    const int n = 1 + static_cast<int>(rng() % 10);
    auto s = casaskit::testing::random_rooted(rng, n);
    const Polynomial& p = s.poly;

    auto parts = squarefree_decompose(p);
    CHECK(recombine(parts) == p);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j) CHECK(gcd(parts[i].first, parts[j].first).degree() == 0);

    auto rm = root_multiset(p);
    int total = 0;
    for (const auto& e : rm.entries) total += e.multiplicity;
    CHECK(total == n);
    CHECK(rm.all_exact());

    // power sums against the explicit root sums
    auto ps = power_sums(p, 4);
    for (int t = 0; t <= 4; ++t) {
      GaussianRational explicit_sum;
      for (std::size_t j = 0; j < s.roots.size(); ++j)
        explicit_sum += GaussianRational(s.multiplicities[j]) * pow(GaussianRational(s.roots[j]), static_cast<unsigned>(t));
      CHECK(ps[static_cast<std::size_t>(t)] == explicit_sum);
    }

    CHECK(is_trivial(p) == (rm.distinct_count() == 1));

    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) CHECK(derive(derive(p, a), b) == derive(p, a + b));
  }
}

TEST_CASE("numeric roots satisfy the a-posteriori bound") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-20, 20);
  for (int sample = 0; sample < 50; ++sample) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<GaussianRational> c;
    for (int i = 0; i < n; ++i) c.emplace_back(coef(rng));
    c.emplace_back(1);
    Polynomial p = squarefree_part(Polynomial(c));
    if (p.degree() < 1) continue;
    for (const auto& root : numeric_roots(p)) {
      CHECK(std::isfinite(root.error_radius));
      CHECK(std::abs(p.evaluate(root.value)) <= residual_bound(p, root) * (1 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("an irrational root near an integer root is not snapped onto it") {
  // x (x-2) (x-3) (x^2 + 5x - 21); one quadratic root sits at 2.72
  auto rm = root_multiset(P("x^5 - 40*x^3 + 135*x^2 - 126*x"));
  REQUIRE(rm.distinct_count() == 5);
  int exact = 0;
  for (const auto& e : rm.entries) exact += e.exact.has_value();
  CHECK(exact == 3);
  for (std::size_t i = 0; i + 1 < rm.entries.size(); ++i)
    CHECK(rm.entries[i].approx.value.real() < rm.entries[i + 1].approx.value.real());
}
