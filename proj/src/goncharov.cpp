#include "casaskit/goncharov.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

#include "casaskit/errors.hpp"

namespace casaskit {

namespace {

mpz_class factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

// i! / (i - m)!
mpz_class falling(int i, int m) {
  mpz_class f = 1;
  for (int t = i - m + 1; t <= i; ++t) f *= t;
  return f;
}

mpz_class binomial(int k, int j) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
  return b;
}

GaussianRational as_gaussian(const mpz_class& z) { return GaussianRational(Rational(z)); }

void check_budget(int n, const GeneticBudget& budget) {
  if (n > budget.max_degree)
    throw BudgetExceeded("genetic-sum enumeration for n = " + std::to_string(n) + " exceeds the degree cap",
                         static_cast<std::size_t>(budget.max_degree));
}

// d_s = z_{n-2-s} - z_{n-1-s}; the genetic sums walk s = 0, 1, ... toward z_0.
GaussianRational node_difference(const NodeSequence& z, int n, int s) { return z[n - 2 - s] - z[n - 1 - s]; }

// Depth-first walk over j_1..j_L (j_0 = 0, 0 <= j_{s+1} <= 1 + j_s) summing
// prod_{s<L} d_s^{e_s} / e_s!, e_s = 1 + j_s - j_{s+1}, grouped by the last index j_L.
std::vector<GaussianRational> genetic_buckets(const NodeSequence& z, int n, int depth) {
  std::vector<std::vector<GaussianRational>> weighted(static_cast<std::size_t>(depth));
  for (int s = 0; s < depth; ++s) {
    const GaussianRational d = node_difference(z, n, s);
    auto& row = weighted[static_cast<std::size_t>(s)];
    row.resize(static_cast<std::size_t>(depth) + 2);
    GaussianRational power(1);
    for (int e = 0; e <= depth + 1; ++e) {
      row[static_cast<std::size_t>(e)] = power / as_gaussian(factorial(e));
      power *= d;
    }
  }
  std::vector<GaussianRational> buckets(static_cast<std::size_t>(depth) + 1);
  std::function<void(int, int, const GaussianRational&)> walk = [&](int s, int j, const GaussianRational& product) {
    if (product.is_zero()) return;
    if (s == depth) {
      buckets[static_cast<std::size_t>(j)] += product;
      return;
    }
    for (int next = 0; next <= 1 + j; ++next)
      walk(s + 1, next, product * weighted[static_cast<std::size_t>(s)][static_cast<std::size_t>(1 + j - next)]);
  };
  walk(0, 0, GaussianRational(1));
  return buckets;
}

void check_nodes(const NodeSequence& nodes) {
  if (nodes.size() < 1) throw DomainError("node sequence must hold at least one node");
}

// Directed rounding that only steps off the computed value when the
// operation was inexact (TwoSum error term, FMA product residual).
double sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}
double add_up(double a, double b) {
  const double s = a + b;
  return sum_error(a, b, s) > 0.0 ? next_up(s) : s;
}
double add_down(double a, double b) {
  const double s = a + b;
  return std::max(0.0, sum_error(a, b, s) < 0.0 ? next_down(s) : s);
}
double mul_up(double a, double b) {
  const double p = a * b;
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}
double mul_down(double a, double b) {
  const double p = a * b;
  return std::max(0.0, std::fma(a, b, -p) < 0.0 ? next_down(p) : p);
}

Interval pow_enclosure(Interval base, int e) {
  Interval r{1.0, 1.0};
  for (int i = 0; i < e; ++i) r = {mul_down(r.lo, base.lo), mul_up(r.hi, base.hi)};
  return r;
}

}  // namespace

NodeSequence::NodeSequence(std::vector<GaussianRational> nodes) : nodes_(std::move(nodes)) {}

NodeSequence NodeSequence::prefix(int k) const {
  return NodeSequence(std::vector<GaussianRational>(nodes_.begin(), nodes_.begin() + k));
}

const char* to_string(Construction c) {
  switch (c) {
    case Construction::interpolation:
      return "interpolation";
    case Construction::recursion:
      return "recursion";
    case Construction::genetic:
      return "genetic";
  }
  return "unknown";
}

GoncharovResult build_interpolation(const NodeSequence& nodes) {
  check_nodes(nodes);
  const int n = nodes.size();
  // unknown P = sum_{i<n} c_i z^i; row m is upper triangular with diagonal m!
  std::vector<GaussianRational> c(static_cast<std::size_t>(n));
  for (int m = n - 1; m >= 0; --m) {
    GaussianRational rhs = -as_gaussian(falling(n, m)) * pow(nodes[m], static_cast<unsigned>(n - m));
    for (int i = m + 1; i < n; ++i)
      rhs -= c[static_cast<std::size_t>(i)] * as_gaussian(falling(i, m)) * pow(nodes[m], static_cast<unsigned>(i - m));
    c[static_cast<std::size_t>(m)] = rhs / as_gaussian(factorial(m));
  }
  c.emplace_back(1);
  return {Polynomial(std::move(c)), Construction::interpolation};
}

GoncharovResult build_recursion(const NodeSequence& nodes) {
  check_nodes(nodes);
  const int n = nodes.size();
  // memo[k] = G_k on z_0..z_{k-1}; expanding z^k in the monic basis gives
  // the weights C(k, j) z_j^{k-j}.
  std::vector<Polynomial> memo;
  memo.reserve(static_cast<std::size_t>(n) + 1);
  memo.push_back(Polynomial::constant(1));
  for (int k = 1; k <= n; ++k) {
    Polynomial g = Polynomial::monomial(GaussianRational(1), static_cast<unsigned>(k));
    for (int j = 0; j < k; ++j) {
      GaussianRational w = as_gaussian(binomial(k, j)) * pow(nodes[j], static_cast<unsigned>(k - j));
      if (!w.is_zero()) g -= memo[static_cast<std::size_t>(j)] * w;
    }
    memo.push_back(std::move(g));
  }
  return {memo.back(), Construction::recursion};
}

GoncharovResult build_genetic(const NodeSequence& nodes, const GeneticBudget& budget) {
  return {derivative_genetic(nodes, 0, budget), Construction::genetic};
}

Polynomial derivative_genetic(const NodeSequence& nodes, int m, const GeneticBudget& budget) {
  check_nodes(nodes);
  const int n = nodes.size();
  if (m < 0 || m > n - 1) throw DomainError("derivative order must lie in 0..n-1");
  check_budget(n, budget);
  const int depth = n - 1 - m;
  std::vector<GaussianRational> buckets = genetic_buckets(nodes, n, depth);
  // n! sum_J bucket[J] (z - z_m)^{1+J} / (1+J)!
  const Polynomial shifted = Polynomial::linear(nodes[m]);
  Polynomial out;
  for (int J = 0; J <= depth; ++J) {
    const GaussianRational& b = buckets[static_cast<std::size_t>(J)];
    if (b.is_zero()) continue;
    out += shifted.pow(static_cast<unsigned>(1 + J)) * (b / as_gaussian(factorial(1 + J)));
  }
  return out * as_gaussian(factorial(n));
}

GaussianRational derivative_at_node(const NodeSequence& nodes, int m, int s, const GeneticBudget& budget) {
  check_nodes(nodes);
  const int n = nodes.size();
  if (m < 0 || m > n - 1) throw DomainError("node index m must lie in 0..n-1");
  if (s < 1 || s > n - m) throw DomainError("offset s must lie in 1..n-m");
  check_budget(n, budget);
  if (m == n - 1) return as_gaussian(factorial(n));  // G^{(n)} = n!
  const int depth = n - 2 - m;
  std::vector<GaussianRational> buckets = genetic_buckets(nodes, n, depth);
  const GaussianRational d = node_difference(nodes, n, depth);  // z_m - z_{m+1}
  GaussianRational sum;
  for (int J = 0; J <= depth; ++J) {
    const int e = 2 + J - s;
    if (e < 0) continue;
    sum += buckets[static_cast<std::size_t>(J)] * pow(d, static_cast<unsigned>(e)) / as_gaussian(factorial(e));
  }
  return sum * as_gaussian(factorial(n));
}

Interval goncharov_bound_enclosure(const NodeSequence& nodes, const GaussianRational& z) {
  check_nodes(nodes);
  const int n = nodes.size();
  Interval total = magnitude_enclosure(z - nodes[0]);
  for (int s = 0; s + 1 < n; ++s) {
    Interval step = magnitude_enclosure(nodes[s + 1] - nodes[s]);
    total = {add_down(total.lo, step.lo), add_up(total.hi, step.hi)};
  }
  return pow_enclosure(total, n);
}

double goncharov_bound(const NodeSequence& nodes, const GaussianRational& z) {
  return goncharov_bound_enclosure(nodes, z).hi;
}

double goncharov_bound(std::span<const std::complex<double>> nodes, std::complex<double> z) {
  if (nodes.empty()) throw DomainError("node sequence must hold at least one node");
  double total = std::abs(z - nodes[0]);
  for (std::size_t s = 0; s + 1 < nodes.size(); ++s) total = add_up(total, std::abs(nodes[s + 1] - nodes[s]));
  return pow_enclosure({total, total}, static_cast<int>(nodes.size())).hi;
}

Interval sharp_bound_enclosure(const NodeSequence& nodes, const GaussianRational& z, const GeneticBudget& budget) {
  check_nodes(nodes);
  const int n = nodes.size();
  check_budget(n, budget);
  if (n > 20) throw BudgetExceeded("multinomial weights overflow 64 bits", 20);
  // |d_s| for s = 0..n-2 and |z - z_0| for s = n-1.
  std::vector<Interval> mags(static_cast<std::size_t>(n));
  for (int s = 0; s + 1 < n; ++s) mags[static_cast<std::size_t>(s)] = magnitude_enclosure(node_difference(nodes, n, s));
  mags[static_cast<std::size_t>(n - 1)] = magnitude_enclosure(z - nodes[0]);

  std::vector<int> k(static_cast<std::size_t>(n));
  Interval total{0.0, 0.0};
  // k_s <= s + 1 - (k_0 + ... + k_{s-1}); k_{n-1} closes the sum at n.
  std::function<void(int, int)> walk = [&](int s, int used) {
    if (s == n - 1) {
      k[static_cast<std::size_t>(s)] = n - used;
      std::uint64_t coef = 1;
      int filled = 0;
      for (int t = 0; t < n; ++t) {
        for (int i = 1; i <= k[static_cast<std::size_t>(t)]; ++i) {
          ++filled;
          coef = coef * static_cast<std::uint64_t>(filled) / static_cast<std::uint64_t>(i);
        }
      }
      const double c = static_cast<double>(coef);
      Interval term = static_cast<std::uint64_t>(c) == coef ? Interval{c, c} : Interval{next_down(c), next_up(c)};
      for (int t = 0; t < n; ++t) {
        Interval p = pow_enclosure(mags[static_cast<std::size_t>(t)], k[static_cast<std::size_t>(t)]);
        term = {mul_down(term.lo, p.lo), mul_up(term.hi, p.hi)};
      }
      total = {add_down(total.lo, term.lo), add_up(total.hi, term.hi)};
      return;
    }
    for (int ks = 0; ks <= s + 1 - used; ++ks) {
      k[static_cast<std::size_t>(s)] = ks;
      walk(s + 1, used + ks);
    }
  };
  walk(0, 0);
  return total;
}

double sharp_bound(const NodeSequence& nodes, const GaussianRational& z, const GeneticBudget& budget) {
  return sharp_bound_enclosure(nodes, z, budget).hi;
}

NodeSequence scale_nodes(const NodeSequence& nodes, const GaussianRational& alpha) {
  if (alpha.is_zero()) throw DomainError("scaling factor must be nonzero");
  std::vector<GaussianRational> out;
  out.reserve(nodes.values().size());
  for (const auto& z : nodes.values()) out.push_back(z * alpha);
  return NodeSequence(std::move(out));
}

}  // namespace casaskit
