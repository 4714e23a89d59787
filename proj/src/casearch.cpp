#include "casaskit/casearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "casaskit/errors.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"

namespace casaskit {

// --- exact certification ---------------------------------------------------

const char* to_string(CAVerdict v) {
  switch (v) {
    case CAVerdict::trivial:
      return "trivial";
    case CAVerdict::ca_nontrivial_candidate:
      return "ca_nontrivial_candidate";
    case CAVerdict::not_ca:
      return "not_ca";
  }
  return "unknown";
}

CACertificate certify_ca(const Polynomial& p) {
  if (p.degree() < 1) throw DomainError("certification needs degree >= 1");
  const Polynomial f = p.monic();
  CACertificate cert;
  bool all = true;
  for (int m = 1; m < f.degree(); ++m) {
    OrderEvidence e;
    e.order = m;
    e.witness = gcd(f, derive(f, m));
    e.shared = e.witness.degree() >= 1;
    all = all && e.shared;
    cert.orders.push_back(std::move(e));
  }
  if (is_trivial(f))
    cert.verdict = CAVerdict::trivial;
  else
    cert.verdict = all ? CAVerdict::ca_nontrivial_candidate : CAVerdict::not_ca;
  return cert;
}

Polynomial scale_roots(const Polynomial& p, const GaussianRational& alpha) {
  if (alpha.is_zero()) throw DomainError("scaling factor must be nonzero");
  std::vector<GaussianRational> c = p.ascending();
  GaussianRational w(1);
  for (int i = p.degree(); i >= 0; --i) {
    c[static_cast<std::size_t>(i)] *= w;
    w *= alpha;
  }
  return Polynomial(std::move(c));
}

UnitDiscScaling normalize_unit_disc(const Polynomial& p, const std::vector<GaussianRational>& common_roots) {
  if (p.degree() < 1) throw DomainError("scaling needs degree >= 1");
  Rational max_norm = 0;
  if (common_roots.empty()) {
    for (const auto& e : root_multiset(p).entries) {
      if (e.is_exact()) {
        max_norm = std::max(max_norm, e.exact->norm());
      } else {
        const Rational bound = rational_from_double(next_up(std::abs(e.value()) + e.approx.error_radius));
        max_norm = std::max(max_norm, Rational(bound * bound));
      }
    }
  }
  for (const auto& z : common_roots) max_norm = std::max(max_norm, z.norm());
  UnitDiscScaling out{p, Rational(1)};
  if (max_norm < 1) return out;
  // least e with 2^e >= 2 max|z|, compared through squares
  Rational four_e = 1;
  while (four_e < 4 * max_norm) {
    four_e *= 4;
    out.alpha /= 2;
  }
  out.polynomial = scale_roots(p, GaussianRational(out.alpha));
  return out;
}

ChainVerdict maximal_chain_check(const Polynomial& p, const std::vector<GaussianRational>& chain) {
  const int n = p.degree();
  if (n < 1) throw DomainError("chain check needs degree >= 1");
  ChainVerdict v;
  if (chain.empty() || static_cast<int>(chain.size()) > n) {
    v.note = "chain must hold between 1 and n entries";
    return v;
  }
  const Polynomial f = p.monic();
  const int len = static_cast<int>(chain.size());
  for (int nu = 0; nu < len; ++nu) {
    const GaussianRational& x = chain[static_cast<std::size_t>(nu)];
    if (!x.is_real()) {
      v.note = "chain entry " + std::to_string(nu) + " is not real";
      return v;
    }
    if (!f.evaluate(x).is_zero() || !derive(f, nu).evaluate(x).is_zero()) {
      v.note = "x_" + std::to_string(nu) + " is not a common root of f and f^(" + std::to_string(nu) + ")";
      return v;
    }
  }
  v.preconditions_ok = true;
  v.sign_condition = true;
  v.non_increasing = true;
  v.stationary = true;
  for (int nu = 0; nu < len; ++nu) {
    const GaussianRational& x = chain[static_cast<std::size_t>(nu)];
    for (int s = 1; s <= n - nu - 1; ++s)
      if (sgn(derive(f, s + nu).evaluate(x).re()) < 0) v.sign_condition = false;
    if (nu > 0) {
      const Rational& prev = chain[static_cast<std::size_t>(nu - 1)].re();
      if (x.re() > prev) v.non_increasing = false;
      if (x.re() != prev) v.stationary = false;
    }
    const Polynomial d = derive(f, nu);
    bool maximal = true;
    if (d.degree() >= 1) {
      const double xd = x.re().get_d();
      for (const auto& e : root_multiset(d).entries) {
        if (e.is_exact()) {
          if (e.exact->is_real() && e.exact->re() > x.re()) maximal = false;
        } else {
          const double rad = std::max(e.approx.error_radius, 1e-12 * (1 + std::abs(e.value())));
          if (std::abs(e.value().imag()) <= rad && e.value().real() - rad > xd) maximal = false;
        }
      }
    }
    v.maximal.push_back(maximal);
  }
  if (len == n && !v.stationary && (v.sign_condition || v.non_increasing) && is_real_rooted(f)) {
    v.contradiction = true;
    v.note = "complete non-stationary chain on a real-rooted polynomial";
  } else if (len < n) {
    v.note = "partial chain";
  }
  return v;
}

// --- patterns and filters --------------------------------------------------

int MultiplicityPattern::n() const { return std::accumulate(r.begin(), r.end(), 0); }
int MultiplicityPattern::max() const { return *std::max_element(r.begin(), r.end()); }
int MultiplicityPattern::min() const { return *std::min_element(r.begin(), r.end()); }

std::string MultiplicityPattern::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

std::vector<MultiplicityPattern> compositions(int n) {
  if (n < 1) throw DomainError("compositions need n >= 1");
  std::vector<MultiplicityPattern> out;
  std::vector<int> parts;
  std::function<void(int)> walk = [&](int left) {
    if (left == 0) {
      out.push_back({parts});
      return;
    }
    for (int first = 1; first <= left; ++first) {
      parts.push_back(first);
      walk(left - first);
      parts.pop_back();
    }
  };
  walk(n);
  return out;
}

namespace {

const std::vector<std::string>& filter_names() {
  static const std::vector<std::string> names{"corollary11", "corollary3",   "corollary4",   "multiple_root",
                                              "corollary7",  "lemma11",      "eq43",         "proposition3",
                                              "proposition4", "proposition5"};
  return names;
}

}  // namespace

FilterSet FilterSet::all() { return {std::set<std::string>(filter_names().begin(), filter_names().end())}; }
FilterSet FilterSet::none() { return {}; }

FilterSet FilterSet::parse(const std::string& text) {
  if (text == "on" || text == "all") return all();
  if (text == "off" || text == "none") return none();
  FilterSet out;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    if (std::find(filter_names().begin(), filter_names().end(), name) == filter_names().end())
      throw DomainError("unknown filter '" + name + "'");
    out.enabled.insert(name);
  }
  return out;
}

namespace {

double corollary7_window(int n, int r0) { return 0.5 * (1.0 - 1.0 / r0) * (n - 1); }

}  // namespace

FilterVerdict pattern_admissible(const MultiplicityPattern& pattern, const FilterSet& filters) {
  FilterVerdict v;
  const int n = pattern.n(), k = pattern.k(), r = pattern.max(), r0 = pattern.min();
  auto prune = [&](std::string filter, std::string why) {
    v.admissible = false;
    v.filter = std::move(filter);
    v.reason = std::move(why);
    return v;
  };
  if (k == 1) return prune("trivial class", "a single root of full multiplicity");
  if (filters.has("corollary11") && k <= 4)
    return prune("Corollary 11", "a real-rooted CA-polynomial has at least 5 distinct zeros");
  if (filters.has("corollary3") && k == 2)
    return prune("Corollary 3", "both zeros are extreme, so no derivative of order >= r shares either");
  if (filters.has("corollary4") && k == 3)
    return prune("Corollary 4", "three distinct real zeros cannot share roots with f^(n-2) and f^(n-1)");
  if (filters.has("multiple_root") && r == 1)
    return prune("multiple root (m = 1)", "f' shares no root with a square-free f");
  if (filters.has("corollary7") && !(r < corollary7_window(n, r0)))
    v.skipped.push_back("Corollary 7: window [r, (1 - 1/r0)(n - 1)/2) is empty");
  return v;
}

CandidateStats candidate_stats(const RealRootProfile& f) {
  CandidateStats s;
  s.n = f.n;
  s.k = f.k();
  s.r = f.r();
  s.r0 = f.r0();
  if (f.centroid_root) s.r1 = f.multiplicities[static_cast<std::size_t>(*f.centroid_root)];
  if (f.penultimate_root && f.penultimate_root != f.centroid_root)
    s.r2 = f.multiplicities[static_cast<std::size_t>(*f.penultimate_root)];
  const ExtremalStats ex = extremal_stats(f);
  s.D = ex.D.value_or(0.0);
  s.d = ex.d.value_or(0.0);
  s.r_star = std::abs(ex.lambda_star - f.centroid) >= std::abs(ex.lambda_low - f.centroid) ? ex.r_star : ex.r_low;
  s.span = ex.span;
  s.gap = f.gap;
  s.D_m = ex.D_m;
  if (f.centroid_root) {
    for (int m = 0; m < f.n; ++m) {
      const auto& idx = f.shared[static_cast<std::size_t>(m)];
      s.l.push_back(static_cast<int>(std::count_if(idx.begin(), idx.end(), [&](int j) { return j != *f.centroid_root; })));
    }
  }
  const double eps = 1e-7 * std::max(1.0, s.span);
  for (int m = 0; m < f.n; ++m) {
    bool all = true;
    for (double x : f.derivative_roots[static_cast<std::size_t>(m)]) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : f.roots) best = std::min(best, std::abs(x - y));
      if (best > eps) all = false;
    }
    s.all_derivative_roots_shared.push_back(all);
  }
  return s;
}

FilterVerdict prune_inequalities(const CandidateStats& s, const FilterSet& filters) {
  FilterVerdict v;
  const int n = s.n;
  const double slack = 1e-9 * std::max(1.0, s.D);
  auto prune = [&](std::string filter, std::string why) {
    v.admissible = false;
    v.filter = std::move(filter);
    v.reason = std::move(why);
    return v;
  };
  const bool have_l = s.r1.has_value() && static_cast<int>(s.l.size()) == n;
  const bool have_dm = static_cast<int>(s.D_m.size()) == n;
  auto l_at = [&](int m) { return m >= n - 1 ? 0 : s.l[static_cast<std::size_t>(m)]; };

  if (filters.has("lemma11")) {
    if (!have_l) {
      v.skipped.push_back("Lemma 11: centroid is not a root");
    } else {
      for (int m = s.r; m <= n - 2; ++m)
        if (l_at(m) == 0 && l_at(m + 1) == 0)
          return prune("Lemma 11", "l(" + std::to_string(m) + ") = l(" + std::to_string(m + 1) + ") = 0");
    }
  }
  if (filters.has("eq43")) {
    if (!have_l || !have_dm) {
      v.skipped.push_back("Eq. (43): centroid is not a root");
    } else {
      const double top = (n - *s.r1) * s.D - s.r_star * s.span;
      for (int m = s.r; m <= n - 2; ++m) {
        const double Dm = m == n - 2 ? s.gap : s.D_m[static_cast<std::size_t>(m)];
        const double den = s.r0 * (s.D - Dm);
        if (den <= slack) continue;
        if (l_at(m) + l_at(m + 1) > top / den + 1e-9)
          return prune(m == n - 2 ? "Eq. (45)" : "Eq. (43)",
                       "l(m) + l(m+1) exceeds its bound at m = " + std::to_string(m));
      }
    }
  }
  if (filters.has("proposition3")) {
    if (!s.r1 || !have_dm || s.r_star == 0) {
      v.skipped.push_back("Proposition 3: centroid is not a root");
    } else {
      for (int m = s.r; m <= n - 2; ++m) {
        const double rhs = ((n - *s.r1 - s.r0) * s.D + s.r0 * s.D_m[static_cast<std::size_t>(m)]) / s.r_star;
        if (s.span > rhs + slack) return prune("Proposition 3", "span exceeds its bound at m = " + std::to_string(m));
      }
    }
  }
  if (filters.has("proposition4")) {
    if (!s.r1 || !s.r2 || n - *s.r1 - *s.r2 <= 0 || n - *s.r1 - s.r0 <= 0) {
      v.skipped.push_back("Proposition 4: needs shared x_{n-1} and x_{n-2} with r_1 + r_2 < n");
    } else {
      const double bound = (s.r_star * std::sqrt((double(n) * n - *s.r1) / (n - *s.r1 - *s.r2)) - s.r0) * s.gap /
                           (n - *s.r1 - s.r0);
      if (s.D < bound - slack) return prune("Proposition 4", "D lies below the bound");
    }
  }
  if (filters.has("proposition5")) {
    if (s.D <= 0.0 || s.k < 2) {
      v.skipped.push_back("Proposition 5: D is not positive");
    } else {
      const double hi = corollary7_window(n, s.r0);
      for (int m = s.r; m + 1 < hi; ++m) {
        const double bound = std::sqrt(2.0 * (n - m - 1) / (2.0 * (s.k - 1) - 1));
        if (s.d / s.D > bound + 1e-9)
          return prune("Proposition 5", "d/D exceeds its bound at m = " + std::to_string(m));
      }
    }
  }
  if (filters.has("corollary7")) {
    const double hi = corollary7_window(n, s.r0);
    if (!(s.r < hi)) {
      v.skipped.push_back("Corollary 7: window [r, (1 - 1/r0)(n - 1)/2) is empty");
    } else {
      for (int m = s.r; m < hi && m < static_cast<int>(s.all_derivative_roots_shared.size()); ++m)
        if (s.all_derivative_roots_shared[static_cast<std::size_t>(m)])
          return prune("Corollary 7", "every root of f^(" + std::to_string(m) + ") is a root of f");
    }
  }
  return v;
}

SharedRootCounts shared_root_counts(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw DomainError("shared-root counts need degree >= 1");
  const Polynomial f = p.monic();
  const GaussianRational c = centroid_data(f).centroid;
  const Polynomial sqf = squarefree_part(f);
  int r = 0;
  for (const auto& [factor, mult] : squarefree_decompose(f)) r = std::max(r, mult);
  SharedRootCounts out;
  out.centroid_is_root = f.evaluate(c).is_zero();
  for (int m = 0; m < n; ++m) {
    const Polynomial g = m == 0 ? sqf : gcd(sqf, derive(f, m));
    int count = std::max(0, g.degree());
    if (out.centroid_is_root && count > 0 && g.evaluate(c).is_zero()) --count;
    out.l.push_back(count);
  }
  if (out.centroid_is_root)
    for (int m = r; m <= n - 2; ++m)
      if (out.l[static_cast<std::size_t>(m)] == 0 && out.l[static_cast<std::size_t>(m + 1)] == 0)
        out.zero_pairs.push_back(m);
  return out;
}

// --- search ----------------------------------------------------------------

std::string Assignment::to_string() const {
  std::string s;
  for (std::size_t m = 1; m < root_of_order.size(); ++m) {
    if (root_of_order[m] < 0) continue;
    if (!s.empty()) s += ",";
    s += std::to_string(m) + ":" + std::to_string(root_of_order[m]);
  }
  return s;
}

namespace {

namespace mp = boost::multiprecision;

// Minimum spacing of consecutive roots after normalizing to [0, 1].
constexpr double kSeparation = 0.02;

template <class T>
struct Cx {
  T re, im;
};

template <class T>
Cx<T> operator+(const Cx<T>& a, const Cx<T>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
Cx<T> operator-(const Cx<T>& a, const Cx<T>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
Cx<T> operator*(const Cx<T>& a, const Cx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// ascending coefficients of prod (x - lambda_j)^{r_j}
template <class T>
std::vector<Cx<T>> expand(const std::vector<Cx<T>>& lambda, const std::vector<int>& mult) {
  std::vector<Cx<T>> c{{T(1), T(0)}};
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    for (int t = 0; t < mult[j]; ++t) {
      std::vector<Cx<T>> next(c.size() + 1, Cx<T>{T(0), T(0)});
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] = next[i + 1] + c[i];
        next[i] = next[i] - lambda[j] * c[i];
      }
      c = std::move(next);
    }
  }
  return c;
}

template <class T>
Cx<T> derivative_value(const std::vector<Cx<T>>& c, int m, const Cx<T>& x) {
  const int n = static_cast<int>(c.size()) - 1;
  Cx<T> acc{T(0), T(0)};
  for (int i = n; i >= m; --i) {
    T w(1);
    for (int t = i - m + 1; t <= i; ++t) w *= t;
    acc = acc * x + Cx<T>{c[static_cast<std::size_t>(i)].re * w, c[static_cast<std::size_t>(i)].im * w};
  }
  return acc;
}

// One (pattern, assignment) least-squares problem in gauge-fixed coordinates.
struct Model {
  std::vector<int> mult;
  std::vector<int> orders;
  std::vector<int> targets;
  bool complex_mode = false;

  int k() const { return static_cast<int>(mult.size()); }
  int params() const { return k() < 3 ? 0 : (complex_mode ? 2 : 1) * (k() - 2); }

  // Real mode: lambda_0 = 0, lambda_{k-1} = 1 and the k-1 gaps are
  // kSeparation + (1 - (k-1) kSeparation) softmax(0, u).
  template <class T>
  std::vector<Cx<T>> roots(const Vec<T>& u) const {
    using std::exp;
    const int kk = k();
    std::vector<Cx<T>> lam(static_cast<std::size_t>(kk), Cx<T>{T(0), T(0)});
    if (kk == 1) return lam;
    lam.back().re = T(1);
    if (complex_mode) {
      for (int i = 1; i + 1 < kk; ++i) lam[static_cast<std::size_t>(i)] = {u[2 * (i - 1)], u[2 * (i - 1) + 1]};
      return lam;
    }
    T top(0);
    for (int i = 0; i < u.size(); ++i)
      if (u[i] > top) top = u[i];
    std::vector<T> e(static_cast<std::size_t>(kk - 1));
    T sum(0);
    for (int i = 0; i < kk - 1; ++i) {
      e[static_cast<std::size_t>(i)] = exp((i == 0 ? T(0) : T(u[i - 1])) - top);
      sum += e[static_cast<std::size_t>(i)];
    }
    const T free = T(1) - T(kk - 1) * T(kSeparation);
    T acc(0);
    for (int i = 1; i + 1 < kk; ++i) {
      acc += T(kSeparation) + free * e[static_cast<std::size_t>(i - 1)] / sum;
      lam[static_cast<std::size_t>(i)].re = acc;
    }
    return lam;
  }

  template <class T>
  Vec<T> residuals(const Vec<T>& u) const {
    const std::vector<Cx<T>> lam = roots(u);
    const std::vector<Cx<T>> c = expand(lam, mult);
    Vec<T> r(static_cast<Eigen::Index>(orders.size() * (complex_mode ? 2 : 1)));
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const Cx<T> v = derivative_value(c, orders[i], lam[static_cast<std::size_t>(targets[i])]);
      if (complex_mode) {
        r[static_cast<Eigen::Index>(2 * i)] = v.re;
        r[static_cast<Eigen::Index>(2 * i + 1)] = v.im;
      } else {
        r[static_cast<Eigen::Index>(i)] = v.re;
      }
    }
    return r;
  }
};

template <class T>
T levenberg_marquardt(const Model& model, Vec<T>& x, int max_iterations, const T& target, const T& step) {
  using std::abs;
  Vec<T> r = model.residuals<T>(x);
  T cost = r.squaredNorm();
  const Eigen::Index p = x.size();
  if (p == 0) return cost;
  T mu(1e-3);
  for (int it = 0; it < max_iterations && cost > target; ++it) {
    Mat<T> J(r.size(), p);
    for (Eigen::Index i = 0; i < p; ++i) {
      Vec<T> xs = x;
      const T ax = abs(x[i]);
      const T h = step * (ax > T(1) ? ax : T(1));
      xs[i] += h;
      J.col(i) = (model.residuals<T>(xs) - r) / h;
    }
    const Mat<T> A = J.transpose() * J;
    const Vec<T> g = J.transpose() * r;
    bool improved = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Mat<T> damped = A;
      for (Eigen::Index i = 0; i < p; ++i) damped(i, i) += mu * (A(i, i) + T(1));
      const Vec<T> xn = x - damped.ldlt().solve(g);
      const Vec<T> rn = model.residuals<T>(xn);
      const T cn = rn.squaredNorm();
      if (cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        mu = mu / 3 > T(1e-12) ? T(mu / 3) : T(1e-12);
        improved = true;
        break;
      }
      mu *= 4;
    }
    if (!improved) break;
  }
  return cost;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};

Vec<double> initial_point(const Model& model, Rng& rng) {
  const int k = model.k();
  Vec<double> x(model.params());
  if (model.params() == 0) return x;
  if (model.complex_mode) {
    for (int i = 0; i < k - 2; ++i) {
      x[2 * i] = rng.uniform();
      x[2 * i + 1] = rng.uniform() - 0.5;
    }
    return x;
  }
  std::vector<double> pts(static_cast<std::size_t>(k - 2));
  for (double& v : pts) v = rng.uniform();
  std::sort(pts.begin(), pts.end());
  std::vector<double> gaps;
  double prev = 0.0;
  for (double v : pts) {
    gaps.push_back(std::max(v - prev, 1e-3));
    prev = v;
  }
  gaps.push_back(std::max(1.0 - prev, 1e-3));
  for (int i = 1; i < k - 1; ++i) x[i - 1] = std::log(gaps[static_cast<std::size_t>(i)] / gaps[0]);
  return x;
}

double min_separation(const std::vector<Cx<double>>& lam) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) best = std::min(best, std::hypot(lam[i].re - lam[j].re, lam[i].im - lam[j].im));
  return best;
}

struct Job {
  int pattern = 0;
  Assignment assignment;
  bool brute = false;
  std::uint64_t seed = 0;
};

struct JobResult {
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> params;
};

Model make_model(const MultiplicityPattern& pattern, const Assignment& a, bool complex_mode) {
  Model model;
  model.mult = pattern.r;
  model.complex_mode = complex_mode;
  for (std::size_t m = 1; m < a.root_of_order.size(); ++m) {
    if (a.root_of_order[m] < 0) continue;
    model.orders.push_back(static_cast<int>(m));
    model.targets.push_back(a.root_of_order[m]);
  }
  return model;
}

JobResult run_job(const Model& model, const Job& job, const SearchConfig& config) {
  JobResult best;
  Rng rng{job.seed};
  const int starts = model.params() == 0 ? 1 : config.multistarts;
  for (int s = 0; s < starts; ++s) {
    Vec<double> x = initial_point(model, rng);
    const double cost = levenberg_marquardt<double>(model, x, config.max_iterations, 1e-30, 1e-7);
    if (model.complex_mode && min_separation(model.roots<double>(x)) < kSeparation) continue;
    if (cost < best.residual) {
      best.residual = cost;
      best.params.assign(x.data(), x.data() + x.size());
    }
  }
  return best;
}

// orders from `lo` down to 1 (or `stop`) choose a root; `pick` lists the
// admissible roots for order m given the choice at m + 1.
void enumerate(int n, int stop, const std::function<std::vector<int>(int, int)>& pick, std::size_t cap,
               std::vector<Assignment>& out, bool& exhausted) {
  Assignment a;
  a.root_of_order.assign(static_cast<std::size_t>(n), -1);
  std::function<void(int)> walk = [&](int m) {
    if (exhausted) return;
    if (m < stop) {
      if (cap != 0 && out.size() >= cap) {
        exhausted = true;
        return;
      }
      out.push_back(a);
      return;
    }
    const int above = m + 1 < n ? a.root_of_order[static_cast<std::size_t>(m + 1)] : -1;
    for (int j : pick(m, above)) {
      a.root_of_order[static_cast<std::size_t>(m)] = j;
      walk(m - 1);
    }
    a.root_of_order[static_cast<std::size_t>(m)] = -1;
  };
  if (n >= 2) walk(n - 1);
}

std::vector<Assignment> constrained_assignments(const MultiplicityPattern& pattern, bool complex_mode, std::size_t cap,
                                                bool& exhausted) {
  const int n = pattern.n(), k = pattern.k(), r = pattern.max();
  std::vector<Assignment> out;
  auto pick = [&](int, int above) {
    std::vector<int> js;
    if (complex_mode) {
      for (int j = 0; j < k; ++j) js.push_back(j);
    } else {
      // roots of f^(m), m >= r, are simple and strictly inside the hull
      for (int j = 1; j + 1 < k; ++j)
        if (j != above) js.push_back(j);
    }
    return js;
  };
  enumerate(n, std::max(r, 1), pick, cap, out, exhausted);
  return out;
}

std::vector<Assignment> all_assignments(const MultiplicityPattern& pattern, std::size_t cap, bool& exhausted) {
  const int n = pattern.n(), k = pattern.k();
  std::vector<Assignment> out;
  auto pick = [&](int, int) {
    std::vector<int> js(static_cast<std::size_t>(k));
    std::iota(js.begin(), js.end(), 0);
    return js;
  };
  enumerate(n, 1, pick, cap, out, exhausted);
  return out;
}

int thread_count(const SearchConfig& config, std::size_t jobs) {
  int t = config.threads;
  if (t <= 0) {
    if (const char* env = std::getenv("CASASKIT_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(t), jobs)));
}

template <class T>
std::pair<double, std::string> polish(const Model& model, const std::vector<double>& start, const T& step) {
  Vec<T> x(static_cast<Eigen::Index>(start.size()));
  for (std::size_t i = 0; i < start.size(); ++i) x[static_cast<Eigen::Index>(i)] = T(start[i]);
  const T cost = levenberg_marquardt<T>(model, x, 60, T(0), step);
  return {cost.template convert_to<double>(), cost.str(12, std::ios_base::scientific)};
}

}  // namespace

double assignment_residual(const MultiplicityPattern& pattern, const std::vector<double>& roots,
                           const Assignment& assignment, bool enforce_constraints) {
  const int n = pattern.n(), k = pattern.k(), r = pattern.max();
  if (static_cast<int>(roots.size()) != k) throw DomainError("one root value per pattern entry is required");
  if (static_cast<int>(assignment.root_of_order.size()) != n) throw DomainError("assignment must cover orders 0..n-1");
  for (int m = 1; m < n; ++m) {
    const int j = assignment.root_of_order[static_cast<std::size_t>(m)];
    if (j < -1 || j >= k) throw DomainError("assignment refers to a missing root");
  }
  if (enforce_constraints) {
    for (int i = 1; i < k; ++i)
      if (!(roots[static_cast<std::size_t>(i)] > roots[static_cast<std::size_t>(i - 1)]))
        throw DomainError("roots must increase strictly");
    for (int m = std::max(r, 1); m < n; ++m) {
      const int j = assignment.root_of_order[static_cast<std::size_t>(m)];
      if (j < 1 || j > k - 2)
        throw DomainError("order " + std::to_string(m) + " >= r must be assigned to an interior root");
      if (m + 1 < n && j == assignment.root_of_order[static_cast<std::size_t>(m + 1)])
        throw DomainError("consecutive orders " + std::to_string(m) + ", " + std::to_string(m + 1) +
                          " cannot share a root");
    }
  }
  std::vector<Cx<double>> lam;
  for (double x : roots) lam.push_back({x, 0.0});
  const auto c = expand(lam, pattern.r);
  double sum = 0.0;
  for (int m = 1; m < n; ++m) {
    const int j = assignment.root_of_order[static_cast<std::size_t>(m)];
    if (j < 0) continue;
    const Cx<double> v = derivative_value(c, m, lam[static_cast<std::size_t>(j)]);
    sum += v.re * v.re + v.im * v.im;
  }
  return sum;
}

SearchReport search(const SearchConfig& config) {
  const int n = config.degree;
  if (n < 1) throw DomainError("search degree must be >= 1");
  if (n > 12) throw DomainError("search degree is capped at 12");
  if (config.complex_roots && n > 5) throw DomainError("complex search is capped at degree 5");
  if (!(config.theta > 0)) throw DomainError("theta must be positive");
  if (config.multistarts < 1 || config.max_iterations < 1) throw DomainError("optimizer settings must be positive");
  if (config.precision_digits > 100) throw DomainError("high-precision check supports at most 100 digits");

  SearchReport report;
  report.config = config;
  const std::vector<MultiplicityPattern> patterns = compositions(n);
  const FilterSet filters = config.complex_roots ? FilterSet::none() : config.filters;
  const bool brute = config.brute_force_check && !config.complex_roots && n <= 5;

  std::vector<Job> jobs;
  std::vector<std::pair<std::size_t, std::size_t>> span(patterns.size());  // job range per pattern
  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    const MultiplicityPattern& pat = patterns[pi];
    PatternRecord rec;
    rec.pattern = pat;
    const FilterVerdict fv = pattern_admissible(pat, filters);
    std::vector<Assignment> assignments;
    bool exhausted = false;
    bool brute_jobs = false;
    if (!fv.admissible) {
      rec.pruned_by = fv.filter;
      rec.reason = fv.reason;
      if (brute && pat.k() >= 2) {
        assignments = all_assignments(pat, config.assignment_budget, exhausted);
        brute_jobs = true;
      }
    } else {
      assignments = constrained_assignments(pat, config.complex_roots, config.assignment_budget, exhausted);
      for (const auto& s : fv.skipped) rec.reason += (rec.reason.empty() ? "" : "; ") + s;
    }
    rec.budget_exhausted = exhausted;
    rec.assignments = assignments.size();
    span[pi].first = jobs.size();
    for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
      Job job;
      job.pattern = static_cast<int>(pi);
      job.assignment = std::move(assignments[ai]);
      job.brute = brute_jobs;
      job.seed = splitmix64(config.seed ^ splitmix64((static_cast<std::uint64_t>(pi) << 32) ^
                                                     (static_cast<std::uint64_t>(ai) << 1) ^ (brute_jobs ? 1u : 0u)));
      jobs.push_back(std::move(job));
    }
    span[pi].second = jobs.size();
    report.patterns.push_back(std::move(rec));
  }

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Model model = make_model(patterns[static_cast<std::size_t>(jobs[i].pattern)], jobs[i].assignment,
                                     config.complex_roots);
      results[i] = run_job(model, jobs[i], config);
    }
  };
  const int threads = thread_count(config, jobs.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const double hp_claim = std::pow(10.0, -(config.precision_digits <= 50 ? 50 : 100));
  auto verify = [&](const Model& model, const std::vector<double>& params) {
    return config.precision_digits <= 50 ? polish<mp::cpp_bin_float_50>(model, params, mp::cpp_bin_float_50("1e-25"))
                                         : polish<mp::cpp_bin_float_100>(model, params, mp::cpp_bin_float_100("1e-50"));
  };

  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    PatternRecord& rec = report.patterns[pi];
    std::optional<std::size_t> best;
    for (std::size_t i = span[pi].first; i < span[pi].second; ++i)
      if (!best || results[i].residual < results[*best].residual) best = i;
    if (rec.budget_exhausted) report.incomplete = true;

    if (rec.pruned_by) {
      if (best) {
        rec.brute_force_min = results[*best].residual;
        rec.brute_force_agrees = results[*best].residual >= config.theta;
      }
      if (!best || results[*best].residual >= config.theta) continue;
    } else if (span[pi].first == span[pi].second) {
      rec.pruned_by = "assignment constraints";
      rec.reason = "no interior root can serve the orders m >= r";
      continue;
    }
    if (!best || !std::isfinite(results[*best].residual)) {
      rec.reason += (rec.reason.empty() ? "" : "; ") + std::string("every minimizer merged two roots");
      continue;
    }

    const Job& job = jobs[*best];
    const Model model = make_model(patterns[pi], job.assignment, config.complex_roots);
    Vec<double> x(static_cast<Eigen::Index>(results[*best].params.size()));
    for (std::size_t i = 0; i < results[*best].params.size(); ++i)
      x[static_cast<Eigen::Index>(i)] = results[*best].params[i];
    const auto lam = model.roots<double>(x);
    std::vector<double> re, im;
    for (const auto& z : lam) {
      re.push_back(z.re);
      im.push_back(z.im);
    }
    if (!rec.pruned_by) {
      rec.best_assignment = job.assignment;
      rec.best_residual = results[*best].residual;
      rec.minimizer = re;
      if (config.complex_roots) rec.minimizer_imag = im;
    }
    if (results[*best].residual >= config.theta) continue;

    const auto [hp, hp_text] = verify(model, results[*best].params);
    if (!(hp < config.theta)) {
      rec.reason += (rec.reason.empty() ? "" : "; ") + ("high-precision residual " + hp_text + " is not below theta");
      continue;
    }
    if (!config.complex_roots) {
      try {
        const FilterVerdict cv = prune_inequalities(candidate_stats(real_root_profile(re, patterns[pi].r, {1e-6})), filters);
        if (!cv.admissible) {
          rec.reason += (rec.reason.empty() ? "" : "; ") + ("candidate pruned by " + cv.filter + ": " + cv.reason);
          continue;
        }
      } catch (const DomainError&) {
      }
    }
    Candidate cand;
    cand.pattern = patterns[pi];
    cand.assignment = job.assignment;
    cand.residual = results[*best].residual;
    cand.high_precision_residual = hp_text;
    cand.verified = hp < hp_claim;
    cand.roots = re;
    if (config.complex_roots) cand.roots_imag = im;
    report.candidates.push_back(std::move(cand));
  }

  if (n == 1) report.note = "degree 1: only the trivial class exists";
  if (report.candidates.empty()) {
    report.verdict = "no candidate below theta";
  } else {
    report.verdict = "candidates listed";
    const bool any = std::any_of(report.candidates.begin(), report.candidates.end(),
                                 [](const Candidate& c) { return c.verified; });
    report.note = any ? "a high-precision residual stays at working-precision zero; inspect by hand"
                      : "no candidate reaches high-precision zero; none is claimed as a counterexample";
  }
  return report;
}

// --- constructed instances -------------------------------------------------

std::optional<Polynomial> shared_root_instance(const SharedRootFamily& spec) {
  if (spec.r1 < 1 || spec.r2 < 1 || spec.rho < 1) throw DomainError("multiplicities must be positive");
  if (sgn(spec.w) == 0) throw DomainError("w must be nonzero");
  int n = spec.r1 + spec.r2 + 2 * spec.rho;
  Rational lin = spec.r2 * spec.w, quad = spec.r2 * spec.w * spec.w;
  std::vector<Rational> taken{Rational(0), spec.w};
  for (const auto& [c, mult] : spec.extra) {
    if (mult < 1) throw DomainError("multiplicities must be positive");
    if (std::find(taken.begin(), taken.end(), c) != taken.end()) return std::nullopt;
    taken.push_back(c);
    n += mult;
    lin += mult * c;
    quad += mult * c * c;
  }
  const Rational S = -lin / spec.rho;
  const Rational Q = (Rational(n) * (n - 1) * spec.w * spec.w - quad) / spec.rho;
  const Rational P = (S * S - Q) / 2;
  if (sgn(Rational(2 * Q - S * S)) <= 0) return std::nullopt;
  const Polynomial q({GaussianRational(P), GaussianRational(Rational(-S)), GaussianRational(1)});
  for (const auto& t : taken)
    if (q.evaluate(GaussianRational(t)).is_zero()) return std::nullopt;
  Polynomial f = Polynomial::monomial(GaussianRational(1), static_cast<unsigned>(spec.r1));
  f *= Polynomial::linear(GaussianRational(spec.w)).pow(static_cast<unsigned>(spec.r2));
  f *= q.pow(static_cast<unsigned>(spec.rho));
  for (const auto& [c, mult] : spec.extra) f *= Polynomial::linear(GaussianRational(c)).pow(static_cast<unsigned>(mult));
  return f;
}

}  // namespace casaskit
