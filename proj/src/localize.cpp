#include "casaskit/localize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "casaskit/errors.hpp"
#include "casaskit/polycore.hpp"
#include "casaskit/roots.hpp"
#include "casaskit/text_format.hpp"

namespace casaskit {

namespace {

using cplx = std::complex<double>;

double to_double(const Rational& q) { return q.get_d(); }

int nearest_index(const std::vector<double>& values, double x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (std::abs(values[i] - x) < std::abs(values[best] - x)) best = i;
  return best;
}

double distance_to_set(const std::vector<double>& values, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, std::abs(v - x));
  return best;
}

BoundReport make_bound(std::string id, std::optional<double> lower, double value, std::optional<double> upper,
                       const Tolerance& tol) {
  BoundReport b;
  b.id = std::move(id);
  b.lower = lower;
  b.value = value;
  b.upper = upper;
  double scale = std::max(1.0, std::abs(value));
  if (lower) scale = std::max(scale, std::abs(*lower));
  if (upper) scale = std::max(scale, std::abs(*upper));
  b.slack = std::numeric_limits<double>::infinity();
  if (lower) b.slack = std::min(b.slack, value - *lower);
  if (upper) b.slack = std::min(b.slack, *upper - value);
  b.holds = std::isfinite(value) && b.slack >= -tol.relative * scale;
  return b;
}

BoundReport gated(std::string id, std::string note) {
  BoundReport b;
  b.id = std::move(id);
  b.hypothesis_ok = false;
  b.note = std::move(note);
  b.value = std::numeric_limits<double>::quiet_NaN();
  return b;
}

void check_order(const RealRootProfile& f, int m, int hi) {
  if (m < 0 || m > hi) throw DomainError("order m = " + std::to_string(m) + " outside 0.." + std::to_string(hi));
  (void)f;
}

// Largest and smallest distance between consecutive entries of a sorted list.
std::pair<double, double> consecutive_gaps(const std::vector<double>& sorted) {
  double big = 0.0, small = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    big = std::max(big, sorted[i] - sorted[i - 1]);
    small = std::min(small, sorted[i] - sorted[i - 1]);
  }
  return {big, small};
}

std::vector<double> expanded_roots(const RealRootProfile& f) {
  std::vector<double> out;
  for (int j = 0; j < f.k(); ++j) out.insert(out.end(), static_cast<std::size_t>(f.multiplicities[j]), f.roots[j]);
  return out;
}

void fill_derivative_roots(RealRootProfile& f) {
  f.derivative_roots.clear();
  f.derivative_roots.push_back(expanded_roots(f));
  for (int m = 1; m < f.n; ++m) f.derivative_roots.push_back(next_derivative_roots(f.derivative_roots.back()));
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "numeric"; }

bool BoundReport::attains_equality(double tol) const {
  const double scale = std::max(1.0, std::abs(value));
  return (lower && std::abs(value - *lower) <= tol * scale) || (upper && std::abs(*upper - value) <= tol * scale);
}

int RealRootProfile::r() const { return *std::max_element(multiplicities.begin(), multiplicities.end()); }
int RealRootProfile::r0() const { return *std::min_element(multiplicities.begin(), multiplicities.end()); }

std::vector<double> next_derivative_roots(const std::vector<double>& roots) {
  std::vector<double> distinct;
  std::vector<int> mult;
  for (double x : roots) {
    if (!distinct.empty() && distinct.back() == x)
      ++mult.back();
    else {
      distinct.push_back(x);
      mult.push_back(1);
    }
  }
  // f'/f = sum_i mu_i / (x - d_i) runs from +inf to -inf on each open gap.
  auto log_derivative = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < distinct.size(); ++i) s += mult[i] / (x - distinct[i]);
    return s;
  };
  std::vector<double> out;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(mult[i] - 1), distinct[i]);
    if (i + 1 == distinct.size()) break;
    double lo = distinct[i], hi = distinct[i + 1];
    for (int it = 0; it < 200; ++it) {
      double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      if (log_derivative(mid) > 0)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back(lo + (hi - lo) / 2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RealRootProfile real_root_profile(const Polynomial& p) {
  const int n = p.degree();
  if (n < 2) throw DomainError("root profile needs degree >= 2");
  if (!is_real_rooted(p)) throw DomainError("polynomial has non-real roots");
  RealRootProfile f;
  f.n = n;
  f.exact_structure = true;
  const RootMultiset rm = root_multiset(p);
  for (const auto& e : rm.entries) {
    f.roots.push_back(e.value().real());
    f.multiplicities.push_back(e.multiplicity);
  }
  const CentroidData cd = centroid_data(p);
  f.centroid = to_double(cd.centroid.re());
  f.gap = std::sqrt(std::max(0.0, to_double(cd.gap_squared.re())));
  f.penultimate = f.centroid + f.gap;
  if (p.evaluate(cd.centroid).is_zero()) f.centroid_root = nearest_index(f.roots, f.centroid);

  const Polynomial sqf = squarefree_part(p);
  const Polynomial quad = derive(p, n - 2);
  const Polynomial shared_quad = gcd(sqf, quad);
  if (shared_quad.degree() >= 1) {
    const RootMultiset srm = root_multiset(shared_quad);
    f.penultimate = srm.entries.front().value().real();
    f.penultimate_root = nearest_index(f.roots, f.penultimate);
  }

  for (int m = 0; m < n; ++m) {
    const Polynomial dm = derive(p, m);
    std::vector<int> idx;
    if (m == 0) {
      for (int j = 0; j < f.k(); ++j) idx.push_back(j);
    } else {
      const Polynomial g = gcd(sqf, dm);
      if (g.degree() >= 1)
        for (const auto& e : root_multiset(g).entries) idx.push_back(nearest_index(f.roots, e.value().real()));
      std::sort(idx.begin(), idx.end());
    }
    f.shared.push_back(idx);
    f.centroid_in_derivative.push_back(dm.evaluate(cd.centroid).is_zero());
  }
  fill_derivative_roots(f);
  return f;
}

RealRootProfile real_root_profile(const std::vector<double>& roots, const std::vector<int>& multiplicities,
                                  const Tolerance& tol) {
  if (roots.size() != multiplicities.size() || roots.empty()) throw DomainError("roots and multiplicities differ in length");
  RealRootProfile f;
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return roots[a] < roots[b]; });
  for (std::size_t i : order) {
    if (multiplicities[i] < 1) throw DomainError("multiplicities must be positive");
    if (!f.roots.empty() && !(roots[i] > f.roots.back())) throw DomainError("roots must be distinct");
    f.roots.push_back(roots[i]);
    f.multiplicities.push_back(multiplicities[i]);
    f.n += multiplicities[i];
  }
  if (f.n < 2) throw DomainError("root profile needs degree >= 2");
  const int n = f.n;
  double s1 = 0.0;
  for (int j = 0; j < f.k(); ++j) s1 += f.multiplicities[j] * f.roots[j];
  f.centroid = s1 / n;
  double s2 = 0.0;
  for (int j = 0; j < f.k(); ++j) s2 += f.multiplicities[j] * (f.roots[j] - f.centroid) * (f.roots[j] - f.centroid);
  f.gap = std::sqrt(s2 / (static_cast<double>(n) * (n - 1)));
  f.penultimate = f.centroid + f.gap;
  fill_derivative_roots(f);

  double scale = 1.0;
  for (double x : f.roots) scale = std::max(scale, std::abs(x));
  const double eps = tol.relative * scale;
  for (int j = 0; j < f.k(); ++j)
    if (std::abs(f.roots[j] - f.centroid) <= eps) f.centroid_root = j;
  for (double x : {f.centroid + f.gap, f.centroid - f.gap}) {
    int j = nearest_index(f.roots, x);
    if (std::abs(f.roots[j] - x) <= eps && !f.penultimate_root) {
      f.penultimate_root = j;
      f.penultimate = f.roots[j];
    }
  }
  for (int m = 0; m < n; ++m) {
    std::vector<int> idx;
    for (int j = 0; j < f.k(); ++j)
      if (m == 0 || distance_to_set(f.derivative_roots[m], f.roots[j]) <= eps) idx.push_back(j);
    f.shared.push_back(idx);
    f.centroid_in_derivative.push_back(distance_to_set(f.derivative_roots[m], f.centroid) <= eps);
  }
  return f;
}

// --- identities ------------------------------------------------------------

std::array<IdentityReport, 3> sz_nagy_residuals(const Polynomial& p, const GaussianRational& z, int m, Backend backend,
                                                const Tolerance& tol) {
  const int n = p.degree();
  if (n < 2) throw DomainError("identities need degree >= 2");
  if (m < 0 || m > n - 2) throw DomainError("order m must lie in 0..n-2");
  const Polynomial f = p.monic();
  const Polynomial fm = derive(f, m);
  const int N = n - m;
  const CentroidData cd = centroid_data(f);
  const InputEcho echo{{"polynomial", format_polynomial(p)}, {"z", to_string(z)}, {"m", std::to_string(m)}};

  std::array<IdentityReport, 3> out;
  const char* ids[3] = {"eq15", "eq16", "eq17"};
  for (int i = 0; i < 3; ++i) {
    out[i].id = ids[i];
    out[i].backend = backend;
    out[i].inputs = echo;
  }

  if (backend == Backend::exact) {
    const PowerSums a = power_sums(f, 2);
    const PowerSums b = power_sums(fm, 2);
    const GaussianRational c = cd.centroid;
    const GaussianRational g2 = cd.gap_squared;
    auto moment = [&](const PowerSums& s, int count) {
      const GaussianRational k(count);
      return (s[2] - GaussianRational(2) * z * s[1] + z * z * k - k * (c - z) * (c - z)) /
             (k * GaussianRational(count - 1));
    };
    auto pair_sum = [&](const PowerSums& s, int count) {
      const GaussianRational k(count);
      return (k * s[2] - s[1] * s[1]) / (k * k * GaussianRational(count - 1));
    };
    out[0].exact_residuals = {(c - z) - (a[1] - GaussianRational(n) * z) / GaussianRational(n),
                              (c - z) - (b[1] - GaussianRational(N) * z) / GaussianRational(N)};
    out[1].exact_residuals = {g2 - moment(a, n), g2 - moment(b, N)};
    out[2].exact_residuals = {g2 - pair_sum(a, n), g2 - pair_sum(b, N)};
    for (auto& rep : out) {
      rep.residual = 0.0;
      for (const auto& r : rep.exact_residuals) rep.residual = std::max(rep.residual, std::abs(r.to_complex()));
      rep.pass = std::all_of(rep.exact_residuals.begin(), rep.exact_residuals.end(),
                             [](const GaussianRational& r) { return r.is_zero(); });
    }
    return out;
  }

  const RootMultiset rm = root_multiset(f);
  const std::vector<cplx> xi = root_multiset(fm).expanded();
  const cplx zz = z.to_complex(), c = cd.centroid.to_complex(), g2 = cd.gap_squared.to_complex();
  cplx s1 = 0, s2 = 0, pairs = 0;
  double scale = 1.0;
  for (const auto& e : rm.entries) {
    s1 += double(e.multiplicity) * (e.value() - zz);
    s2 += double(e.multiplicity) * (e.value() - zz) * (e.value() - zz);
    scale += e.multiplicity * std::norm(e.value() - zz);
    for (const auto& o : rm.entries)
      if (&o < &e) pairs += double(e.multiplicity * o.multiplicity) * (e.value() - o.value()) * (e.value() - o.value());
  }
  cplx t1 = 0, t2 = 0, tpairs = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    t1 += xi[i] - zz;
    t2 += (xi[i] - zz) * (xi[i] - zz);
    for (std::size_t j = 0; j < i; ++j) tpairs += (xi[i] - xi[j]) * (xi[i] - xi[j]);
  }
  const double dn = n, dN = N;
  const double r15 = std::max(std::abs((c - zz) - s1 / dn), std::abs((c - zz) - t1 / dN));
  const double r16 = std::max(std::abs(g2 - (s2 - dn * (c - zz) * (c - zz)) / (dn * (dn - 1))),
                              std::abs(g2 - (t2 - dN * (c - zz) * (c - zz)) / (dN * (dN - 1))));
  const double r17 = std::max(std::abs(g2 - pairs / (dn * dn * (dn - 1))), std::abs(g2 - tpairs / (dN * dN * (dN - 1))));
  const double residuals[3] = {r15, r16, r17};
  for (int i = 0; i < 3; ++i) {
    out[i].residual = residuals[i];
    out[i].pass = residuals[i] <= tol.relative * scale;
  }
  return out;
}

namespace {

int multiplicity_of(const Polynomial& f, const GaussianRational& w) {
  int r = 0;
  Polynomial q = f;
  while (q.degree() >= 1 && q.evaluate(w).is_zero()) {
    q = q.divmod(Polynomial::linear(w)).first;
    ++r;
  }
  return r;
}

}  // namespace

IdentityReport lemma2_residual(const Polynomial& p, int m, const std::optional<GaussianRational>& shared,
                               Backend backend, const Tolerance& tol) {
  const int n = p.degree();
  if (n < 3) throw DomainError("the mixed identity needs degree >= 3");
  if (m < 1 || m > n - 2) throw DomainError("order m must lie in 1..n-2");
  const Polynomial f = p.monic();
  const Polynomial fm = derive(f, m);
  const CentroidData cd = centroid_data(f);
  const GaussianRational c = cd.centroid;

  IdentityReport rep;
  rep.id = "eq21";
  rep.backend = backend;
  rep.inputs = {{"polynomial", format_polynomial(p)}, {"m", std::to_string(m)}};
  auto gate = [&](std::string why) {
    rep.hypothesis_ok = false;
    rep.note = std::move(why);
    rep.residual = std::numeric_limits<double>::quiet_NaN();
    return rep;
  };
  if (!f.evaluate(c).is_zero()) return gate("centroid is not a root of f");

  // pick z_m: exact when possible
  std::optional<GaussianRational> w_exact;
  cplx w_value;
  if (shared) {
    if (!f.evaluate(*shared).is_zero() || !fm.evaluate(*shared).is_zero())
      return gate("supplied point is not a common root of f and f^(m)");
    if (*shared == c) return gate("shared root coincides with the centroid");
    w_exact = *shared;
    w_value = shared->to_complex();
  } else {
    Polynomial g = gcd(f, fm);
    while (g.degree() >= 1 && g.evaluate(c).is_zero()) g = g.divmod(Polynomial::linear(c)).first;
    if (g.degree() < 1) return gate("f^(m) shares no root with f other than the centroid");
    const RootMultiset srm = root_multiset(g);
    const RootEntry* pick = &srm.entries.front();
    for (const auto& e : srm.entries)
      if (e.is_exact()) {
        pick = &e;
        break;
      }
    if (pick->is_exact()) w_exact = *pick->exact;
    w_value = pick->value();
  }
  rep.inputs.emplace_back("z_m", w_exact ? to_string(*w_exact) : std::to_string(w_value.real()));

  const double nn1 = double(n) * (n - 1);
  const int M = n - m;
  const int N1 = n - m - 1;

  if (backend == Backend::exact && !w_exact) {
    rep.backend = Backend::numeric;
    rep.note = "shared root is irrational; numeric backend used";
  }

  if (rep.backend == Backend::exact) {
    const GaussianRational w = *w_exact;
    const int r1 = multiplicity_of(f, c);
    const int rk = multiplicity_of(f, w);
    rep.inputs.emplace_back("r_1", std::to_string(r1));
    rep.inputs.emplace_back("r_km", std::to_string(rk));
    const Polynomial q = fm.monic().divmod(Polynomial::linear(w)).first;
    const GaussianRational e1 = N1 >= 1 ? -q.a(1) : GaussianRational();
    const GaussianRational e2 = N1 >= 2 ? q.a(2) : GaussianRational();
    const GaussianRational two(2);
    const GaussianRational A = GaussianRational(N1) * w * w - two * w * e1 + (e1 * e1 - two * e2);
    const GaussianRational B = GaussianRational(N1) * (e1 * e1 - two * e2) - e1 * e1;
    const PowerSums ps = power_sums(f, 2);
    GaussianRational S[3];
    for (int t = 0; t < 3; ++t)
      S[t] = ps[static_cast<std::size_t>(t)] - GaussianRational(r1) * pow(c, static_cast<unsigned>(t)) -
             GaussianRational(rk) * pow(w, static_cast<unsigned>(t));
    const GaussianRational mixed = GaussianRational(N1 * (N1 - 1) / 2) * S[2] -
                                   GaussianRational(N1 - 1) * e1 * S[1] + e2 * S[0];
    const GaussianRational NN1(n * (n - 1));
    const GaussianRational MM(M * M);
    const GaussianRational lhs = (GaussianRational(M - 2) / MM + GaussianRational(rk + r1 - n) / NN1) * A +
                                 GaussianRational(M - 2) / MM * B;
    const GaussianRational rhs = GaussianRational(M * M * rk - (n - r1) * (M + 2)) / NN1 * (w - c) * (w - c) +
                                 two / NN1 * mixed;
    rep.exact_residuals = {lhs - rhs};
    rep.residual = std::abs(rep.exact_residuals[0].to_complex());
    rep.pass = rep.exact_residuals[0].is_zero();
    return rep;
  }

  // numeric: explicit sums over certified roots
  const RootMultiset rm = root_multiset(f);
  const cplx cc = c.to_complex();
  auto near = [](const RootEntry& e, cplx x) { return std::abs(e.value() - x) <= 1e-8 * (1 + std::abs(x)); };
  int r1 = 0, rk = 0;
  for (const auto& e : rm.entries) {
    if (near(e, cc)) r1 = e.multiplicity;
    if (near(e, w_value)) rk = e.multiplicity;
  }
  std::vector<cplx> xi = root_multiset(fm).expanded();
  auto drop = std::min_element(xi.begin(), xi.end(),
                               [&](cplx a, cplx b) { return std::abs(a - w_value) < std::abs(b - w_value); });
  xi.erase(drop);
  cplx A = 0, B = 0, mixed = 0;
  for (std::size_t s = 0; s < xi.size(); ++s) {
    A += (w_value - xi[s]) * (w_value - xi[s]);
    for (std::size_t t = 0; t < s; ++t) B += (xi[s] - xi[t]) * (xi[s] - xi[t]);
  }
  double scale = 1.0 + std::abs(A) + std::abs(B);
  for (const auto& e : rm.entries) {
    if (near(e, cc) || near(e, w_value)) continue;
    cplx g = 0;
    for (std::size_t s = 0; s < xi.size(); ++s)
      for (std::size_t t = 0; t < s; ++t) g += (e.value() - xi[s]) * (e.value() - xi[t]);
    mixed += double(e.multiplicity) * g;
    scale += std::abs(double(e.multiplicity) * g);
  }
  const double dM = M;
  const cplx lhs = ((dM - 2) / (dM * dM) + (rk + r1 - n) / nn1) * A + (dM - 2) / (dM * dM) * B;
  const cplx rhs = (dM * dM * rk - double(n - r1) * (dM + 2)) / nn1 * (w_value - cc) * (w_value - cc) + 2.0 / nn1 * mixed;
  rep.inputs.emplace_back("r_1", std::to_string(r1));
  rep.inputs.emplace_back("r_km", std::to_string(rk));
  rep.residual = std::abs(lhs - rhs);
  rep.pass = rep.residual <= tol.relative * scale;
  return rep;
}

// --- inequalities ----------------------------------------------------------

std::array<BoundReport, 3> gap_bounds(const RealRootProfile& f, int m, const Tolerance& tol) {
  const int n = f.n;
  if (n <= 2) throw DomainError("gap bounds need degree > 2");
  check_order(f, m, n - 2);
  if (m < 1) throw DomainError("gap bounds need 1 <= m <= n-2");
  const int k = f.k();
  if (k < 2) {
    const char* why = "needs at least two distinct roots";
    return {gated("eq26", why), gated("eq27", why), gated("eq28", why)};
  }
  const auto [Delta, delta] = consecutive_gaps(f.roots);
  const auto [Delta_m, delta_m] = consecutive_gaps(f.derivative_roots[m]);
  const double k2 = double(k) * k - 1;
  const double F = std::sqrt(k2 / (double(n - m + 1) * (n - 1)));
  const double F28 = std::sqrt(k2 / (3.0 * (n - 1)));
  std::array<BoundReport, 3> out{
      make_bound("eq26", std::nullopt, delta_m, Delta * f.r() * k / n * F, tol),
      make_bound("eq27", delta * f.r0() * k / n * F, Delta_m, std::nullopt, tol),
      make_bound("eq28", delta * f.r0() * k / (2.0 * n) * F28, f.gap, Delta * f.r() * k / (2.0 * n) * F28, tol)};
  for (auto& b : out) b.inputs = {{"m", std::to_string(m)}, {"k", std::to_string(k)}};
  return out;
}

BoundReport laguerre_interval(const RealRootProfile& f, int j, int m, const Tolerance& tol) {
  if (j < 0 || j >= f.k()) throw DomainError("root index out of range");
  const int rj = f.multiplicities[j];
  if (m < 0 || m > rj - 1) throw DomainError("order m must lie in 0..r_j-1");
  const int n = f.n;
  const double radius = std::sqrt(double(n - rj) * (n - m - 1) / (rj - m)) * f.gap;
  BoundReport b = make_bound(m == 0 ? "eq30" : "eq29", std::nullopt, std::abs(f.roots[j] - f.centroid), radius, tol);
  b.inputs = {{"j", std::to_string(j)}, {"m", std::to_string(m)}, {"root", std::to_string(f.roots[j])}};
  return b;
}

BoundReport derivative_root_interval(const RealRootProfile& f, int m, const Tolerance& tol) {
  check_order(f, m, f.n - 2);
  double far = 0.0;
  for (double x : f.derivative_roots[m]) far = std::max(far, std::abs(x - f.centroid));
  BoundReport b = make_bound("eq31", std::nullopt, far, (f.n - m - 1) * f.gap, tol);
  b.inputs = {{"m", std::to_string(m)}};
  return b;
}

BoundReport common_root_interval(const RealRootProfile& f, int s, const Tolerance& tol) {
  if (s < 0 || s >= f.k()) throw DomainError("root index out of range");
  if (!f.centroid_root) return gated("eq32", "centroid is not a root of f");
  if (f.k() < 2) return gated("eq32", "needs at least two distinct roots");
  if (s == *f.centroid_root) return gated("eq32", "index refers to the centroid root itself");
  const int n = f.n;
  const int r1 = f.multiplicities[*f.centroid_root];
  const int rs = f.multiplicities[s];
  const double radius = std::sqrt(std::max(0.0, (1.0 / rs - 1.0 / (n - r1)) * (double(n) * n - n))) * f.gap;
  BoundReport b = make_bound("eq32", std::nullopt, std::abs(f.roots[s] - f.centroid), radius, tol);
  if (radius == 0.0) b.note = "zero radius forces lambda_s onto the centroid";
  b.inputs = {{"s", std::to_string(s)}, {"r_1", std::to_string(r1)}, {"r_s", std::to_string(rs)}};
  return b;
}

BoundReport ca_mth_bound(const RealRootProfile& f, int m, const Tolerance& tol) {
  const int n = f.n;
  check_order(f, m, n - 2);
  if (f.k() < 2) return gated("eq33", "trivial polynomial");
  if (!f.centroid_root) return gated("eq33", "centroid is not a root of f");
  if (m < f.r()) return gated("eq33", "needs m >= r (largest multiplicity)");
  const int c1 = *f.centroid_root;
  const int r1 = f.multiplicities[c1];
  std::optional<BoundReport> best;
  for (int j : f.shared[m]) {
    if (j == c1) continue;
    const int rk = f.multiplicities[j];
    const double factor = double(n - r1 - rk) / (double(n - r1) * (n - r1)) *
                          (double(n) * n - r1 + double(n - r1) * (n - m) * (n - m - 2));
    const double dx = f.centroid - f.roots[j];
    BoundReport b = make_bound("eq33", std::nullopt, dx * dx, factor * f.gap * f.gap, tol);
    b.inputs = {{"m", std::to_string(m)}, {"x_m", std::to_string(f.roots[j])}, {"r_km", std::to_string(rk)}};
    if (!best || b.slack < best->slack) best = b;
  }
  if (!best) return gated("eq33", "f^(m) shares no root with f other than the centroid");
  return *best;
}

ExtremalStats extremal_stats(const RealRootProfile& f) {
  ExtremalStats s;
  for (int j = 0; j < f.k(); ++j) {
    if (f.centroid_root && j == *f.centroid_root) continue;
    const double dist = std::abs(f.roots[j] - f.centroid);
    s.d = s.d ? std::min(*s.d, dist) : dist;
    s.D = s.D ? std::max(*s.D, dist) : dist;
  }
  for (int m = 0; m < f.n; ++m) {
    const auto& xi = f.derivative_roots[m];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double x : xi) {
      lo = std::min(lo, std::abs(x - f.centroid));
      hi = std::max(hi, std::abs(x - f.centroid));
    }
    s.d_m.push_back(lo);
    s.D_m.push_back(hi);
    s.span_m.push_back(xi.back() - xi.front());
  }
  s.span = f.span();
  s.lambda_star = f.roots.back();
  s.lambda_low = f.roots.front();
  s.r_star = f.multiplicities.back();
  s.r_low = f.multiplicities.front();
  return s;
}

std::array<BoundReport, 2> lemma7_bounds(const RealRootProfile& f, const Tolerance& tol) {
  auto both = [](const std::string& why) {
    return std::array<BoundReport, 2>{gated("eq36", why), gated("eq37", why)};
  };
  if (f.k() < 3) return both("needs at least three distinct roots");
  if (!f.centroid_root) return both("centroid is not a root of f");
  if (!f.penultimate_root || *f.penultimate_root == *f.centroid_root)
    return both("no root of f^(n-2) is a root of f");
  const int i1 = *f.centroid_root, i2 = *f.penultimate_root;
  const int n = f.n;
  const int r1 = f.multiplicities[i1], r2 = f.multiplicities[i2];
  const ExtremalStats st = extremal_stats(f);
  const double D = *st.D;
  std::optional<int> s0;
  for (int j = 0; j < f.k(); ++j) {
    if (j == i1 || j == i2) continue;
    if (std::abs(std::abs(f.roots[j] - f.centroid) - D) <= tol.relative * std::max(1.0, D)) {
      s0 = j;
      break;
    }
  }
  if (!s0) return both("maximum distance is attained only at x_{n-2}");
  const int rs0 = f.multiplicities[*s0];
  const double base = double(n) * n - n - r2;
  const double g = f.gap;
  const double K = 5.0 + r2 / base;
  std::array<BoundReport, 2> out{
      make_bound("eq36", std::sqrt(base / (n - r1 - r2)) * g, D, std::sqrt(base / rs0) * g, tol),
      make_bound("eq37", 0.5 * std::sqrt(rs0 / (3.0 * (n - r1)) * K) * st.span, D,
                 std::sqrt(std::max(0.0, (n - r1 - rs0 * K / 4.0) / (n - r1))) * st.span, tol)};
  for (auto& b : out)
    b.inputs = {{"r_1", std::to_string(r1)}, {"r_2", std::to_string(r2)}, {"r_s0", std::to_string(rs0)}};
  return out;
}

BoundReport span_lower_bound(const RealRootProfile& f, const Tolerance& tol) {
  if (f.k() < 2) return gated("eq38", "trivial polynomial");
  if (!f.centroid_root) return gated("eq38", "centroid is not a root of f");
  if (!f.penultimate_root || *f.penultimate_root == *f.centroid_root)
    return gated("eq38", "no root of f^(n-2) is a root of f");
  const int n = f.n;
  const int r1 = f.multiplicities[*f.centroid_root], r2 = f.multiplicities[*f.penultimate_root];
  if (r1 + r2 >= n) return gated("eq38", "needs r_1 + r_2 < n");
  BoundReport b = make_bound("eq38", std::sqrt((double(n) * n - r1) / (n - r1 - r2)) * f.gap, f.span(), std::nullopt, tol);
  b.inputs = {{"r_1", std::to_string(r1)}, {"r_2", std::to_string(r2)}};
  return b;
}

std::array<BoundReport, 4> lemma9_bounds(const RealRootProfile& f, int m, const Tolerance& tol) {
  const int n = f.n;
  check_order(f, m, n - 2);
  if (m < f.r()) {
    const char* why = "needs m >= r (largest multiplicity)";
    return {gated("eq39", why), gated("eq40", why), gated("eq41", why), gated("eq42", why)};
  }
  const ExtremalStats st = extremal_stats(f);
  const double Dm = st.D_m[m];
  const double span_m = st.span_m[m];
  const double g = f.gap;
  const double N = n - m;
  const bool centroid_root = f.centroid_in_derivative[m];

  std::array<BoundReport, 4> out;
  out[0] = make_bound("eq39", std::sqrt(N - 1) * g, Dm, std::nullopt, tol);
  if (centroid_root) {
    out[1] = make_bound("eq40", std::sqrt(N) * g, Dm, std::nullopt, tol);
    if (m == n - 2) out[1].note = "x_{n-1} is a root of f^(n-2): forces triviality";
  } else {
    out[1] = gated("eq40", "x_{n-1} is not a root of f^(m)");
  }
  out[2] = make_bound("eq41", N / (N - 1) * Dm, span_m, 2 * Dm, tol);
  if (!centroid_root)
    out[3] = gated("eq42", "x_{n-1} is not a root of f^(m)");
  else if (m > n - 3)
    out[3] = gated("eq42", "needs m <= n-3");
  else
    out[3] = make_bound("eq42", std::sqrt((N * (N - 1) + 1) / ((N - 1) * (N - 2))) * Dm, span_m, 2 * Dm, tol);
  for (auto& b : out) b.inputs = {{"m", std::to_string(m)}};
  return out;
}

}  // namespace casaskit
