#include "casaskit/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "casaskit/errors.hpp"

namespace casaskit {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// p(z), p'(z) and the running magnitude sum_k |a_k| |z|^k.
void horner_with_derivative(std::span<const cplx> a, cplx z, cplx& value, cplx& deriv, double& magnitude) {
  value = 0.0;
  deriv = 0.0;
  magnitude = 0.0;
  const double az = std::abs(z);
  for (std::size_t k = a.size(); k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + a[k];
    magnitude = magnitude * az + std::abs(a[k]);
  }
}

std::vector<cplx> initial_guesses(std::span<const cplx> a) {
  const std::size_t d = a.size() - 1;
  const cplx lead = a[d];
  const cplx center = -a[d - 1] / (static_cast<double>(d) * lead);
  // Fujiwara-type radius around the origin, shrunk toward the centroid spread.
  double radius = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double ratio = std::abs(a[k] / lead);
    radius = std::max(radius, std::pow(ratio, 1.0 / static_cast<double>(d - k)));
  }
  radius = std::max(2.0 * radius, 1e-3);
  std::vector<cplx> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    z[k] = center + radius * 0.5 * cplx(std::cos(angle), std::sin(angle));
  }
  return z;
}

bool aberth(std::span<const cplx> a, std::vector<cplx>& z, const RootOptions& options) {
  const std::size_t d = z.size();
  int polish = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      cplx value, deriv;
      double mag;
      horner_with_derivative(a, z[i], value, deriv, mag);
      if (value == 0.0) continue;
      cplx ratio = deriv == 0.0 ? cplx(1e-3 * (1.0 + std::abs(z[i]))) : value / deriv;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (max_step < options.tolerance) {
      // two extra sweeps settle the last bits
      if (++polish >= 2) return true;
    }
  }
  return false;
}

std::vector<cplx> companion_roots(std::span<const cplx> a) {
  const std::size_t d = a.size() - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> z;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) z.push_back(solver.eigenvalues()(i));
  return z;
}

// Weierstrass inclusion radii d |W_i| with Horner rounding accounted for.
std::vector<ComplexApprox> certify(std::span<const cplx> a, const std::vector<cplx>& z) {
  const std::size_t d = z.size();
  std::vector<ComplexApprox> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    cplx value, deriv;
    double mag;
    horner_with_derivative(a, z[i], value, deriv, mag);
    cplx denom = a[d];
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) denom *= (z[i] - z[j]);
    double numer = std::abs(value) + 4.0 * static_cast<double>(d + 1) * kEps * mag;
    double radius = std::abs(denom) > 0.0 ? static_cast<double>(d) * numer / std::abs(denom)
                                          : std::numeric_limits<double>::infinity();
    out[i] = {z[i], radius * (1.0 + 1e-6)};
  }
  return out;
}

bool discs_disjoint(const std::vector<ComplexApprox>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!std::isfinite(roots[i].error_radius)) return false;
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i].value - roots[j].value) <= roots[i].error_radius + roots[j].error_radius) return false;
  }
  return true;
}

bool less_complex(const cplx& x, const cplx& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

mpz_class round_to_integer(double x) {
  mpz_class out;
  mpz_set_d(out.get_mpz_t(), std::nearbyint(x));
  return out;
}

// Exact roots of a monic square-free factor found by rounding c * x to Z[i],
// where c clears all denominators: any root in Q(i) has c * root in Z[i].
std::vector<std::optional<GaussianRational>> exact_roots(const Polynomial& g, const std::vector<ComplexApprox>& approx) {
  std::vector<std::optional<GaussianRational>> out(approx.size());
  if (g.degree() == 1) {
    out[0] = -g.coefficient(0) / g.coefficient(1);
    return out;
  }
  mpz_class scale = 1;
  for (const auto& c : g.ascending()) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.im().get_den_mpz_t());
  }
  const double scale_d = scale.get_d();
  for (std::size_t i = 0; i < approx.size(); ++i) {
    cplx w = approx[i].value * scale_d;
    if (!(std::abs(w.real()) < 1e15 && std::abs(w.imag()) < 1e15)) continue;
    Rational re(round_to_integer(w.real()), scale);
    Rational im(round_to_integer(w.imag()), scale);
    re.canonicalize();
    im.canonicalize();
    GaussianRational candidate(re, im);
    // the rounded point must sit where the root was located, and a square-free
    // factor cannot yield the same exact root twice
    const double reach = std::max(4 * approx[i].error_radius, 1e-12 * (1 + std::abs(approx[i].value)));
    if (std::abs(candidate.to_complex() - approx[i].value) > reach) continue;
    bool taken = false;
    for (std::size_t j = 0; j < i; ++j) taken = taken || (out[j] && *out[j] == candidate);
    if (!taken && g.evaluate(candidate).is_zero()) out[i] = candidate;
  }
  if (g.degree() == 2 && (!out[0] || !out[1])) {
    // quadratic formula with an exact square root of the discriminant
    const GaussianRational& b = g.coefficient(1);
    const GaussianRational& c = g.coefficient(0);
    GaussianRational disc = b * b - GaussianRational(4) * c;
    GaussianRational s;
    if (exact_sqrt(disc, s)) {
      GaussianRational r1 = (-b + s) / GaussianRational(2);
      GaussianRational r2 = (-b - s) / GaussianRational(2);
      // match to the numeric approximations
      if (std::abs(r1.to_complex() - approx[0].value) <= std::abs(r2.to_complex() - approx[0].value)) {
        out[0] = r1;
        out[1] = r2;
      } else {
        out[0] = r2;
        out[1] = r1;
      }
    }
  }
  return out;
}

}  // namespace

double residual_bound(const Polynomial& p, const ComplexApprox& root) {
  double bound = 0.0;
  double r_pow = 1.0;
  double factorial = 1.0;
  for (int k = 1; k <= p.degree(); ++k) {
    r_pow *= root.error_radius;
    factorial *= k;
    bound += std::abs(p.derivative(k).evaluate(root.value)) * r_pow / factorial;
  }
  return bound;
}

std::vector<ComplexApprox> numeric_roots(std::span<const cplx> ascending, const RootOptions& options) {
  std::vector<cplx> a(ascending.begin(), ascending.end());
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  if (a.empty()) throw DomainError("zero polynomial has no root set");
  const std::size_t d = a.size() - 1;
  if (d == 0) return {};
  if (d == 1) {
    cplx z = -a[0] / a[1];
    return certify(a, {z});
  }
  std::vector<cplx> z = initial_guesses(a);
  bool converged = aberth(a, z, options);
  std::vector<ComplexApprox> cert = certify(a, z);
  if (converged && discs_disjoint(cert)) return cert;

  std::vector<cplx> fallback = companion_roots(a);
  aberth(a, fallback, options);
  std::vector<ComplexApprox> fallback_cert = certify(a, fallback);
  if (discs_disjoint(fallback_cert)) return fallback_cert;
  throw RootFindingError("root iteration did not converge to separated inclusion discs", converged ? cert : fallback_cert);
}

std::vector<ComplexApprox> numeric_roots(const Polynomial& squarefree, const RootOptions& options) {
  std::vector<cplx> a = squarefree.to_complex();
  return numeric_roots(std::span<const cplx>(a), options);
}

int RootMultiset::max_multiplicity() const {
  int r = 0;
  for (const auto& e : entries) r = std::max(r, e.multiplicity);
  return r;
}

int RootMultiset::min_multiplicity() const {
  int r = degree;
  for (const auto& e : entries) r = std::min(r, e.multiplicity);
  return r;
}

bool RootMultiset::all_exact() const {
  return std::all_of(entries.begin(), entries.end(), [](const RootEntry& e) { return e.is_exact(); });
}

std::vector<std::complex<double>> RootMultiset::expanded() const {
  std::vector<std::complex<double>> out;
  for (const auto& e : entries)
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.value());
  return out;
}

int count_distinct_real_roots(const Polynomial& p) {
  if (!p.has_real_coefficients()) throw DomainError("Sturm count needs real coefficients");
  if (p.degree() < 1) return 0;
  Polynomial g = squarefree_part(p);
  std::vector<Polynomial> seq{g, g.derivative()};
  while (seq.back().degree() > 0) {
    Polynomial r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](bool at_plus_infinity) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
      int sign = sgn(s.leading().re());
      if (!at_plus_infinity && (s.degree() % 2 == 1)) sign = -sign;
      if (sign == 0) continue;
      if (last != 0 && sign != last) ++count;
      last = sign;
    }
    return count;
  };
  return changes(false) - changes(true);
}

bool is_real_rooted(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  if (!p.has_real_coefficients()) return false;
  if (p.degree() < 1) return true;
  return count_distinct_real_roots(p) == squarefree_part(p).degree();
}

RootMultiset root_multiset(const Polynomial& p, const RootOptions& options) {
  if (p.is_zero() || p.degree() < 1) throw DomainError("root multiset needs degree >= 1");
  RootMultiset out;
  out.degree = p.degree();
  const bool real_rooted = is_real_rooted(p);
  for (const auto& [factor, mult] : squarefree_decompose(p)) {
    std::vector<ComplexApprox> approx = numeric_roots(factor, options);
    std::vector<std::optional<GaussianRational>> exact = exact_roots(factor, approx);
    for (std::size_t i = 0; i < approx.size(); ++i) {
      RootEntry e;
      e.multiplicity = mult;
      if (exact[i]) {
        e.exact = exact[i];
        e.approx = {exact[i]->to_complex(), 0.0};
      } else {
        e.approx = approx[i];
        if (real_rooted) e.approx.value.imag(0.0);
      }
      out.entries.push_back(std::move(e));
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const RootEntry& x, const RootEntry& y) { return less_complex(x.value(), y.value()); });
  return out;
}

DerivativeRoots derivative_roots(const Polynomial& p, int m, const RootOptions& options) {
  Polynomial q = derive(p, m);
  DerivativeRoots out;
  out.order = m;
  if (q.degree() < 1) return out;
  for (const auto& e : root_multiset(q, options).entries)
    for (int i = 0; i < e.multiplicity; ++i) out.roots.push_back(e.approx);
  return out;
}

}  // namespace casaskit
