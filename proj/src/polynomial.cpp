#include "casaskit/polynomial.hpp"

#include <algorithm>

#include "casaskit/errors.hpp"

namespace casaskit {

Polynomial::Polynomial(std::vector<GaussianRational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::from_descending(const std::vector<GaussianRational>& descending) {
  return Polynomial(std::vector<GaussianRational>(descending.rbegin(), descending.rend()));
}

Polynomial Polynomial::constant(GaussianRational c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::monomial(GaussianRational c, unsigned power) {
  std::vector<GaussianRational> v(power + 1);
  v[power] = std::move(c);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const GaussianRational& root) { return Polynomial({-root, GaussianRational(1)}); }

Polynomial Polynomial::from_roots(const std::vector<GaussianRational>& roots, const std::vector<int>& multiplicities) {
  if (roots.size() != multiplicities.size()) throw DomainError("roots and multiplicities differ in length");
  Polynomial p = constant(1);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (multiplicities[j] < 0) throw DomainError("negative multiplicity");
    p *= linear(roots[j]).pow(static_cast<unsigned>(multiplicities[j]));
  }
  return p;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Polynomial::is_monic() const { return !is_zero() && leading() == GaussianRational(1); }

bool Polynomial::has_real_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GaussianRational& c) { return c.is_real(); });
}

GaussianRational Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

const GaussianRational& Polynomial::leading() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::vector<GaussianRational> Polynomial::descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

Polynomial Polynomial::monic() const {
  if (is_zero()) throw DomainError("zero polynomial cannot be made monic");
  if (is_monic()) return *this;
  GaussianRational inv = GaussianRational(1) / leading();
  return *this * inv;
}

Polynomial Polynomial::derivative(int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order == 0) return *this;
  if (order > degree()) return {};
  std::vector<GaussianRational> out(coeffs_.size() - static_cast<std::size_t>(order));
  for (std::size_t k = 0; k < out.size(); ++k) {
    // d^order/dz^order z^{k+order} = (k+order)!/k! z^k
    mpz_class falling = 1;
    for (std::size_t t = k + 1; t <= k + static_cast<std::size_t>(order); ++t) falling *= static_cast<unsigned long>(t);
    out[k] = coeffs_[k + static_cast<std::size_t>(order)] * GaussianRational(Rational(falling));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::compose_affine(const GaussianRational& scale, const GaussianRational& shift) const {
  // Horner in the polynomial ring: (((a_n) u + a_{n-1}) u + ...), u = scale z + shift.
  Polynomial u({shift, scale});
  Polynomial result;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    result *= u;
    result += constant(*it);
  }
  return result;
}

GaussianRational Polynomial::evaluate(const GaussianRational& z) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::vector<std::complex<double>> Polynomial::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_complex());
  return out;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(), *this};
  std::vector<GaussianRational> rem = coeffs_;
  std::vector<GaussianRational> quot(static_cast<std::size_t>(degree() - divisor.degree() + 1));
  const GaussianRational inv_lead = GaussianRational(1) / divisor.leading();
  const std::size_t dd = static_cast<std::size_t>(divisor.degree());
  for (std::size_t i = quot.size(); i-- > 0;) {
    GaussianRational q = rem[i + dd] * inv_lead;
    if (!q.is_zero()) {
      for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q * divisor.coeffs_[j];
    }
    quot[i] = std::move(q);
  }
  rem.resize(dd);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<GaussianRational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial derive(const Polynomial& p, int m) {
  if (m < 0) throw DomainError("negative derivative order");
  if (m > p.degree()) throw DomainError("derivative order " + std::to_string(m) + " exceeds degree " +
                                        std::to_string(p.degree()));
  return p.derivative(m);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).second;
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();
  }
  return x.is_zero() ? x : x.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_decompose(const Polynomial& p) {
  if (p.degree() < 1) throw DomainError("square-free decomposition needs degree >= 1");
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a0 = gcd(f, fp);
  Polynomial b = f.divmod(a0).first;
  Polynomial c = fp.divmod(a0).first;
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    Polynomial a = gcd(b, d);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
    if (a.degree() > 0) out.emplace_back(std::move(a), i);
  }
  return out;
}

Polynomial squarefree_part(const Polynomial& p) {
  Polynomial out = Polynomial::constant(1);
  for (const auto& [factor, mult] : squarefree_decompose(p)) out *= factor;
  return out;
}

}  // namespace casaskit
