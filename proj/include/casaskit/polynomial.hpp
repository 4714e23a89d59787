#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "casaskit/rational.hpp"

namespace casaskit {

/// Dense univariate polynomial over Q(i).
///
/// Storage is ascending (coefficient(k) multiplies z^k). The zero polynomial is
/// representable (degree -1) because it appears as a remainder; every operation
/// that needs a root structure rejects it.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GaussianRational> ascending);

  /// a_0 z^n + a_1 z^{n-1} + ... + a_n, i.e. leading coefficient first.
  static Polynomial from_descending(const std::vector<GaussianRational>& descending);
  static Polynomial constant(GaussianRational c);
  static Polynomial monomial(GaussianRational c, unsigned power);
  /// z - root
  static Polynomial linear(const GaussianRational& root);
  /// prod (z - root_j)^{mult_j}
  static Polynomial from_roots(const std::vector<GaussianRational>& roots, const std::vector<int>& multiplicities);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monic() const;
  bool has_real_coefficients() const;

  /// Coefficient of z^k (zero beyond the degree).
  GaussianRational coefficient(int k) const;
  /// a_i in leading-first numbering: a(0) is the leading coefficient.
  GaussianRational a(int i) const { return coefficient(degree() - i); }
  const GaussianRational& leading() const;
  const std::vector<GaussianRational>& ascending() const { return coeffs_; }
  std::vector<GaussianRational> descending() const;

  Polynomial monic() const;
  Polynomial derivative(int order = 1) const;
  Polynomial pow(unsigned exponent) const;
  /// p(scale * z + shift)
  Polynomial compose_affine(const GaussianRational& scale, const GaussianRational& shift) const;

  GaussianRational evaluate(const GaussianRational& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
  std::vector<std::complex<double>> to_complex() const;

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
  friend Polynomial operator*(const GaussianRational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

/// Exact m-th derivative; throws DomainError when m exceeds the degree.
Polynomial derive(const Polynomial& p, int m);

/// Monic greatest common divisor (zero only when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun square-free decomposition: monic, pairwise coprime, square-free factors
/// paired with their multiplicity, ordered by increasing multiplicity.
std::vector<std::pair<Polynomial, int>> squarefree_decompose(const Polynomial& p);

/// Product of the distinct monic linear factors (the square-free part).
Polynomial squarefree_part(const Polynomial& p);

}  // namespace casaskit
