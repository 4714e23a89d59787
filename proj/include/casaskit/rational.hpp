#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace casaskit {

// mpq_class keeps every arithmetic result in canonical form
// (positive denominator, coprime numerator and denominator).
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q" or a finite decimal such as "2.5".
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double value);

/// A closed interval [lo, hi] of doubles, used for outward-rounded magnitudes.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Bounds containing the exact (possibly irrational) value sqrt(q), q >= 0.
Interval sqrt_enclosure(const Rational& q);

/// Enclosure of an exact rational.
Interval enclosure(const Rational& q);

double next_up(double x);
double next_down(double x);

/// Exact element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design of the field embedding
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long re) : re_(re) {}  // NOLINT

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// |z|^2, exact.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
  GaussianRational conj() const { return {re_, Rational(-im_)}; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussianRational pow(const GaussianRational& base, unsigned exponent);

/// Outward-rounded enclosure of |z|.
Interval magnitude_enclosure(const GaussianRational& z);

/// "p/q" when real, "(re,im)" otherwise.
std::string to_string(const GaussianRational& z);

/// Accepts a rational or "(re,im)".
GaussianRational parse_gaussian(std::string_view text);

/// Exact square root in Q(i) when one exists.
bool exact_sqrt(const GaussianRational& z, GaussianRational& root);
bool exact_sqrt(const Rational& q, Rational& root);

}  // namespace casaskit
