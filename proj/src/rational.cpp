#include "casaskit/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "casaskit/errors.hpp"

namespace casaskit {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash);
    q = Rational(mpz_class(std::string(num), 10), d);
    q.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw ParseError("malformed decimal '" + std::string(text) + "'", 0);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    q = Rational(digits, scale);
    q.canonicalize();
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'", 0);
    q = Rational(mpz_class(std::string(s), 10));
  }
  if (negative) q = -q;
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

Interval enclosure(const Rational& q) {
  // mpq_get_d truncates toward zero.
  double d = q.get_d();
  if (Rational(rational_from_double(d)) == q) return {d, d};
  return sgn(q) > 0 ? Interval{d, next_up(d)} : Interval{next_down(d), d};
}

Interval sqrt_enclosure(const Rational& q) {
  if (sgn(q) < 0) throw DomainError("square root of a negative rational");
  if (sgn(q) == 0) return {0.0, 0.0};
  Interval e = enclosure(q);
  double lo = std::max(0.0, next_down(std::sqrt(e.lo)));
  double hi = next_up(std::sqrt(e.hi));
  return {lo, hi};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational pow(const GaussianRational& base, unsigned exponent) {
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Interval magnitude_enclosure(const GaussianRational& z) {
  if (z.is_real()) return enclosure(Rational(abs(z.re())));
  return sqrt_enclosure(z.norm());
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re());
  return "(" + to_string(z.re()) + "," + to_string(z.im()) + ")";
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw ParseError("unterminated pair '" + std::string(text) + "'", s.size());
    std::string_view inner = s.substr(1, s.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected (re,im) in '" + std::string(text) + "'", 0);
    return {parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1))};
  }
  return {parse_rational(s)};
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class num = sqrt(q.get_num());
  mpz_class den = sqrt(q.get_den());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

bool exact_sqrt(const GaussianRational& z, GaussianRational& root) {
  if (z.is_real() && sgn(z.re()) >= 0) {
    Rational r;
    if (!exact_sqrt(z.re(), r)) return false;
    root = GaussianRational(r);
    return true;
  }
  if (z.is_real()) {
    Rational r;
    if (!exact_sqrt(Rational(-z.re()), r)) return false;
    root = GaussianRational(Rational(0), r);
    return true;
  }
  Rational t;
  if (!exact_sqrt(z.norm(), t)) return false;
  Rational x2 = (t + z.re()) / 2;
  Rational y2 = (t - z.re()) / 2;
  Rational x, y;
  if (!exact_sqrt(x2, x) || !exact_sqrt(y2, y)) return false;
  if (sgn(z.im()) < 0) y = -y;
  root = GaussianRational(x, y);
  return true;
}

}  // namespace casaskit
