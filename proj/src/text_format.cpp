#include "casaskit/text_format.hpp"

#include <cctype>

#include "casaskit/errors.hpp"

namespace casaskit {

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'x' || c == 'z';
  }

  Polynomial expression() {
    Polynomial acc = signed_term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Polynomial rhs = term();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  Polynomial signed_term() {
    char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      Polynomial t = term();
      return c == '-' ? -t : t;
    }
    return term();
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= power();
      } else if (c == '/') {
        ++pos_;
        std::size_t at = pos_;
        Polynomial d = power();
        if (d.degree() != 0) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc *= GaussianRational(1) / d.leading();
      } else if (starts_factor(c)) {
        acc *= power();  // implicit product, e.g. "3x^2"
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 4096) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'z') {
      if (variable_ != '\0' && variable_ != c) fail("mixed variables");
      variable_ = c;
      ++pos_;
      return Polynomial::monomial(GaussianRational(1), 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      try {
        return Polynomial::constant(GaussianRational(parse_rational(text_.substr(start, pos_ - start))));
      } catch (const ParseError&) {
        pos_ = start;
        fail("malformed number");
      }
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  char variable_ = '\0';
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "[a, (b,c), d]" at top-level commas; offset is the position of the list in the original text.
std::vector<GaussianRational> parse_list(std::string_view text, std::size_t offset) {
  std::string_view s = trim(text);
  if (s.empty() || s.front() != '[') throw ParseError("expected '['", offset);
  if (s.back() != ']') throw ParseError("expected ']'", offset + s.size());
  std::string_view body = s.substr(1, s.size() - 2);
  std::vector<GaussianRational> out;
  if (trim(body).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '(') ++depth;
    if (i < body.size() && body[i] == ')') --depth;
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      std::string_view item = body.substr(start, i - start);
      try {
        out.push_back(parse_gaussian(item));
      } catch (const ParseError& e) {
        throw ParseError("bad list entry '" + std::string(trim(item)) + "'", offset + 1 + start);
      }
      start = i + 1;
    }
  }
  return out;
}

bool has_prefix(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  std::string_view s = trim(text);
  if (has_prefix(s, "poly:")) {
    std::size_t offset = static_cast<std::size_t>(s.data() - text.data()) + 5;
    std::vector<GaussianRational> desc = parse_list(s.substr(5), offset);
    if (desc.empty()) throw ParseError("empty coefficient list", offset);
    if (desc.front().is_zero()) throw ParseError("leading coefficient a_0 must be nonzero", offset);
    return Polynomial::from_descending(desc);
  }
  return ExpressionParser(text).parse();
}

std::string format_polynomial(const Polynomial& p, char variable) {
  if (p.is_zero()) return "0";
  if (!p.has_real_coefficients()) {
    std::string out = "poly:[";
    auto desc = p.descending();
    for (std::size_t i = 0; i < desc.size(); ++i) {
      if (i) out += ", ";
      out += to_string(desc[i]);
    }
    return out + "]";
  }
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coefficient(k).re();
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono;
    if (k >= 1) mono = std::string(1, variable) + (k > 1 ? "^" + std::to_string(k) : "");
    if (k == 0)
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

std::vector<GaussianRational> parse_nodes(std::string_view text) {
  std::string_view s = trim(text);
  std::size_t offset = static_cast<std::size_t>(s.data() - text.data());
  if (has_prefix(s, "nodes:")) {
    s.remove_prefix(6);
    offset += 6;
  }
  std::vector<GaussianRational> nodes = parse_list(s, offset);
  if (nodes.empty()) throw ParseError("node list must hold at least one node", offset);
  return nodes;
}

std::string format_nodes(const std::vector<GaussianRational>& nodes) {
  std::string out = "nodes:[";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ", ";
    out += to_string(nodes[i]);
  }
  return out + "]";
}

GaussianRational parse_point(std::string_view text) { return parse_gaussian(text); }

}  // namespace casaskit
