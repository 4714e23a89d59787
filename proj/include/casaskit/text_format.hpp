#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "casaskit/polynomial.hpp"

namespace casaskit {

/// Parses either an expression in one variable ("x^4 - 3*x^2 + 2*x",
/// "(x-2)^4", "1/2*z^2 - z") or a leading-first coefficient list
/// ("poly:[1, 0, -3, 2, 0]", entries may be "(re,im)").
/// Throws ParseError carrying the offending position.
Polynomial parse_polynomial(std::string_view text);

/// Canonical text: expression form for real coefficients, coefficient list
/// otherwise. parse_polynomial(format_polynomial(p)) == p.
std::string format_polynomial(const Polynomial& p, char variable = 'x');

/// "nodes:[0, 1, 5/2]" or "nodes:[(0,1), (2,-1)]"; the "nodes:" prefix is optional.
std::vector<GaussianRational> parse_nodes(std::string_view text);
std::string format_nodes(const std::vector<GaussianRational>& nodes);

/// A rational or "(re,im)".
GaussianRational parse_point(std::string_view text);

}  // namespace casaskit
