#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "casaskit/polynomial.hpp"

namespace casaskit {

/// Numeric root carrier: a disc of radius error_radius around value is
/// certified to contain a root of the polynomial it was computed for.
struct ComplexApprox {
  std::complex<double> value;
  double error_radius = 0.0;
};

/// Upper bound on |p(value)| implied by a root lying within error_radius of
/// value: sum_{k>=1} |p^{(k)}(value)| r^k / k!.
double residual_bound(const Polynomial& p, const ComplexApprox& root);

struct RootOptions {
  int max_iterations = 200;
  /// Converged when every correction is below tolerance * (1 + |value|).
  double tolerance = 1e-14;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, std::vector<ComplexApprox> best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const std::vector<ComplexApprox>& best_approximations() const { return best_; }

 private:
  std::vector<ComplexApprox> best_;
};

/// Simultaneous Aberth-Ehrlich iteration on a polynomial with complex
/// coefficients (ascending order), companion-matrix eigenvalues as fallback.
/// Error radii come from the Weierstrass inclusion discs and are only
/// meaningful for square-free input.
std::vector<ComplexApprox> numeric_roots(std::span<const std::complex<double>> ascending,
                                         const RootOptions& options = {});

/// Roots of an exact square-free polynomial, each certified.
std::vector<ComplexApprox> numeric_roots(const Polynomial& squarefree, const RootOptions& options = {});

struct RootEntry {
  std::optional<GaussianRational> exact;
  /// Always populated; radius zero when the root is exact.
  ComplexApprox approx;
  int multiplicity = 0;

  bool is_exact() const { return exact.has_value(); }
  std::complex<double> value() const { return approx.value; }
};

/// Distinct roots with multiplicities; sum of multiplicities equals degree.
struct RootMultiset {
  std::vector<RootEntry> entries;
  int degree = 0;

  int distinct_count() const { return static_cast<int>(entries.size()); }
  int max_multiplicity() const;
  int min_multiplicity() const;
  bool all_exact() const;
  /// Roots repeated by multiplicity, as plain complex values.
  std::vector<std::complex<double>> expanded() const;
};

/// Exact multiplicities (square-free decomposition); exact root values when a
/// square-free factor splits over Q(i), certified numerics otherwise.
/// Real-rooted real polynomials come back sorted ascending with zero
/// imaginary parts; otherwise entries are ordered by (re, im).
RootMultiset root_multiset(const Polynomial& p, const RootOptions& options = {});

/// Number of distinct real roots of a real polynomial (Sturm sequence).
int count_distinct_real_roots(const Polynomial& p);

/// True when p has real coefficients and every root is real.
bool is_real_rooted(const Polynomial& p);

/// The n - m roots of p^{(m)}, repeated by multiplicity.
struct DerivativeRoots {
  int order = 0;
  std::vector<ComplexApprox> roots;
};

DerivativeRoots derivative_roots(const Polynomial& p, int m, const RootOptions& options = {});

}  // namespace casaskit
