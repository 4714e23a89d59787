#pragma once

#include <complex>
#include <span>
#include <vector>

#include "casaskit/polynomial.hpp"

namespace casaskit {

/// Interpolation nodes z_0..z_{n-1}; repeats are allowed.
class NodeSequence {
 public:
  NodeSequence() = default;
  explicit NodeSequence(std::vector<GaussianRational> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const GaussianRational& operator[](int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<GaussianRational>& values() const { return nodes_; }
  /// The first k nodes.
  NodeSequence prefix(int k) const;

 private:
  std::vector<GaussianRational> nodes_;
};

enum class Construction { interpolation, recursion, genetic };

const char* to_string(Construction c);

/// Monic degree-n polynomial with G^{(m)}(z_m) = 0 for m = 0..n-1.
struct GoncharovResult {
  Polynomial polynomial;
  Construction construction;
};

/// Caps the depth-first walk over genetic-sum index tuples; the number of
/// tuples grows like the Catalan numbers.
struct GeneticBudget {
  int max_degree = 12;
};

/// Back-substitution on the triangular system P^{(m)}(z_m) = -n!/(n-m)! z_m^{n-m}.
GoncharovResult build_interpolation(const NodeSequence& nodes);

/// G_n = z^n - sum_k C(n,k) z_k^{n-k} G_k, with G_k built on the first k
/// nodes and memoized within the call.
GoncharovResult build_recursion(const NodeSequence& nodes);

/// Nested genetic sum over j_1 <= 1, j_{i+1} <= 1 + j_i.
GoncharovResult build_genetic(const NodeSequence& nodes, const GeneticBudget& budget = {});

/// The m-th derivative of G_n from its own genetic sum (not by differentiating).
Polynomial derivative_genetic(const NodeSequence& nodes, int m, const GeneticBudget& budget = {});

/// G_n^{(s+m)}(z_m) from the Taylor-coefficient sum, 1 <= s <= n - m.
/// Terms whose factorial argument is negative contribute zero.
GaussianRational derivative_at_node(const NodeSequence& nodes, int m, int s, const GeneticBudget& budget = {});

/// Classical bound (|z - z_0| + sum_s |z_{s+1} - z_s|)^n, rounded upward.
double goncharov_bound(const NodeSequence& nodes, const GaussianRational& z);
Interval goncharov_bound_enclosure(const NodeSequence& nodes, const GaussianRational& z);
/// Float-mode nodes; magnitudes are taken as computed.
double goncharov_bound(std::span<const std::complex<double>> nodes, std::complex<double> z);

/// Restricted multinomial sum, i.e. the genetic sum with every factor replaced
/// by its modulus. Rounded upward; never exceeds goncharov_bound mathematically.
double sharp_bound(const NodeSequence& nodes, const GaussianRational& z, const GeneticBudget& budget = {});
Interval sharp_bound_enclosure(const NodeSequence& nodes, const GaussianRational& z,
                               const GeneticBudget& budget = {});

/// Elementwise alpha * z_m; alpha must be nonzero.
NodeSequence scale_nodes(const NodeSequence& nodes, const GaussianRational& alpha);

}  // namespace casaskit
