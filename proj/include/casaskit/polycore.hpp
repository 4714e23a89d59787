#pragma once

#include <optional>
#include <vector>

#include "casaskit/polynomial.hpp"
#include "casaskit/roots.hpp"

namespace casaskit {

/// Weighted root power sums p[t] = sum_j r_j lambda_j^t, t = 0..t_max.
struct PowerSums {
  std::vector<GaussianRational> p;

  const GaussianRational& operator[](std::size_t t) const { return p.at(t); }
  std::size_t size() const { return p.size(); }
};

/// Newton's identities on the coefficients (the polynomial is normalized to
/// monic first); no root is ever extracted.
PowerSums power_sums(const Polynomial& p, int t_max);

/// One root of the quadratic p^{(n-2)}: exact when the discriminant is a
/// square in Q(i), numeric otherwise.
struct QuadraticRoot {
  std::optional<GaussianRational> exact;
  std::complex<double> value;
};

struct CentroidData {
  /// z_{n-1} = -a_1 / (n a_0), the single root of p^{(n-1)}.
  GaussianRational centroid;
  /// (z_{n-1} - z_{n-2})^2 = disc(p^{(n-2)}) / (4 lead^2); independent of
  /// which quadratic root is called z_{n-2}.
  GaussianRational gap_squared;
  /// Both roots of p^{(n-2)}: penultimate = z_{n-1} + sqrt(gap^2) (principal
  /// branch) and mirror = 2 z_{n-1} - penultimate.
  QuadraticRoot penultimate;
  QuadraticRoot mirror;

  /// |z_{n-1} - z_{n-2}| in double precision.
  double gap() const;
};

/// Requires degree >= 2.
CentroidData centroid_data(const Polynomial& p);

/// True iff p is divisible by its first derivative, i.e. p = a (z - b)^n.
bool is_trivial(const Polynomial& p);

}  // namespace casaskit
