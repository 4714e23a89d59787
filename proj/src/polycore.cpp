#include "casaskit/polycore.hpp"

#include <cmath>

#include "casaskit/errors.hpp"

namespace casaskit {

PowerSums power_sums(const Polynomial& p, int t_max) {
  if (p.degree() < 1) throw DomainError("power sums need degree >= 1");
  if (t_max < 0) throw DomainError("negative power-sum order");
  const Polynomial f = p.monic();
  const int n = f.degree();
  // z^n + c_1 z^{n-1} + ... + c_n
  auto c = [&](int i) { return f.a(i); };
  PowerSums out;
  out.p.resize(static_cast<std::size_t>(t_max) + 1);
  out.p[0] = GaussianRational(n);
  for (int t = 1; t <= t_max; ++t) {
    GaussianRational acc;
    for (int i = 1; i <= std::min(t - 1, n); ++i) acc += c(i) * out.p[static_cast<std::size_t>(t - i)];
    if (t <= n) acc += GaussianRational(t) * c(t);
    out.p[static_cast<std::size_t>(t)] = -acc;
  }
  return out;
}

double CentroidData::gap() const { return std::sqrt(std::abs(gap_squared.to_complex())); }

CentroidData centroid_data(const Polynomial& p) {
  const int n = p.degree();
  if (n < 2) throw DomainError("centroid data needs degree >= 2");
  CentroidData out;
  out.centroid = -p.a(1) / (GaussianRational(n) * p.a(0));
  const Polynomial q = p.derivative(n - 2);  // A z^2 + B z + C
  const GaussianRational& A = q.coefficient(2);
  const GaussianRational& B = q.coefficient(1);
  const GaussianRational& C = q.coefficient(0);
  const GaussianRational disc = B * B - GaussianRational(4) * A * C;
  out.gap_squared = disc / (GaussianRational(4) * A * A);

  GaussianRational half_gap;
  if (exact_sqrt(out.gap_squared, half_gap)) {
    out.penultimate = {out.centroid + half_gap, (out.centroid + half_gap).to_complex()};
    out.mirror = {out.centroid - half_gap, (out.centroid - half_gap).to_complex()};
  } else {
    std::complex<double> s = std::sqrt(out.gap_squared.to_complex());
    out.penultimate = {std::nullopt, out.centroid.to_complex() + s};
    out.mirror = {std::nullopt, out.centroid.to_complex() - s};
  }
  return out;
}

bool is_trivial(const Polynomial& p) {
  if (p.degree() < 1) throw DomainError("triviality needs degree >= 1");
  return p.divmod(p.derivative()).second.is_zero();
}

}  // namespace casaskit
