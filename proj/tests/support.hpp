#pragma once

#include <random>
#include <vector>

#include "casaskit/polynomial.hpp"
#include "casaskit/text_format.hpp"
#include "doctest.h"

namespace casaskit::testing {

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_max = 4) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  return make_rational(num(rng), den(rng));
}

struct RootedSample {
  Polynomial poly;
  std::vector<Rational> roots;  // distinct
  std::vector<int> multiplicities;
};

// Monic polynomial with distinct rational roots and random multiplicities, total degree n.
inline RootedSample random_rooted(std::mt19937_64& rng, int n) {
  RootedSample s;
  int left = n;
  while (left > 0) {
    Rational x = random_rational(rng);
    bool fresh = true;
    for (const auto& y : s.roots) fresh = fresh && y != x;
    if (!fresh) continue;
    std::uniform_int_distribution<int> mult(1, std::min(left, 3));
    int r = mult(rng);
    s.roots.push_back(x);
    s.multiplicities.push_back(r);
    left -= r;
  }
  std::vector<GaussianRational> g(s.roots.begin(), s.roots.end());
  s.poly = Polynomial::from_roots(g, s.multiplicities);
  return s;
}

inline GaussianRational gq(long p, long q = 1) { return GaussianRational(make_rational(p, q)); }

}  // namespace casaskit::testing

namespace doctest {
template <>
struct StringMaker<casaskit::Polynomial> {
  static String convert(const casaskit::Polynomial& p) { return casaskit::format_polynomial(p).c_str(); }
};
template <>
struct StringMaker<casaskit::GaussianRational> {
  static String convert(const casaskit::GaussianRational& z) { return casaskit::to_string(z).c_str(); }
};
}  // namespace doctest
