#pragma once

// Small builders shared by the unit tests and the acceptance binary.

#include <random>
#include <vector>

#include "schwarz/diffop.hpp"
#include "schwarz/series.hpp"

namespace schwarz::testing {

inline RatFunc X() { return RatFunc::x(); }
inline RatFunc R(long n, long d = 1) { return RatFunc(make_rational(n, d)); }
inline Rational Q(long n, long d = 1) { return make_rational(n, d); }
inline Polynomial P(std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.emplace_back(v);
  return Polynomial(std::move(r));
}
inline DiffOperator op(std::vector<RatFunc> c) { return DiffOperator(std::move(c)); }

// Degree <= 2 over degree <= 1, denominator nonvanishing at 0.
inline RatFunc random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  Polynomial n(std::vector<Rational>{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
  Polynomial den(std::vector<Rational>{Rational(2 + (d(rng) + 4) % 3), Rational(d(rng))});
  return RatFunc(n, den);
}

inline DiffOperator random_monic(std::mt19937& rng, int N) {
  std::vector<RatFunc> c;
  for (int k = 0; k < N; ++k) c.push_back(random_coeff(rng));
  c.push_back(R(1));
  return op(c);
}

// W(x) = -(32x^2 - 41x + 36)/(72 x^2 (x-1)^2)
inline RatFunc modular_w() {
  return RatFunc(P({-36, 41, -32}), Polynomial(std::vector<Rational>{0, 0, 72}) * P({-1, 1}) * P({-1, 1}));
}

// F(x) = x (1-x)^(1/2) 2F1([1/12, 5/12], [1], x)^2
inline Series modular_f(int K) {
  Series h = hypergeometric_2f1(Q(1, 12), Q(5, 12), 1, K);
  return Series::x() * pow(Series(0, {1, -1}, K), Q(1, 2)) * h * h;
}

}  // namespace schwarz::testing
