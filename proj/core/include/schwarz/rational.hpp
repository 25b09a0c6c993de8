#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace schwarz {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den", den omitted when 1.
std::string to_string(const Rational& r);

// Accepts "a", "-a", "a/b". Throws std::invalid_argument.
Rational parse_rational(std::string_view s);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat_pow(const Rational& base, long e) {
  Rational result = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result *= b;
    b *= b;
    k >>= 1;
  }
  return result;
}

// Exact q-th root of r if it exists in Q.
bool rational_root(const Rational& r, unsigned long q, Rational& out);

Rational binomial(long n, long k);

}  // namespace schwarz
