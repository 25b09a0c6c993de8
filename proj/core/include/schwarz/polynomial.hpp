#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schwarz/rational.hpp"

namespace schwarz {

// Dense univariate polynomial over Q, low degree first, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial x() { return monomial(1, 1); }
  static Polynomial monomial(const Rational& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  const Rational& lc() const { return c_.back(); }
  int valuation() const;  // -1 for zero

  Polynomial derivative() const;
  Rational eval(const Rational& x) const;
  Polynomial compose(const Polynomial& g) const;
  Polynomial monic() const;
  Polynomial pow(unsigned k) const;

  // Content as a positive rational: p = content * primitive integer polynomial.
  Rational content() const;
  Polynomial primitive() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Throws if b does not divide a.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0,0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Integer coefficient vectors, used by gcd and the resultant code.
std::vector<Integer> to_primitive_integer(const Polynomial& p);

}  // namespace schwarz
