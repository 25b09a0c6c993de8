#pragma once

#include <string>

#include "schwarz/polynomial.hpp"

namespace schwarz {

// Reduced quotient num/den with den monic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}         // NOLINT
  RatFunc(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RatFunc(const Polynomial& num, const Polynomial& den);

  static RatFunc x() { return RatFunc(Polynomial::x()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;  // throws unless constant

  RatFunc derivative() const;
  RatFunc compose(const RatFunc& y) const;
  Rational eval(const Rational& x) const;  // throws at poles
  RatFunc pow(long k) const;
  RatFunc inverse() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str(const std::string& var = "x") const;

 private:
  struct Raw {};
  RatFunc(Polynomial num, Polynomial den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace schwarz
