#pragma once

#include <string>
#include <vector>

#include "schwarz/ratfunc.hpp"

namespace schwarz {

// Truncated Laurent series  sum_{n >= val} c_n x^n + O(x^order).
// Polynomials and monomials can be held exactly (order() == kExact); such
// values never lose precision in ring operations.
class Series {
 public:
  static constexpr int kExact = 1 << 29;

  Series() : val_(kExact), order_(kExact) {}
  // coeffs[i] multiplies x^(val + i); entries at or beyond `order` are dropped.
  Series(int val, std::vector<Rational> coeffs, int order);

  static Series zero(int order = kExact) { return Series(order, {}, order); }
  static Series constant(const Rational& c, int order = kExact) { return Series(0, {c}, order); }
  static Series monomial(const Rational& c, int k, int order = kExact) { return Series(k, {c}, order); }
  static Series x(int order = kExact) { return monomial(1, 1, order); }
  static Series from_polynomial(const Polynomial& p, int order = kExact);

  int val() const { return val_; }
  int order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  bool is_zero() const { return c_.empty(); }
  // Relative precision order - val (kExact when exact).
  int precision() const { return is_exact() ? kExact : order_ - val_; }

  // Coefficient of x^n; throws std::out_of_range for n >= order.
  Rational coeff(int n) const;
  Rational operator[](int n) const { return coeff(n); }
  const std::vector<Rational>& raw() const { return c_; }
  // Stored coefficients for x^from .. x^(to-1).
  std::vector<Rational> coeffs(int from, int to) const;

  Series truncate(int order) const;
  Series derivative() const;
  Series shift(int k) const;  // times x^k
  Series inverse() const;
  Series pow_int(long k) const;
  Series compose(const Series& g) const;
  Series reverse() const;
  Series scaled_argument(const Rational& a) const;  // f(a x)

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(const Rational& c);
  Series& operator/=(const Series& o) { return *this *= o.inverse(); }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }
  Series operator-() const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.val_ == b.val_ && a.order_ == b.order_ && a.c_ == b.c_;
  }

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  int val_;
  int order_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Series& s) { return s.is_zero(); }

// True when a and b agree on all coefficients below K; throws if either is
// not known to order K.
bool agree_to(const Series& a, const Series& b, int K);
// First exponent below K where a and b differ, or K when they agree.
int first_mismatch(const Series& a, const Series& b, int K);

Series exp(const Series& f);
Series log(const Series& f);
Series pow(const Series& f, const Rational& e);

struct Integral {
  Series series;
  Rational log_coeff;  // coefficient of log(x)
};
Integral integrate(const Series& f);

// Laurent expansion of f at x = 0, known modulo x^order.
Series laurent(const RatFunc& f, int order);
// f(g) for a rational function f; g may be Laurent; precision is tracked.
Series ratfunc_at_series(const RatFunc& f, const Series& g);
Series hadamard(const Series& f, const Series& g);

// 2F1([a, b], [c], x) to order K.
Series hypergeometric_2f1(const Rational& a, const Rational& b, const Rational& c, int order);

}  // namespace schwarz
