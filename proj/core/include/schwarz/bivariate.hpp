#pragma once

#include <string>
#include <vector>

#include "schwarz/ratfunc.hpp"

namespace schwarz {

// Dense polynomial in two variables (X, Y); coefficient(i, j) multiplies X^i Y^j.
class Bivariate {
 public:
  Bivariate() = default;
  explicit Bivariate(std::vector<std::vector<Rational>> c);

  struct Term {
    Rational coeff;
    int i;
    int j;
  };
  static Bivariate from_terms(const std::vector<Term>& terms);

  int degree_x() const { return static_cast<int>(c_.size()) - 1; }
  int degree_y() const;
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i, int j) const;
  const std::vector<std::vector<Rational>>& rows() const { return c_; }

  Rational eval(const Rational& x, const Rational& y) const;
  Polynomial eval_x(const Rational& x) const;  // polynomial in Y
  Polynomial eval_y(const Rational& y) const;  // polynomial in X
  Bivariate swap_vars() const;

  // Numerator of P(f, g) after clearing the denominators of f and g with the
  // formal degrees; zero iff P(f, g) is identically zero.
  Polynomial cleared_composition(const RatFunc& f, const RatFunc& g) const;
  bool vanishes_on(const RatFunc& f, const RatFunc& g) const {
    return cleared_composition(f, g).is_zero();
  }

  // Integer content removed, sign fixed so the first nonzero coefficient in
  // (i, j)-lexicographic order is positive.
  Bivariate content_normalized() const;

  friend bool operator==(const Bivariate& a, const Bivariate& b) { return a.c_ == b.c_; }
  std::string str(const std::string& x = "A", const std::string& y = "B") const;
  size_t term_count() const;

 private:
  void trim();
  std::vector<std::vector<Rational>> c_;
};

// Res_B(P(A,B), Q(B,C)) as a polynomial in (A,C), content-normalized.
// Throws on zero input or when B does not occur in one of them.
Bivariate resultant_in_second_var(const Bivariate& P, const Bivariate& Q);

// Resultant of two univariate polynomials with prescribed formal degrees
// (Sylvester determinant).
Rational sylvester_resultant(const Polynomial& f, int df, const Polynomial& g, int dg);

// Newton interpolation through (xs[i], ys[i]).
Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace schwarz
