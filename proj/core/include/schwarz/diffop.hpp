#pragma once

#include <string>
#include <vector>

#include "schwarz/ratfunc.hpp"
#include "schwarz/series.hpp"

namespace schwarz {

// A function v known through v'/v.
struct Gauge {
  RatFunc log_derivative;

  static Gauge identity() { return {RatFunc()}; }
  // w^alpha for a rational function w.
  static Gauge power(const RatFunc& w, const Rational& alpha) {
    return {RatFunc(alpha) * w.derivative() / w};
  }
  friend Gauge operator*(const Gauge& a, const Gauge& b) {
    return {a.log_derivative + b.log_derivative};
  }
  Gauge inverse() const { return {-log_derivative}; }
};

// sum_k a_k(x) D^k with rational coefficients.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::vector<RatFunc> coeffs);
  DiffOperator(const RatFunc& f) : DiffOperator(std::vector<RatFunc>{f}) {}  // NOLINT

  static DiffOperator D() { return DiffOperator(std::vector<RatFunc>{RatFunc(), RatFunc(1)}); }
  static DiffOperator D_power(int k);
  static DiffOperator theta();  // x D

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<RatFunc>& coeffs() const { return c_; }
  RatFunc coeff(int k) const;
  const RatFunc& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == RatFunc(1); }
  DiffOperator normalized() const;  // divided by the leading coefficient

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  DiffOperator operator-() const;
  // left multiplication by a function
  friend DiffOperator operator*(const RatFunc& f, const DiffOperator& L);
  // composition
  friend DiffOperator operator*(const DiffOperator& M, const DiffOperator& L);

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<RatFunc> c_;
};

DiffOperator op_mul(const DiffOperator& M, const DiffOperator& L);
// sum (-D)^k a_k
DiffOperator op_adjoint(const DiffOperator& L);
// (1/v) L v; annihilates f/v when L annihilates f.
DiffOperator op_conjugate(const DiffOperator& L, const Gauge& v);
// True substitution x -> y(x): the operator in x acting on f(y(x)) as L acts on f.
DiffOperator op_pullback_raw(const DiffOperator& L, const RatFunc& y);
// Monic-normalized pullback.
DiffOperator op_pullback(const DiffOperator& L, const RatFunc& y);

// Monic operator annihilating 2F1([a, b], [c], x).
DiffOperator hypergeometric_operator(const Rational& a, const Rational& b, const Rational& c);

RatFunc apply(const DiffOperator& L, const RatFunc& f);

// Power series solution at an ordinary point x = 0 with y(0..N-1) Taylor
// coefficients `initial` (coefficients of x^0..x^(N-1)), known to order K.
Series taylor_solution(const DiffOperator& L, const std::vector<Rational>& initial, int K);
Series apply(const DiffOperator& L, const Series& f);

// Taylor expansion of L around x0: coefficients as series in t = x - x0.
std::vector<Series> coefficients_at(const DiffOperator& L, const Rational& x0, int order);

// Operator with truncated-series coefficients.
class SeriesOperator {
 public:
  SeriesOperator() = default;
  explicit SeriesOperator(std::vector<Series> coeffs) : c_(std::move(coeffs)) {}
  static SeriesOperator from(const DiffOperator& L, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Series>& coeffs() const { return c_; }
  Series coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Series(); }

  friend SeriesOperator operator+(const SeriesOperator& a, const SeriesOperator& b);
  friend SeriesOperator operator-(const SeriesOperator& a, const SeriesOperator& b);
  friend SeriesOperator operator*(const Series& f, const SeriesOperator& L);
  friend SeriesOperator operator*(const SeriesOperator& M, const SeriesOperator& L);

  Series apply(const Series& f) const;
  std::string str() const;

 private:
  std::vector<Series> c_;
};

// All coefficients agree below x^K (orders permitting); returns the first
// (derivative index, exponent) mismatch through the out-parameters.
bool agree_to(const SeriesOperator& a, const SeriesOperator& b, int K, int* bad_k = nullptr,
              int* bad_n = nullptr);

}  // namespace schwarz
