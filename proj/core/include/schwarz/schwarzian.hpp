#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schwarz/diffop.hpp"

namespace schwarz {

// {y, x} = y'''/y' - (3/2)(y''/y')^2
Series schwarzian_derivative(const Series& y);
RatFunc schwarzian_derivative(const RatFunc& y);

// W = 6p'/((N+1)N) + 6p^2/((N+1)N^2) - 12q/((N+1)N(N-1)) for the monic form of
// L = D^N + p D^(N-1) + q D^(N-2) + ...
RatFunc w_function(const DiffOperator& L);

// W(x) - W(y) y'^2 + {y, x}. An exact y is expanded to `order` relative terms.
Series schwarzian_residual(const RatFunc& W, const Series& y, int order = 30);
RatFunc schwarzian_residual(const RatFunc& W, const RatFunc& y);

// Gauge v with (1/v) L v equal to the normalized pullback of L by y whenever
// the Schwarzian condition holds.
Gauge pullback_gauge(const DiffOperator& L, const RatFunc& y);

struct PullbackReport {
  DiffOperator conjugated;  // (1/v) L v
  DiffOperator pulled;      // normalized pullback
  std::vector<bool> coefficient_match;  // index k: D^k coefficients agree
  RatFunc residual;                     // Schwarzian residual of (W, y)
  bool holds() const;
  // lowest k with a mismatch, -1 when all agree
  int first_mismatch() const;
};
PullbackReport pullback_symmetry_check(const DiffOperator& L, const RatFunc& y);

struct SolutionFamily {
  int n = 1;
  Rational a_n;
  Series y;  // a_n x^n (1 + sum c_k x^k), known to x^(n + K)
  std::vector<int> resonances;
  std::optional<int> inconsistent_at;  // level k whose equation has no solution
  bool consistent() const { return !inconsistent_at.has_value(); }
};

// Order-by-order solution of W(x) - W(y) y'^2 + {y, x} = 0 with
// y = a_n x^n (1 + c_1 x + ... + c_{K-1} x^(K-1)). Level k fixes c_k through the
// x^(k-2) coefficient of the residual; level 0 is the leading balance.
// Resonant c_k take the supplied value or 0.
SolutionFamily solve_schwarzian_series(const RatFunc& W, int n, const Rational& a_n, int K,
                                       const std::map<int, Rational>& resonant_values = {});

struct PremodularResult {
  bool pass = false;
  int pole_order = 0;            // order of the pole of W at 0
  std::vector<Rational> head;    // coefficients of x^-2, x^-1, x^0, x^1, ...
};
// Pass iff W + 1/(2x^2) has at most a simple pole at 0.
PremodularResult premodular_test(const RatFunc& W, int head_terms = 6);

// D^3 - 2W D - W'
DiffOperator f_equation(const RatFunc& W);
// D^2 - W/2, whose symmetric square is f_equation(W)
DiffOperator f_equation_factor(const RatFunc& W);

// F''/F - (F'/F)^2/2 + lambda/F^2
Series w_from_f(const Series& F, const Rational& lambda);
// F F'' - F'^2/2 + lambda - F^2 W
Series casimir_residual(const Series& F, const Rational& lambda, const RatFunc& W);

// Polynomial in a formal parameter eps with series coefficients, truncated
// after eps^degree().
class EpsSeries {
 public:
  EpsSeries() = default;
  explicit EpsSeries(std::vector<Series> c) : c_(std::move(c)) {}
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Series& operator[](int j) const { return c_[j]; }
  const std::vector<Series>& coeffs() const { return c_; }
  EpsSeries derivative() const;  // in x
  EpsSeries inverse() const;     // requires an invertible eps^0 term
  friend EpsSeries operator+(const EpsSeries& a, const EpsSeries& b);
  friend EpsSeries operator-(const EpsSeries& a, const EpsSeries& b);
  friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b);
  friend EpsSeries operator*(const Rational& c, const EpsSeries& a);
  // f(x + h) for h = this - x (its eps^0 part must be x), via Taylor in eps
  EpsSeries substitute_into(const Series& f) const;
  EpsSeries substitute_into(const RatFunc& f, int order) const;
  bool is_zero() const;

 private:
  std::vector<Series> c_;
};

// y_eps = x + sum_{n >= 1} eps^n/n! Q_n with Q_1 = F, Q_{n+1} = F Q_n'.
struct OneParamFamily {
  Series F;
  std::vector<Series> Q;  // Q[0] unused (= x), Q[n] for n = 1..eps_degree

  EpsSeries y() const;
  // y_eps at a rational eps, truncated after eps^eps_degree
  Series at(const Rational& eps) const;
  // F(x) y' - F(y), coefficient by coefficient in eps
  EpsSeries functional_residual() const;
  // W(x) - W(y) y'^2 + {y, x}, coefficient by coefficient in eps
  EpsSeries schwarzian_residual(const RatFunc& W) const;
};
OneParamFamily one_param_family(const Series& F, int eps_degree);

struct MirrorMaps {
  Series F;
  Integral theta;  // integral of dx/F: log x + series
  Series Q;        // exp(theta) = x exp(series)
  Series P;        // compositional inverse of Q

  // P(a Q^n)
  Series y(const Rational& a, int n) const;
  // x P' - F(P)
  Series pfunc_residual() const;
};
MirrorMaps mirror_maps(const Series& F);

// y_n(a_n, y_m(a_m, x)) - y_nm(a_n a_m^n, x) with the solver output for each
// family at relative order K.
Series composition_law_check(const RatFunc& W, int n, int m, const Rational& a_n, const Rational& a_m,
                             int K);

// --- rank-two subcase: W = A_R' + A_R^2/2 ---

// w = prod f_i^(e_i); A_R = -w'/w
struct PowerProduct {
  std::vector<std::pair<Polynomial, Rational>> factors;
  RatFunc log_derivative() const;
};

RatFunc ranktwo_w(const RatFunc& A_R);
// y'' - A_R(y) y'^2 + A_R(x) y'; an exact y is expanded to `order` relative terms
Series ranktwo_residual(const RatFunc& A_R, const Series& y, int order = 30);
// y' = c_1 w(x)/w(y) with y = a_n x^n + ..., by fixed-point iteration; known
// to x^(n + K). Requires w ~ x^-1 at 0, the only case with such solutions for n > 1.
Series solve_ranktwo(const PowerProduct& w, int n, const Rational& a_n, int K);

struct FCheck {
  Rational mu;         // from the 1/x balance of A_R - F'/F = mu/F
  Series operator_residual;  // F'' - A_R F' - A_R' F
  Series converse_residual;  // A_R - F'/F - mu/F
  Series w_residual;         // w_from_f(F, mu^2/2) - (A_R' + A_R^2/2)
};
// F = f_1 x + ... and A_R with a simple pole at 0.
FCheck ranktwo_f_check(const RatFunc& A_R, const Series& F);

// --- Heun ---

struct HeunParams {
  Rational a, q, alpha, beta, gamma, delta;
};
DiffOperator heun_operator(const HeunParams& h);

struct HeunReport {
  HeunParams params;
  bool degenerate = false;  // a in {0, 1}
  RatFunc W;
  Rational head2;  // coefficient of x^-2: gamma (gamma - 2)/2
  Rational head1;  // coefficient of x^-1
  bool premodular = false;
  // (u, v, w) with W = A_R' + A_R^2/2 for A_R = u/(x-a) + v/x + w/(x-1)
  std::vector<std::array<Rational, 3>> factorizations;
  // names of the vanishing special-family expressions
  std::vector<std::string> special_conditions;
};
HeunReport heun_scan(const HeunParams& h);

}  // namespace schwarz
