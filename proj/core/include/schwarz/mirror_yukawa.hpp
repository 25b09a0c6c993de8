#pragma once

#include <optional>
#include <string>

#include "schwarz/diffop.hpp"
#include "schwarz/frobenius.hpp"

namespace schwarz {

// Order-4 operator with indicial polynomial (s - r)^4 at 0. When r != 0 the
// work is done on x^-r L x^r; nome and Yukawa do not see that gauge.
struct MumData {
  DiffOperator op;
  Rational exponent;  // r
  Series q_x;         // x exp(S1/S0), x + O(x^2)
  Series K_x;         // K_q(q_x)
  Series K_q;         // in the nome variable, constant term 1
};

// x^-r L x^r for the repeated indicial root r; throws NotMumError when the
// indicial polynomial is not (s - r)^4 with r rational, std::invalid_argument
// when L is not of order 4.
DiffOperator mum_normalized(const DiffOperator& L, Rational* exponent = nullptr);

Series nome_series(const DiffOperator& L, int K);

// K_q = (q d/dq)^2 (y2/y0) = 1 + (q d/dq)^2 (S2/S0 - (S1/S0)^2/2).
MumData mum_data(const DiffOperator& L, int K);

struct Yukawa {
  Series K_x, K_q;
};
Yukawa yukawa(const DiffOperator& L, int K);

// W(M)(x) - W(L)(y) y'^2 + {y, x}.
RatFunc pair_schwarzian_residual(const DiffOperator& L, const DiffOperator& M, const RatFunc& y);
RatFunc pair_schwarzian_residual_w(const RatFunc& W_L, const RatFunc& W_M, const RatFunc& y);
Series pair_schwarzian_residual(const DiffOperator& L, const DiffOperator& M, const Series& y,
                                int order = 30);

struct YukawaRelationReport {
  bool precondition = false;  // (1/v) pullback(L, y) v == M
  std::string detail;         // first failure, empty when everything holds
  Rational lambda;            // y = lambda x^n + ...
  int n = 0;
  int order = 0;
  bool nome = false;     // q_x(M)^n == q_x(L)(y) / lambda
  bool yukawa_x = false;  // K_x(M) == K_x(L)(y)
  bool yukawa_q = false;  // K_q(M)(q) == K_q(L)(lambda q^n)
  bool holds() const { return precondition && nome && yukawa_x && yukawa_q; }
};
YukawaRelationReport yukawa_pullback_relation_check(const DiffOperator& L, const DiffOperator& M,
                                                    const RatFunc& y, const Gauge& v, int K);

// The order-4 L with D^3, D^2 coefficients P, Q, the Calabi value of the D^1
// coefficient, and D^0 coefficient chosen so that its exterior square is the
// monic form of L5. Throws std::domain_error when no such S exists.
DiffOperator ext2_square_root(const RatFunc& P, const RatFunc& Q, const DiffOperator& L5);

// theta^5 - x (theta + 1/2)(theta + a)(theta + 1 - a)(theta + b)(theta + 1 - b), monic.
DiffOperator hypergeometric_5f4_operator(const Rational& a, const Rational& b);

// The pair L4 / Hadamard operator for parameters (a, b):
//   L4 = exterior square root of the 5F4 operator with
//        P = (4 - 5x)/(x(1 - x)),
//        Q = (3x - 2)(11x - 10)/(8x^2(x - 1)^2) + s/(2x(x - 1)),
//   H4 = (1/v) pullback(L4, y) v,  y = -4x/(1 - x)^2,  v = (x(1 + x)/(1 - x))^(1/2).
struct HadamardPair {
  Rational a, b, s, p;  // s = a(1-a) + b(1-b), p = ab(1-a)(1-b)
  DiffOperator L5, L4, H4;
  RatFunc y;
  Gauge v;
};
HadamardPair hadamard_pair(const Rational& a, const Rational& b);

// Printed top coefficients of both members as functions of s alone.
RatFunc hadamard_pair_P(const Rational& s);
RatFunc hadamard_pair_Q(const Rational& s);
RatFunc hadamard_pair_Phat(const Rational& s);
RatFunc hadamard_pair_Qhat(const Rational& s);

}  // namespace schwarz
