#pragma once

#include <array>
#include <string>
#include <vector>

#include "schwarz/diffop.hpp"

namespace schwarz {

struct ConditionReport {
  std::string name;
  RatFunc residual;  // zero iff the condition holds
  bool holds = false;
};
ConditionReport make_report(std::string name, RatFunc residual);

// Order 4, L = D^4 + p D^3 + q D^2 + r D + s (made monic first).
// r - (pq/2 - p^3/8 + q' - 3pp'/4 - p''/2); zero iff the exterior square has order 5.
ConditionReport calabi_residual(const DiffOperator& L4);
// s - s(p, q): the extra condition that, with the Calabi one, characterizes
// symmetric cubes.
ConditionReport s_condition_residual(const DiffOperator& L4);

// Order 3, L = D^3 + p D^2 + q D + r: zero iff L is a symmetric square.
ConditionReport symcy3_residual(const DiffOperator& L3);

// Order 5: residuals of r, s, t against their values for Sym^4 of
// D^2 + (p/10) D + B.
std::array<ConditionReport, 3> order5_residuals(const DiffOperator& L5);

struct SymPowerDetection {
  bool is_sym_power = false;
  DiffOperator L2;       // candidate D^2 + A D + B
  DiffOperator rebuilt;  // Sym^(N-1)(L2)
};
// Reconstructs A, B from the two top coefficients and compares Sym^(N-1)(L2)
// with the monic form of L. Throws std::invalid_argument unless order(L) == N >= 2.
SymPowerDetection detect_sym_power(const DiffOperator& L, int N);

// Self-adjoint factors
//   U3 = a D^3 + (3/2) a' D^2 + b D + b'/2 - a'''/4,  U1 = c D + c'/2.
DiffOperator self_adjoint_order3(const RatFunc& a, const RatFunc& b);
DiffOperator self_adjoint_order1(const RatFunc& c);

// Monic form of (U1 U3 + 1) d.
DiffOperator selfadjoint_order4(const RatFunc& a, const RatFunc& b, const RatFunc& c,
                                const RatFunc& d);
// Monic form of (U1 V1 U3 + U1 + U3) d with V1 = e D + e'/2.
DiffOperator selfadjoint_order5(const RatFunc& a, const RatFunc& b, const RatFunc& c,
                                const RatFunc& d, const RatFunc& e);

// The closed form of (p, q, r, s) for selfadjoint_order4, coefficient by coefficient.
std::array<RatFunc, 4> selfadjoint_order4_coefficients(const RatFunc& a, const RatFunc& b,
                                                       const RatFunc& c, const RatFunc& d);

// L w^alpha == (-1)^N w^alpha adjoint(L), with w the wronskian (w'/w = -p).
// For odd N the adjoint of a monic operator has leading coefficient -1, hence the sign.
bool adjoint_conjugation_check(const DiffOperator& L, const Rational& alpha);
// Exponents from {1, 2/3, 1/2, 2/5} for which the identity holds.
std::vector<Rational> adjoint_conjugation_search(const DiffOperator& L);

// M2 L2 relations for a pullback y.
struct ReducibleReport {
  ConditionReport schwarzian_L;   // W(x) - W(y) y'^2 + {y, x}, W from L2
  ConditionReport schwarzian_M;   // same with W from M2
  ConditionReport coupling;       // 4y''/y' + pt - p - (pt(y) - p(y)) y'
  ConditionReport delta_w;        // 2 dW' - (p - pt) dW, dW = W - Wt
  ConditionReport calabi_product;  // calabi_residual(M2 L2)
};
ReducibleReport reducible_relations(const DiffOperator& L2, const DiffOperator& M2,
                                    const RatFunc& y);

struct ReducibleSeriesReport {
  Series schwarzian_L, schwarzian_M, coupling;
};
ReducibleSeriesReport reducible_relations(const DiffOperator& L2, const DiffOperator& M2,
                                          const Series& y, int order = 30);

}  // namespace schwarz
