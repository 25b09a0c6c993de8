#pragma once

#include "schwarz/diffop.hpp"

namespace schwarz {

// Symmetric m-th power of a monic order-2 operator (order m+1, monic).
// m in {2,3,4} uses closed formulas; other m use the module basis u^(m-i) u'^i.
DiffOperator sym_power_order2(const DiffOperator& L2, int m);
// The module-basis construction for any m >= 1 (used to cross-check the closed forms).
DiffOperator sym_power_order2_generic(const DiffOperator& L2, int m);

enum class PowerKind { sym2, ext2 };

struct PowerResult {
  DiffOperator op;     // monic minimal operator of the product/wedge
  int order = 0;
  int generic_order = 0;  // N(N+1)/2 or N(N-1)/2
};

// Cyclic-vector construction over Q(x).
PowerResult sym_or_ext_power(const DiffOperator& L, PowerKind kind);

// Order only: Krylov rank of the cyclic vector evaluated through Taylor
// expansions at a few regular points (maximum over the points).
int power_order(const DiffOperator& L, PowerKind kind);

int generic_power_order(int N, PowerKind kind);

}  // namespace schwarz
