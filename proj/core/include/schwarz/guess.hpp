#pragma once

#include <optional>

#include "schwarz/diffop.hpp"

namespace schwarz {

struct GuessOptions {
  int max_order = 4;
  int max_degree = 8;
  int check_terms = 20;  // equations held back for verification
};

// Lowest (order, degree) operator with polynomial coefficients annihilating f
// to its known order; nullopt when none exists within the bounds. Throws when
// f carries too few coefficients for the requested bounds.
std::optional<DiffOperator> guess_operator(const Series& f, const GuessOptions& opts = {});

}  // namespace schwarz
