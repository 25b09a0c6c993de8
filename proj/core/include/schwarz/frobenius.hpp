#pragma once

#include <stdexcept>
#include <vector>

#include "schwarz/diffop.hpp"

namespace schwarz {

// sum_l parts[l] * log(x)^l / l!
struct LogSeries {
  std::vector<Series> parts;

  LogSeries derivative() const;
  int order() const;
};

LogSeries apply(const DiffOperator& L, const LogSeries& f);

// Indicial polynomial of L at x = 0 (monic). Throws std::domain_error when 0
// is not a regular singular point.
Polynomial indicial_polynomial(const DiffOperator& L);

class NotMumError : public std::domain_error {
 public:
  NotMumError(const Polynomial& indicial)
      : std::domain_error("x = 0 is not a MUM point; indicial polynomial " + indicial.str("s")),
        indicial_(indicial) {}
  const Polynomial& indicial() const { return indicial_; }

 private:
  Polynomial indicial_;
};

// y_j = sum_{t <= j} S_t log(x)^(j-t)/(j-t)!, S_0 = 1 + O(x), S_t = O(x) for t > 0.
struct FrobeniusBasis {
  std::vector<Series> S;
  std::vector<LogSeries> solutions;
};

// Requires the indicial polynomial s^N at 0; all series exact to order K.
FrobeniusBasis frobenius_mum_basis(const DiffOperator& L, int K);

}  // namespace schwarz
