#pragma once

#include <optional>
#include <vector>

#include "schwarz/ratfunc.hpp"

namespace schwarz {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
struct SolveResult {
  bool consistent = false;
  size_t rank = 0;
  std::vector<F> particular;             // valid when consistent
  std::vector<std::vector<F>> nullspace;  // basis of the homogeneous solutions
};

namespace detail {

template <class F>
struct Echelon {
  Matrix<F> rows;                // reduced row echelon form (augmented if requested)
  std::vector<size_t> pivots;    // pivot column of each nonzero row
};

// Gauss-Jordan elimination over a field. `ncols` columns take part in pivoting.
template <class F>
Echelon<F> rref(Matrix<F> M, size_t ncols) {
  Echelon<F> e;
  size_t nrows = M.size();
  size_t r = 0;
  for (size_t col = 0; col < ncols && r < nrows; ++col) {
    size_t piv = nrows;
    for (size_t i = r; i < nrows; ++i)
      if (!is_zero(M[i][col])) {
        piv = i;
        break;
      }
    if (piv == nrows) continue;
    std::swap(M[r], M[piv]);
    F inv = F(1) / M[r][col];
    for (size_t j = col; j < M[r].size(); ++j)
      if (!is_zero(M[r][j])) M[r][j] = M[r][j] * inv;
    for (size_t i = 0; i < nrows; ++i) {
      if (i == r || is_zero(M[i][col])) continue;
      F f = M[i][col];
      for (size_t j = col; j < M[i].size(); ++j)
        if (!is_zero(M[r][j])) M[i][j] = M[i][j] - f * M[r][j];
    }
    e.pivots.push_back(col);
    ++r;
  }
  M.resize(r);
  e.rows = std::move(M);
  return e;
}

template <class F>
std::vector<std::vector<F>> nullspace_from(const Echelon<F>& e, size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(ncols, F(0));
    v[free] = F(1);
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F(0) - e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Solve M v = b exactly over the field F (Rational or RatFunc).
template <class F>
SolveResult<F> linear_solve(const Matrix<F>& M, const std::vector<F>& b) {
  size_t ncols = M.empty() ? 0 : M[0].size();
  Matrix<F> aug = M;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto e = detail::rref(std::move(aug), ncols + 1);
  SolveResult<F> res;
  res.consistent = e.pivots.empty() || e.pivots.back() < ncols;
  res.rank = e.pivots.size() - (res.consistent ? 0 : 1);
  if (!res.consistent) return res;
  res.particular.assign(ncols, F(0));
  for (size_t r = 0; r < e.pivots.size(); ++r) res.particular[e.pivots[r]] = e.rows[r][ncols];
  res.nullspace = detail::nullspace_from(e, ncols);
  return res;
}

template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& M) {
  size_t ncols = M.empty() ? 0 : M[0].size();
  auto e = detail::rref(M, ncols);
  return detail::nullspace_from(e, ncols);
}

template <class F>
size_t rank(const Matrix<F>& M) {
  size_t ncols = M.empty() ? 0 : M[0].size();
  return detail::rref(M, ncols).pivots.size();
}

// Determinant by Gaussian elimination.
template <class F>
F determinant(Matrix<F> M) {
  size_t n = M.size();
  F det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t i = col; i < n; ++i)
      if (!is_zero(M[i][col])) {
        piv = i;
        break;
      }
    if (piv == n) return F(0);
    if (piv != col) {
      std::swap(M[piv], M[col]);
      det = F(0) - det;
    }
    det = det * M[col][col];
    F inv = F(1) / M[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (is_zero(M[i][col])) continue;
      F f = M[i][col] * inv;
      for (size_t j = col; j < n; ++j)
        if (!is_zero(M[col][j])) M[i][j] = M[i][j] - f * M[col][j];
    }
  }
  return det;
}

}  // namespace schwarz
