#include "schwarz/guess.hpp"

#include <stdexcept>

#include "schwarz/linalg.hpp"

namespace schwarz {

namespace {

// Arithmetic modulo 2^61 - 1. Ranks mod p locate the smallest (order, degree)
// and a row subset of full rank before any exact elimination happens.
constexpr unsigned long long kPrime = 2305843009213693951ULL;

unsigned long long mulmod(unsigned long long a, unsigned long long b) {
  return static_cast<unsigned long long>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

unsigned long long submod(unsigned long long a, unsigned long long b) {
  return a >= b ? a - b : a + kPrime - b;
}

unsigned long long powmod(unsigned long long a, unsigned long long e) {
  unsigned long long r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

unsigned long long to_mod(const Integer& z) {
  Integer p;
  mpz_set_ui(p.get_mpz_t(), 0);
  mpz_import(p.get_mpz_t(), 1, 1, sizeof(kPrime), 0, 0, &kPrime);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  unsigned long long out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

// Incremental reduced echelon basis mod p; records which input rows were kept.
struct ModEchelon {
  size_t ncols;
  std::vector<std::vector<unsigned long long>> rows;
  std::vector<size_t> pivot;
  std::vector<size_t> kept;

  void insert(std::vector<unsigned long long> v, size_t id) {
    for (size_t r = 0; r < rows.size(); ++r) {
      unsigned long long c = v[pivot[r]];
      if (c == 0) continue;
      for (size_t j = 0; j < ncols; ++j)
        if (rows[r][j]) v[j] = submod(v[j], mulmod(c, rows[r][j]));
    }
    size_t p = 0;
    while (p < ncols && v[p] == 0) ++p;
    if (p == ncols) return;
    unsigned long long inv = powmod(v[p], kPrime - 2);
    for (auto& x : v) x = mulmod(x, inv);
    for (auto& row : rows) {
      unsigned long long c = row[p];
      if (c == 0) continue;
      for (size_t j = 0; j < ncols; ++j)
        if (v[j]) row[j] = submod(row[j], mulmod(c, v[j]));
    }
    rows.push_back(std::move(v));
    pivot.push_back(p);
    kept.push_back(id);
  }
};

// Kernel of a rational matrix: rows are cleared to integers, reduced by
// fraction-free (Bareiss) elimination, then back-substituted over Q.
std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& Q, size_t n) {
  std::vector<std::vector<Integer>> A;
  for (const auto& qrow : Q) {
    Integer l = 1;
    for (const auto& c : qrow) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = qrow[j].get_num() * (l / qrow[j].get_den());
    A.push_back(std::move(row));
  }
  std::vector<size_t> pivots;
  Integer prev = 1;
  size_t r = 0;
  for (size_t col = 0; col < n && r < A.size(); ++col) {
    size_t piv = r;
    while (piv < A.size() && sgn(A[piv][col]) == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[r], A[piv]);
    for (size_t i = r + 1; i < A.size(); ++i) {
      for (size_t j = col + 1; j < n; ++j) {
        A[i][j] = A[r][col] * A[i][j] - A[i][col] * A[r][j];
        mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      A[i][col] = 0;
    }
    prev = A[r][col];
    pivots.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (size_t i = pivots.size(); i-- > 0;) {
      Rational s = 0;
      for (size_t j = pivots[i] + 1; j < n; ++j)
        if (sgn(v[j]) != 0 && sgn(A[i][j]) != 0) s += Rational(A[i][j]) * v[j];
      v[pivots[i]] = -s / Rational(A[i][pivots[i]]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

DiffOperator to_operator(const std::vector<Rational>& v, int r, int d) {
  Integer l = 1, g = 0;
  for (const auto& c : v) {
    if (sgn(c) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  std::vector<RatFunc> coeffs(r + 1);
  for (int k = 0; k <= r; ++k) {
    std::vector<Rational> p(d + 1);
    for (int j = 0; j <= d; ++j) p[j] = v[k * (d + 1) + j] * scale;
    coeffs[k] = RatFunc(Polynomial(std::move(p)));
  }
  DiffOperator L(std::move(coeffs));
  const Polynomial& top = L.leading().num();
  if (sgn(top.coeffs()[top.valuation()]) < 0) L = RatFunc(-1) * L;
  return L;
}

}  // namespace

std::optional<DiffOperator> guess_operator(const Series& f, const GuessOptions& opts) {
  if (f.is_exact()) throw std::invalid_argument("guess_operator needs a truncated series");
  if (f.val() < 0 && !f.is_zero()) throw std::invalid_argument("guess_operator needs a power series");
  int known = f.order();
  int need = (opts.max_order + 1) * (opts.max_degree + 2) + 10;
  if (known < need)
    throw std::invalid_argument("guess_operator: " + std::to_string(known) + " coefficients known, " +
                                std::to_string(need) + " required");

  // fk[k][m] = [x^m] f^(k), exact and reduced mod p
  int rmax = opts.max_order;
  std::vector<std::vector<Rational>> fk(rmax + 1);
  std::vector<std::vector<unsigned long long>> fk_mod(rmax + 1);
  for (int k = 0; k <= rmax; ++k)
    for (int m = 0; m + k < known; ++m) {
      Rational c = f.coeff(m + k);
      for (int t = 1; t <= k; ++t) c *= m + t;
      unsigned long long den = to_mod(c.get_den());
      if (den == 0) throw std::runtime_error("guess_operator: denominator divisible by the working prime");
      fk[k].push_back(c);
      fk_mod[k].push_back(mulmod(to_mod(c.get_num()), powmod(den, kPrime - 2)));
    }

  for (int r = 1; r <= rmax; ++r)
    for (int d = 0; d <= opts.max_degree; ++d) {
      size_t U = static_cast<size_t>((r + 1) * (d + 1));
      int E = known - r;  // equations n = 0..E-1 are fully determined
      int solve_rows = E - opts.check_terms;
      if (solve_rows < static_cast<int>(U)) continue;
      // [x^n] sum c_{k,j} x^j f^(k)
      auto entry = [&](int n, int k, int j) { return n >= j ? fk[k][n - j] : Rational(0); };

      ModEchelon ech{U, {}, {}, {}};
      for (int n = 0; n < solve_rows && ech.rows.size() < U; ++n) {
        std::vector<unsigned long long> row(U, 0);
        for (int k = 0; k <= r; ++k)
          for (int j = 0; j <= d && j <= n; ++j) row[k * (d + 1) + j] = fk_mod[k][n - j];
        ech.insert(std::move(row), static_cast<size_t>(n));
      }
      if (ech.rows.size() == U) continue;

      // Exact rank can only exceed the modular one, so the exact kernel of the
      // kept rows contains every true solution; each candidate is then
      // verified against all determined equations.
      Matrix<Rational> M;
      for (size_t id : ech.kept) {
        std::vector<Rational> row(U);
        for (int k = 0; k <= r; ++k)
          for (int j = 0; j <= d; ++j) row[k * (d + 1) + j] = entry(static_cast<int>(id), k, j);
        M.push_back(std::move(row));
      }
      if (M.empty()) M.push_back(std::vector<Rational>(U));
      for (const auto& v : kernel(M, U)) {
        bool uses_top = false;
        for (int j = 0; j <= d; ++j) uses_top = uses_top || sgn(v[r * (d + 1) + j]) != 0;
        if (!uses_top) continue;
        bool ok = true;
        for (int n = 0; n < E && ok; ++n) {
          Rational s = 0;
          for (int k = 0; k <= r; ++k)
            for (int j = 0; j <= d && j <= n; ++j) {
              const Rational& c = v[k * (d + 1) + j];
              if (sgn(c) != 0) s += c * entry(n, k, j);
            }
          ok = sgn(s) == 0;
        }
        if (ok) return to_operator(v, r, d);
      }
    }
  return std::nullopt;
}

}  // namespace schwarz
