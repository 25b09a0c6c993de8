#include "schwarz/frobenius.hpp"

namespace schwarz {

LogSeries LogSeries::derivative() const {
  LogSeries r;
  r.parts.resize(parts.size());
  for (size_t l = 0; l < parts.size(); ++l) {
    r.parts[l] = parts[l].derivative();
    if (l + 1 < parts.size()) r.parts[l] += parts[l + 1].shift(-1);
  }
  return r;
}

int LogSeries::order() const {
  int o = Series::kExact;
  for (const auto& p : parts) o = std::min(o, p.order());
  return o;
}

LogSeries apply(const DiffOperator& L, const LogSeries& f) {
  LogSeries acc;
  acc.parts.resize(f.parts.size());
  LogSeries d = f;
  for (int k = 0; k <= L.order(); ++k) {
    if (k > 0) d = d.derivative();
    const RatFunc& a = L.coeffs()[k];
    if (a.is_zero()) continue;
    for (size_t l = 0; l < f.parts.size(); ++l) {
      const Series& p = d.parts[l];
      int v = a.num().valuation() - a.den().valuation();
      Series ae = a.is_polynomial() ? laurent(a, Series::kExact) : laurent(a, v + p.precision() + 1);
      acc.parts[l] += ae * p;
    }
  }
  return acc;
}

namespace {

// theta-form data: x^N L / a_N = sum_k b_k(x) x^k D^k
std::vector<Series> theta_coefficients(const DiffOperator& L, int K) {
  int N = L.order();
  if (N < 1) throw std::domain_error("operator of order < 1");
  DiffOperator M = L.normalized();
  std::vector<Series> b;
  for (int k = 0; k <= N; ++k) {
    RatFunc bk = M.coeff(k) * RatFunc(Polynomial::monomial(1, N - k));
    if (!bk.is_zero() && bk.num().valuation() < bk.den().valuation())
      throw std::domain_error("x = 0 is not a regular singular point");
    b.push_back(laurent(bk, K));
  }
  return b;
}

Polynomial falling(int k) {
  Polynomial p(1);
  for (int i = 0; i < k; ++i) p = p * Polynomial(std::vector<Rational>{Rational(-i), Rational(1)});
  return p;
}

}  // namespace

Polynomial indicial_polynomial(const DiffOperator& L) {
  auto b = theta_coefficients(L, 1);
  Polynomial q;
  for (size_t k = 0; k < b.size(); ++k) q += b[k].coeff(0) * falling(static_cast<int>(k));
  return q.monic();
}

FrobeniusBasis frobenius_mum_basis(const DiffOperator& L, int K) {
  int N = L.order();
  auto b = theta_coefficients(L, K);
  std::vector<Polynomial> ff;
  for (int k = 0; k <= N; ++k) ff.push_back(falling(k));
  std::vector<Polynomial> Q(K);
  for (int j = 0; j < K; ++j)
    for (int k = 0; k <= N; ++k) Q[j] += b[k].coeff(j) * ff[k];
  if (!(Q[0] == Polynomial::monomial(1, N))) throw NotMumError(Q[0].monic());

  auto jet_at = [&](const Polynomial& p, int shift) {
    Polynomial s = p.compose(Polynomial(std::vector<Rational>{Rational(shift), Rational(1)}));
    return Series::from_polynomial(s, N);
  };
  std::vector<Series> c(K);
  c[0] = Series::constant(1, N);
  for (int m = 1; m < K; ++m) {
    Series acc = Series::zero(N);
    for (int j = 1; j <= m; ++j) {
      if (Q[j].is_zero()) continue;
      acc += jet_at(Q[j], m - j) * c[m - j];
    }
    c[m] = -(acc * jet_at(Q[0], m).inverse());
  }
  FrobeniusBasis fb;
  for (int t = 0; t < N; ++t) {
    std::vector<Rational> coeffs(K);
    for (int m = 0; m < K; ++m) coeffs[m] = c[m].coeff(t);
    fb.S.emplace_back(0, std::move(coeffs), K);
  }
  for (int j = 0; j < N; ++j) {
    LogSeries y;
    for (int l = 0; l <= j; ++l) y.parts.push_back(fb.S[j - l]);
    fb.solutions.push_back(std::move(y));
  }
  return fb;
}

}  // namespace schwarz
