#include "schwarz/diffop.hpp"

#include <sstream>
#include <stdexcept>

namespace schwarz {

DiffOperator::DiffOperator(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }

void DiffOperator::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOperator DiffOperator::D_power(int k) {
  std::vector<RatFunc> c(k + 1);
  c[k] = RatFunc(1);
  return DiffOperator(std::move(c));
}

DiffOperator DiffOperator::theta() { return DiffOperator(std::vector<RatFunc>{RatFunc(), RatFunc::x()}); }

RatFunc DiffOperator::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return {};
  return c_[k];
}

DiffOperator DiffOperator::normalized() const {
  if (c_.empty()) throw std::domain_error("normalizing the zero operator");
  if (is_monic()) return *this;
  RatFunc inv = c_.back().inverse();
  std::vector<RatFunc> c(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] * inv;
  return DiffOperator(std::move(c));
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += -o; }

DiffOperator DiffOperator::operator-() const {
  std::vector<RatFunc> c(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
  return DiffOperator(std::move(c));
}

DiffOperator operator*(const RatFunc& f, const DiffOperator& L) {
  std::vector<RatFunc> c(L.c_.size());
  for (size_t k = 0; k < c.size(); ++k) c[k] = f * L.c_[k];
  return DiffOperator(std::move(c));
}

DiffOperator operator*(const DiffOperator& M, const DiffOperator& L) {
  if (M.is_zero() || L.is_zero()) return {};
  int m = M.order(), n = L.order();
  // derivs[j][d] = d-th derivative of l_j
  std::vector<std::vector<RatFunc>> derivs(n + 1);
  for (int j = 0; j <= n; ++j) {
    derivs[j].push_back(L.c_[j]);
    for (int d = 1; d <= m; ++d) derivs[j].push_back(derivs[j].back().derivative());
  }
  std::vector<RatFunc> c(m + n + 1);
  for (int i = 0; i <= m; ++i) {
    if (M.c_[i].is_zero()) continue;
    for (int t = 0; t <= i; ++t) {
      Rational b = binomial(i, t);
      for (int j = 0; j <= n; ++j) {
        const RatFunc& dl = derivs[j][i - t];
        if (dl.is_zero()) continue;
        c[t + j] += RatFunc(b) * M.c_[i] * dl;
      }
    }
  }
  return DiffOperator(std::move(c));
}

std::string DiffOperator::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool one = c_[k] == RatFunc(1);
    if (!one || k == 0) os << "(" << c_[k].str(var) << ")";
    if (k > 0) os << (one ? "" : "*") << "D" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

DiffOperator op_mul(const DiffOperator& M, const DiffOperator& L) { return M * L; }

DiffOperator op_adjoint(const DiffOperator& L) {
  int n = L.order();
  std::vector<RatFunc> c(std::max(n + 1, 0));
  for (int k = 0; k <= n; ++k) {
    RatFunc a = L.coeff(k);
    if (a.is_zero()) continue;
    std::vector<RatFunc> d{a};
    for (int j = 1; j <= k; ++j) d.push_back(d.back().derivative());
    Rational sign = (k % 2) ? -1 : 1;
    for (int t = 0; t <= k; ++t) c[t] += RatFunc(sign * binomial(k, t)) * d[k - t];
  }
  return DiffOperator(std::move(c));
}

DiffOperator op_conjugate(const DiffOperator& L, const Gauge& v) {
  int n = L.order();
  if (n < 0) return {};
  const RatFunc& g = v.log_derivative;
  std::vector<RatFunc> h{RatFunc(1)};
  for (int j = 1; j <= n; ++j) h.push_back(h.back().derivative() + g * h.back());
  std::vector<RatFunc> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    RatFunc a = L.coeff(k);
    if (a.is_zero()) continue;
    for (int t = 0; t <= k; ++t) {
      if (h[k - t].is_zero()) continue;
      c[t] += RatFunc(binomial(k, t)) * a * h[k - t];
    }
  }
  return DiffOperator(std::move(c));
}

DiffOperator op_pullback_raw(const DiffOperator& L, const RatFunc& y) {
  if (y.is_constant()) throw std::domain_error("pullback by a constant");
  int n = L.order();
  if (n < 0) return {};
  RatFunc inv_yp = y.derivative().inverse();
  DiffOperator E(RatFunc(1));
  DiffOperator scaledD = inv_yp * DiffOperator::D();
  DiffOperator result;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) E = scaledD * E;
    RatFunc a = L.coeff(k);
    if (a.is_zero()) continue;
    result += a.compose(y) * E;
  }
  return result;
}

DiffOperator op_pullback(const DiffOperator& L, const RatFunc& y) {
  return op_pullback_raw(L, y).normalized();
}

DiffOperator hypergeometric_operator(const Rational& a, const Rational& b, const Rational& c) {
  // x(1-x) y'' + (c - (a+b+1) x) y' - a b y = 0
  Polynomial w(std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
  RatFunc p(Polynomial(std::vector<Rational>{c, -(a + b + 1)}), w);
  RatFunc q(Polynomial(-a * b), w);
  return DiffOperator(std::vector<RatFunc>{q, p, RatFunc(1)});
}

RatFunc apply(const DiffOperator& L, const RatFunc& f) {
  RatFunc acc, d = f;
  for (int k = 0; k <= L.order(); ++k) {
    if (k > 0) d = d.derivative();
    if (!L.coeff(k).is_zero()) acc += L.coeff(k) * d;
  }
  return acc;
}

namespace {

int ratfunc_val(const RatFunc& f) { return f.num().valuation() - f.den().valuation(); }

Series expand_like(const RatFunc& a, const Series& f) {
  // enough relative precision to match f
  if (a.is_polynomial()) return laurent(a, Series::kExact);
  if (f.is_exact()) throw std::domain_error("applying a non-polynomial operator needs a truncated series");
  return laurent(a, ratfunc_val(a) + f.precision() + 1);
}

}  // namespace

Series apply(const DiffOperator& L, const Series& f) {
  Series acc, d = f;
  for (int k = 0; k <= L.order(); ++k) {
    if (k > 0) d = d.derivative();
    const RatFunc& a = L.coeffs()[k];
    if (a.is_zero()) continue;
    acc += expand_like(a, d) * d;
  }
  return acc;
}

Series taylor_solution(const DiffOperator& L, const std::vector<Rational>& initial, int K) {
  DiffOperator M = L.normalized();
  int N = M.order();
  if (static_cast<int>(initial.size()) != N) throw std::invalid_argument("need N initial coefficients");
  std::vector<Series> a;
  for (int k = 0; k < N; ++k) {
    const RatFunc& c = M.coeffs()[k];
    if (!c.is_zero() && c.den().valuation() > c.num().valuation())
      throw std::domain_error("x = 0 is not an ordinary point");
    a.push_back(laurent(c, K));
  }
  std::vector<Rational> y(initial);
  y.resize(std::max(K, N));
  // y_n (n!/(n-N)!) = -[x^(n-N)] sum_{k<N} a_k y^(k)
  for (int n = N; n < K; ++n) {
    int e = n - N;
    Rational s = 0;
    for (int k = 0; k < N; ++k)
      for (int i = 0; i <= e; ++i) {
        // [x^i] a_k times [x^(e-i)] y^(k)
        Rational ai = a[k].coeff(i);
        if (sgn(ai) == 0) continue;
        int m = e - i + k;
        Rational d = y[m];
        for (int t = 1; t <= k; ++t) d *= (m - k + t);
        s += ai * d;
      }
    Rational f = 1;
    for (int t = 0; t < N; ++t) f *= (n - t);
    y[n] = -s / f;
  }
  y.resize(K);
  return Series(0, std::move(y), K);
}

std::vector<Series> coefficients_at(const DiffOperator& L, const Rational& x0, int order) {
  RatFunc shift(Polynomial(std::vector<Rational>{x0, Rational(1)}));
  std::vector<Series> out;
  for (const auto& a : L.coeffs()) out.push_back(laurent(a.compose(shift), order));
  return out;
}

SeriesOperator SeriesOperator::from(const DiffOperator& L, int order) {
  std::vector<Series> c;
  for (const auto& a : L.coeffs()) c.push_back(laurent(a, order));
  return SeriesOperator(std::move(c));
}

SeriesOperator operator+(const SeriesOperator& a, const SeriesOperator& b) {
  std::vector<Series> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return SeriesOperator(std::move(c));
}

SeriesOperator operator-(const SeriesOperator& a, const SeriesOperator& b) {
  std::vector<Series> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
  return SeriesOperator(std::move(c));
}

SeriesOperator operator*(const Series& f, const SeriesOperator& L) {
  std::vector<Series> c;
  for (const auto& a : L.c_) c.push_back(f * a);
  return SeriesOperator(std::move(c));
}

SeriesOperator operator*(const SeriesOperator& M, const SeriesOperator& L) {
  int m = M.order(), n = L.order();
  if (m < 0 || n < 0) return {};
  std::vector<std::vector<Series>> derivs(n + 1);
  for (int j = 0; j <= n; ++j) {
    derivs[j].push_back(L.c_[j]);
    for (int d = 1; d <= m; ++d) derivs[j].push_back(derivs[j].back().derivative());
  }
  std::vector<Series> c(m + n + 1);
  for (int i = 0; i <= m; ++i)
    for (int t = 0; t <= i; ++t) {
      Rational b = binomial(i, t);
      for (int j = 0; j <= n; ++j) c[t + j] += (M.c_[i] * derivs[j][i - t]) * b;
    }
  return SeriesOperator(std::move(c));
}

Series SeriesOperator::apply(const Series& f) const {
  Series acc, d = f;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) d = d.derivative();
    acc += c_[k] * d;
  }
  return acc;
}

std::string SeriesOperator::str() const {
  std::ostringstream os;
  for (size_t k = c_.size(); k-- > 0;) {
    os << "(" << c_[k].str() << ")*D^" << k;
    if (k) os << " + ";
  }
  return os.str();
}

bool agree_to(const SeriesOperator& a, const SeriesOperator& b, int K, int* bad_k, int* bad_n) {
  size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (size_t k = 0; k < n; ++k) {
    Series x = a.coeff(static_cast<int>(k)), y = b.coeff(static_cast<int>(k));
    int m = first_mismatch(x, y, K);
    if (m < K) {
      if (bad_k) *bad_k = static_cast<int>(k);
      if (bad_n) *bad_n = m;
      return false;
    }
  }
  return true;
}

}  // namespace schwarz
