#include "schwarz/bivariate.hpp"

#include <sstream>
#include <stdexcept>

#include "schwarz/linalg.hpp"

namespace schwarz {

Bivariate::Bivariate(std::vector<std::vector<Rational>> c) : c_(std::move(c)) { trim(); }

Bivariate Bivariate::from_terms(const std::vector<Term>& terms) {
  std::vector<std::vector<Rational>> c;
  for (const auto& t : terms) {
    if (t.i >= static_cast<int>(c.size())) c.resize(t.i + 1);
    auto& row = c[t.i];
    if (t.j >= static_cast<int>(row.size())) row.resize(t.j + 1);
    row[t.j] += t.coeff;
  }
  return Bivariate(std::move(c));
}

void Bivariate::trim() {
  for (auto& row : c_)
    while (!row.empty() && sgn(row.back()) == 0) row.pop_back();
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

int Bivariate::degree_y() const {
  int d = -1;
  for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

Rational Bivariate::coeff(int i, int j) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  if (j < 0 || j >= static_cast<int>(c_[i].size())) return 0;
  return c_[i][j];
}

size_t Bivariate::term_count() const {
  size_t n = 0;
  for (const auto& row : c_)
    for (const auto& x : row)
      if (sgn(x) != 0) ++n;
  return n;
}

Rational Bivariate::eval(const Rational& x, const Rational& y) const {
  return eval_x(x).eval(y);
}

Polynomial Bivariate::eval_x(const Rational& x) const {
  std::vector<Rational> out(std::max(0, degree_y() + 1));
  Rational xp = 1;
  for (const auto& row : c_) {
    for (size_t j = 0; j < row.size(); ++j) out[j] += row[j] * xp;
    xp *= x;
  }
  return Polynomial(std::move(out));
}

Polynomial Bivariate::eval_y(const Rational& y) const {
  std::vector<Rational> out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) out[i] = Polynomial(c_[i]).eval(y);
  return Polynomial(std::move(out));
}

Bivariate Bivariate::swap_vars() const {
  std::vector<Term> t;
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < c_[i].size(); ++j)
      if (sgn(c_[i][j]) != 0) t.push_back({c_[i][j], static_cast<int>(j), static_cast<int>(i)});
  return from_terms(t);
}

Polynomial Bivariate::cleared_composition(const RatFunc& f, const RatFunc& g) const {
  if (is_zero()) return {};
  int dx = degree_x(), dy = degree_y();
  std::vector<Polynomial> P(dx + 1), Q(dy + 1);
  // P[i] = N1^i D1^(dx-i), Q[j] = N2^j D2^(dy-j)
  {
    std::vector<Polynomial> np(dx + 1), dp(dx + 1);
    np[0] = dp[0] = Polynomial(1);
    for (int i = 1; i <= dx; ++i) {
      np[i] = np[i - 1] * f.num();
      dp[i] = dp[i - 1] * f.den();
    }
    for (int i = 0; i <= dx; ++i) P[i] = np[i] * dp[dx - i];
  }
  {
    std::vector<Polynomial> np(dy + 1), dp(dy + 1);
    np[0] = dp[0] = Polynomial(1);
    for (int j = 1; j <= dy; ++j) {
      np[j] = np[j - 1] * g.num();
      dp[j] = dp[j - 1] * g.den();
    }
    for (int j = 0; j <= dy; ++j) Q[j] = np[j] * dp[dy - j];
  }
  Polynomial total;
  for (int j = 0; j <= dy; ++j) {
    Polynomial inner;
    for (int i = 0; i <= dx; ++i) {
      Rational c = coeff(i, j);
      if (sgn(c) != 0) inner += c * P[i];
    }
    if (!inner.is_zero()) total += inner * Q[j];
  }
  return total;
}

Bivariate Bivariate::content_normalized() const {
  if (is_zero()) return *this;
  Integer g = 0, l = 1;
  for (const auto& row : c_)
    for (const auto& x : row) {
      if (sgn(x) == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
  Rational scale(l, g);
  scale.canonicalize();
  bool flip = false;
  for (const auto& row : c_) {
    bool found = false;
    for (const auto& x : row)
      if (sgn(x) != 0) {
        flip = sgn(x) < 0;
        found = true;
        break;
      }
    if (found) break;
  }
  if (flip) scale = -scale;
  auto c = c_;
  for (auto& row : c)
    for (auto& x : row) x *= scale;
  return Bivariate(std::move(c));
}

std::string Bivariate::str(const std::string& x, const std::string& y) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < c_[i].size(); ++j) {
      const Rational& c = c_[i][j];
      if (sgn(c) == 0) continue;
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      first = false;
      Rational a = abs(c);
      bool mono = i > 0 || j > 0;
      if (!mono || a != 1) os << to_string(a) << (mono ? "*" : "");
      if (i > 0) os << x << (i > 1 ? "^" + std::to_string(i) : "");
      if (i > 0 && j > 0) os << "*";
      if (j > 0) os << y << (j > 1 ? "^" + std::to_string(j) : "");
    }
  return os.str();
}

Rational sylvester_resultant(const Polynomial& f, int df, const Polynomial& g, int dg) {
  int n = df + dg;
  if (n == 0) return 1;
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
  for (int r = 0; r < dg; ++r)
    for (int k = 0; k <= df; ++k) M[r][r + k] = f.coeff(df - k);
  for (int r = 0; r < df; ++r)
    for (int k = 0; k <= dg; ++k) M[dg + r][r + k] = g.coeff(dg - k);
  return determinant(std::move(M));
}

Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  Polynomial p;
  for (size_t i = n; i-- > 0;) {
    p = p * Polynomial(std::vector<Rational>{-xs[i], Rational(1)});
    p += Polynomial(dd[i]);
  }
  return p;
}

Bivariate resultant_in_second_var(const Bivariate& P, const Bivariate& Q) {
  if (P.is_zero() || Q.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  int mP = P.degree_y();  // degree in B
  int mQ = Q.degree_x();  // degree in B
  if (mP < 1 || mQ < 1) throw std::invalid_argument("resultant variable does not occur");
  int dA = P.degree_x() * mQ;
  int dC = Q.degree_y() * mP;
  std::vector<Rational> as(dA + 1), cs(dC + 1);
  for (int i = 0; i <= dA; ++i) as[i] = i;
  for (int j = 0; j <= dC; ++j) cs[j] = j;
  // rows[i] = resultant polynomial in C at A = as[i]
  std::vector<Polynomial> at_a(dA + 1);
  for (int i = 0; i <= dA; ++i) {
    Polynomial pb = P.eval_x(as[i]);
    std::vector<Rational> vals(dC + 1);
    for (int j = 0; j <= dC; ++j) {
      Polynomial qb = Q.eval_y(cs[j]);
      vals[j] = sylvester_resultant(pb, mP, qb, mQ);
    }
    at_a[i] = interpolate(cs, vals);
  }
  std::vector<std::vector<Rational>> c(dA + 1, std::vector<Rational>(dC + 1));
  for (int j = 0; j <= dC; ++j) {
    std::vector<Rational> vals(dA + 1);
    for (int i = 0; i <= dA; ++i) vals[i] = at_a[i].coeff(j);
    Polynomial pa = interpolate(as, vals);
    for (int i = 0; i <= dA; ++i) c[i][j] = pa.coeff(i);
  }
  Bivariate r(std::move(c));
  if (r.is_zero()) return r;
  return r.content_normalized();
}

}  // namespace schwarz
