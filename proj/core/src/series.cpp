#include "schwarz/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace schwarz {

namespace {

int clamp_order(long long o) {
  if (o >= Series::kExact / 2) return Series::kExact;
  return static_cast<int>(o);
}

}  // namespace

Series::Series(int val, std::vector<Rational> coeffs, int order)
    : val_(val), order_(clamp_order(order)), c_(std::move(coeffs)) {
  normalize();
}

void Series::normalize() {
  if (order_ >= kExact / 2) order_ = kExact;
  // drop coefficients at or beyond the order
  if (!c_.empty()) {
    long long keep = static_cast<long long>(order_) - val_;
    if (keep < static_cast<long long>(c_.size())) c_.resize(std::max<long long>(0, keep));
  }
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  size_t lead = 0;
  while (lead < c_.size() && sgn(c_[lead]) == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = order_;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
}

Series Series::from_polynomial(const Polynomial& p, int order) {
  return Series(0, p.coeffs(), order);
}

Rational Series::coeff(int n) const {
  if (n >= order_) throw std::out_of_range("series coefficient x^" + std::to_string(n) +
                                           " beyond truncation order " + std::to_string(order_));
  if (n < val_) return 0;
  size_t i = static_cast<size_t>(n - val_);
  return i < c_.size() ? c_[i] : Rational(0);
}

std::vector<Rational> Series::coeffs(int from, int to) const {
  std::vector<Rational> out;
  for (int n = from; n < to; ++n) out.push_back(coeff(n));
  return out;
}

Series Series::truncate(int order) const {
  if (order >= order_) return *this;
  return Series(val_, c_, order);
}

Series Series::derivative() const {
  if (is_zero()) return Series(is_exact() ? kExact : order_ - 1, {}, is_exact() ? kExact : order_ - 1);
  std::vector<Rational> d(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * (val_ + static_cast<long>(i));
  return Series(val_ - 1, std::move(d), is_exact() ? kExact : order_ - 1);
}

Series Series::shift(int k) const {
  if (is_zero()) return is_exact() ? *this : Series(order_ + k, {}, order_ + k);
  return Series(val_ + k, c_, is_exact() ? kExact : order_ + k);
}

Series& Series::operator+=(const Series& o) {
  int order = std::min(order_, o.order_);
  if (o.is_zero()) {
    *this = truncate(order);
    return *this;
  }
  if (is_zero()) {
    *this = o.truncate(order);
    return *this;
  }
  int val = std::min(val_, o.val_);
  long long top = std::max<long long>(static_cast<long long>(val_) + c_.size(),
                                      static_cast<long long>(o.val_) + o.c_.size());
  top = std::min<long long>(top, order);
  std::vector<Rational> r(std::max<long long>(0, top - val));
  for (size_t i = 0; i < c_.size() && val_ + static_cast<long long>(i) < top; ++i) r[val_ - val + i] += c_[i];
  for (size_t i = 0; i < o.c_.size() && o.val_ + static_cast<long long>(i) < top; ++i)
    r[o.val_ - val + i] += o.c_[i];
  *this = Series(val, std::move(r), order);
  return *this;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    int o = is_exact() ? kExact : order_;
    *this = Series(o, {}, o);
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

Series& Series::operator*=(const Series& o) {
  *this = *this * o;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  long long ra = a.precision(), rb = b.precision();
  long long r = std::min(ra, rb);
  if (a.is_zero() || b.is_zero()) {
    // zero times something: order = val_a + val_b + min precision
    long long va = a.is_zero() ? a.order_ : a.val_;
    long long vb = b.is_zero() ? b.order_ : b.val_;
    if (a.is_zero() && a.is_exact()) return Series();
    if (b.is_zero() && b.is_exact()) return Series();
    long long o;
    if (a.is_zero() && b.is_zero()) o = va + vb;
    else if (a.is_zero()) o = va + b.val_;
    else o = vb + a.val_;
    int oc = clamp_order(o);
    return Series(oc, {}, oc);
  }
  long long val = static_cast<long long>(a.val_) + b.val_;
  long long order = val + r;
  size_t n = a.c_.size() + b.c_.size() - 1;
  if (static_cast<long long>(n) > r) n = static_cast<size_t>(r);
  // integer kernel with common denominators
  Integer da = 1, db = 1;
  for (const auto& c : a.c_) mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : b.c_) mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), c.get_den_mpz_t());
  size_t na = std::min(a.c_.size(), n), nb = std::min(b.c_.size(), n);
  std::vector<Integer> ia(na), ib(nb);
  for (size_t i = 0; i < na; ++i) ia[i] = a.c_[i].get_num() * (da / a.c_[i].get_den());
  for (size_t i = 0; i < nb; ++i) ib[i] = b.c_[i].get_num() * (db / b.c_[i].get_den());
  std::vector<Integer> ir(n, 0);
  for (size_t i = 0; i < na; ++i) {
    if (ia[i] == 0) continue;
    size_t lim = std::min(nb, n - i);
    for (size_t j = 0; j < lim; ++j) mpz_addmul(ir[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
  }
  Integer den = da * db;
  std::vector<Rational> rc(n);
  for (size_t i = 0; i < n; ++i) {
    rc[i] = Rational(ir[i], den);
    rc[i].canonicalize();
  }
  return Series(static_cast<int>(val), std::move(rc), clamp_order(order));
}

Series Series::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of a series that vanishes to its order");
  if (is_exact()) {
    if (c_.size() == 1) return Series(-val_, {1 / c_[0]}, kExact);
    throw std::domain_error("inverse of an exact non-monomial series needs a finite order");
  }
  int r = order_ - val_;
  std::vector<Rational> inv(r);
  Rational i0 = 1 / c_[0];
  inv[0] = i0;
  for (int n = 1; n < r; ++n) {
    Rational s = 0;
    int lim = std::min<int>(n, static_cast<int>(c_.size()) - 1);
    for (int k = 1; k <= lim; ++k) s += c_[k] * inv[n - k];
    inv[n] = -s * i0;
  }
  return Series(-val_, std::move(inv), -val_ + r);
}

Series Series::pow_int(long k) const {
  if (k < 0) return inverse().pow_int(-k);
  Series result = Series::constant(1), b = *this;
  while (k) {
    if (k & 1) result = result * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return result;
}

Series Series::compose(const Series& g) const {
  if (g.is_zero() || g.val_ < 1)
    throw std::domain_error("series composition needs val(g) >= 1");
  if (is_zero()) {
    if (is_exact()) return Series();
    long long o = static_cast<long long>(g.val_) * order_;
    return Series(clamp_order(o), {}, clamp_order(o));
  }
  // f = x^vf * phi, phi(g) by Horner, then times g^vf.
  Series acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * g;
    acc += Series::constant(c_[i]);
  }
  if (!is_exact()) {
    long long cap = static_cast<long long>(g.val_) * (order_ - val_);
    acc = acc.truncate(clamp_order(cap));
  }
  if (val_ != 0) acc = acc * g.pow_int(val_);
  return acc;
}

Series Series::reverse() const {
  if (is_zero() || val_ != 1) throw std::domain_error("series reversion needs valuation 1");
  if (is_exact() && c_.size() == 1) return Series(1, {1 / c_[0]}, kExact);
  if (is_exact()) throw std::domain_error("reversion of an exact series needs a finite order");
  int K = order_;
  // h = x / f, [x^n] g = (1/n) [x^(n-1)] h^n
  Series h = shift(-1).inverse();
  std::vector<Rational> g(K - 1);
  Series hp = Series::constant(1);
  for (int n = 1; n < K; ++n) {
    hp = hp * h;
    g[n - 1] = hp.coeff(n - 1) / n;
  }
  return Series(1, std::move(g), K);
}

Series Series::scaled_argument(const Rational& a) const {
  Series r = *this;
  Rational p = rat_pow(a, val_);
  for (auto& c : r.c_) {
    c *= p;
    p *= a;
  }
  return r;
}

std::string Series::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    long e = val_ + static_cast<long>(i);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (e == 0 || a != 1) os << to_string(a) << (e != 0 ? "*" : "");
    if (e != 0) os << var << (e != 1 ? "^" + std::to_string(e) : "");
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    os << "O(" << var << "^" << order_ << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

bool agree_to(const Series& a, const Series& b, int K) {
  return first_mismatch(a, b, K) == K;
}

int first_mismatch(const Series& a, const Series& b, int K) {
  if (a.order() < K || b.order() < K)
    throw std::out_of_range("series not known to the requested order " + std::to_string(K));
  int lo = std::min(a.val(), b.val());
  for (int n = lo; n < K; ++n)
    if (a.coeff(n) != b.coeff(n)) return n;
  return K;
}

Series exp(const Series& f) {
  if (f.is_exact() && !f.is_zero()) throw std::domain_error("exp of an exact series needs a finite order");
  if (f.val() < 1) {
    if (f.is_zero()) return Series::constant(1, f.order());
    throw std::domain_error("exp needs a series without constant term, found x^" + std::to_string(f.val()) +
                            " coefficient " + to_string(f.coeff(f.val())));
  }
  int K = f.order();
  if (f.is_exact()) return Series::constant(1);
  std::vector<Rational> e(K);
  e[0] = 1;
  for (int n = 1; n < K; ++n) {
    Rational s = 0;
    for (int k = f.val(); k <= n; ++k) s += k * f.coeff(k) * e[n - k];
    e[n] = s / n;
  }
  return Series(0, std::move(e), K);
}

Series log(const Series& f) {
  if (f.is_zero() || f.val() != 0 || f.coeff(0) != 1)
    throw std::domain_error("log needs a series with constant term 1" +
                            (f.is_zero() ? std::string() : ", found leading term " + to_string(f.coeff(f.val())) +
                                                               "*x^" + std::to_string(f.val())));
  if (f.is_exact() && f.raw().size() == 1) return Series();
  if (f.is_exact()) throw std::domain_error("log of an exact series needs a finite order");
  auto r = integrate(f.derivative() / f);
  return r.series;
}

Series pow(const Series& f, const Rational& e) {
  if (f.is_zero()) throw std::domain_error("power of a series that vanishes to its order");
  Rational ve = e * f.val();
  if (ve.get_den() != 1)
    throw std::domain_error("power " + to_string(e) + " of a series with valuation " + std::to_string(f.val()) +
                            " is not a Laurent series");
  Rational c0 = f.coeff(f.val());
  Rational root;
  unsigned long q = e.get_den().get_ui();
  if (!rational_root(c0, q, root))
    throw std::domain_error("leading coefficient " + to_string(c0) + " has no rational " + std::to_string(q) +
                            "-th root");
  Rational u0 = rat_pow(root, e.get_num().get_si());
  if (f.is_exact() && f.raw().size() == 1) return Series(static_cast<int>(ve.get_num().get_si()), {u0}, Series::kExact);
  if (f.is_exact()) throw std::domain_error("power of an exact series needs a finite order");
  int r = f.precision();
  const auto& phi = f.raw();
  std::vector<Rational> u(r);
  u[0] = u0;
  for (int n = 1; n < r; ++n) {
    Rational s = 0;
    int lim = std::min<int>(n, static_cast<int>(phi.size()) - 1);
    for (int k = 1; k <= lim; ++k) s += ((e + 1) * k - n) * phi[k] * u[n - k];
    u[n] = s / (n * phi[0]);
  }
  int v = static_cast<int>(ve.get_num().get_si());
  return Series(v, std::move(u), v + r);
}

Integral integrate(const Series& f) {
  Integral out;
  out.log_coeff = 0;
  if (f.is_zero()) {
    int o = f.is_exact() ? Series::kExact : f.order() + 1;
    out.series = Series(o, {}, o);
    return out;
  }
  std::vector<Rational> c(f.raw().size());
  for (size_t i = 0; i < c.size(); ++i) {
    long n = f.val() + static_cast<long>(i);
    if (n == -1) {
      out.log_coeff = f.raw()[i];
      continue;
    }
    c[i] = f.raw()[i] / (n + 1);
  }
  out.series = Series(f.val() + 1, std::move(c), f.is_exact() ? Series::kExact : f.order() + 1);
  return out;
}

Series laurent(const RatFunc& f, int order) {
  if (f.is_zero()) return Series::zero(order);
  int vn = f.num().valuation(), vd = f.den().valuation();
  int v = vn - vd;
  if (f.is_polynomial()) return Series::from_polynomial(f.num() * (1 / f.den().lc()), order).truncate(order);
  int r = order - v;  // relative precision needed
  if (r <= 0) return Series(order, {}, order);
  // num / den with both shifted to nonzero constant term
  std::vector<Rational> n(f.num().coeffs().begin() + vn, f.num().coeffs().end());
  std::vector<Rational> d(f.den().coeffs().begin() + vd, f.den().coeffs().end());
  std::vector<Rational> q(r);
  Rational inv = 1 / d[0];
  for (int k = 0; k < r; ++k) {
    Rational s = k < static_cast<int>(n.size()) ? n[k] : Rational(0);
    int lim = std::min<int>(k, static_cast<int>(d.size()) - 1);
    for (int j = 1; j <= lim; ++j) s -= d[j] * q[k - j];
    q[k] = s * inv;
  }
  return Series(v, std::move(q), order);
}

Series ratfunc_at_series(const RatFunc& f, const Series& g) {
  // Sum of powers rather than Horner: keeps the relative precision of g.
  int top = std::max(f.num().degree(), f.den().degree());
  std::vector<Series> gp{Series::constant(1)};
  for (int i = 1; i <= top; ++i) gp.push_back(gp.back() * g);
  auto eval = [&](const Polynomial& p) {
    Series acc;
    for (size_t i = 0; i < p.coeffs().size(); ++i)
      if (sgn(p.coeffs()[i]) != 0) acc += gp[i] * p.coeffs()[i];
    return acc;
  };
  Series n = eval(f.num());
  if (f.is_polynomial()) return n * (1 / f.den().lc());
  Series d = eval(f.den());
  if (d.is_zero()) throw std::domain_error("denominator vanishes identically to the working order");
  return n * d.inverse();
}

Series hadamard(const Series& f, const Series& g) {
  int order = std::min(f.order(), g.order());
  int lo = std::max(f.val(), g.val());
  std::vector<Rational> c;
  if (!f.is_zero() && !g.is_zero()) {
    int hi = std::min<long long>(order, std::min<long long>(static_cast<long long>(f.val()) + f.raw().size(),
                                                            static_cast<long long>(g.val()) + g.raw().size()));
    for (int n = lo; n < hi; ++n) c.push_back(f.coeff(n) * g.coeff(n));
  }
  return Series(lo, std::move(c), order);
}

Series hypergeometric_2f1(const Rational& a, const Rational& b, const Rational& c, int order) {
  std::vector<Rational> t(std::max(order, 0));
  if (order > 0) t[0] = 1;
  for (int n = 1; n < order; ++n) t[n] = t[n - 1] * (a + n - 1) * (b + n - 1) / ((c + n - 1) * n);
  return Series(0, std::move(t), order);
}

}  // namespace schwarz
