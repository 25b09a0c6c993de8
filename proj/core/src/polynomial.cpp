#include "schwarz/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace schwarz {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Polynomial Polynomial::monomial(const Rational& c, int k) {
  Polynomial p;
  if (c == 0) return p;
  p.c_.assign(k + 1, Rational(0));
  p.c_[k] = c;
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

int Polynomial::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return static_cast<int>(i);
  return -1;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Rational Polynomial::eval(const Rational& x) const {
  Rational r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Polynomial Polynomial::compose(const Polynomial& g) const {
  Polynomial r;
  for (size_t i = c_.size(); i-- > 0;) {
    r *= g;
    r += Polynomial(c_[i]);
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  Rational inv = 1 / lc();
  r *= inv;
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1), b = *this;
  while (k) {
    if (k & 1) result *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return result;
}

Rational Polynomial::content() const {
  if (is_zero()) return 0;
  Integer g = 0, l = 1;
  for (const auto& c : c_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return r;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  r *= 1 / content();
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Multiply over Z with a common denominator per factor.
  Integer da = 1, db = 1;
  for (const auto& c : a.c_) mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : b.c_) mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ia(a.c_.size()), ib(b.c_.size());
  for (size_t i = 0; i < ia.size(); ++i) ia[i] = a.c_[i].get_num() * (da / a.c_[i].get_den());
  for (size_t i = 0; i < ib.size(); ++i) ib[i] = b.c_[i].get_num() * (db / b.c_[i].get_den());
  std::vector<Integer> ir(ia.size() + ib.size() - 1, 0);
  for (size_t i = 0; i < ia.size(); ++i) {
    if (ia[i] == 0) continue;
    for (size_t j = 0; j < ib.size(); ++j)
      mpz_addmul(ir[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
  }
  Integer den = da * db;
  std::vector<Rational> r(ir.size());
  for (size_t i = 0; i < ir.size(); ++i) {
    r[i] = Rational(ir[i], den);
    r[i].canonicalize();
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (i == 0 || !unit) {
      os << to_string(a);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  std::vector<Rational> q(a.degree() - db + 1);
  Rational inv = 1 / b.lc();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational t = r[k + db] * inv;
    q[k] = t;
    if (sgn(t) == 0) continue;
    for (int j = 0; j <= db; ++j) r[k + j] -= t * b.coeffs()[j];
  }
  r.resize(db);
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

std::vector<Integer> to_primitive_integer(const Polynomial& p) {
  std::vector<Integer> out;
  if (p.is_zero()) return out;
  Rational c = p.content();
  out.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) {
    Rational t = x / c;
    out.push_back(t.get_num());
  }
  return out;
}

namespace {

using IVec = std::vector<Integer>;

void itrim(IVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void make_primitive(IVec& v) {
  Integer g = 0;
  for (const auto& c : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder of a by b (deg a >= deg b).
IVec prem(IVec a, const IVec& b) {
  int db = static_cast<int>(b.size()) - 1;
  const Integer& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    Integer la = a.back();
    Integer g;
    mpz_gcd(g.get_mpz_t(), la.get_mpz_t(), lb.get_mpz_t());
    Integer ma = lb / g, mb = la / g;
    for (auto& c : a) c *= ma;
    for (int j = 0; j <= db; ++j) a[da - db + j] -= mb * b[j];
    itrim(a);
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  IVec x = to_primitive_integer(a), y = to_primitive_integer(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return Polynomial(1);
    IVec r = prem(x, y);
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rational> c(x.size());
  for (size_t i = 0; i < x.size(); ++i) c[i] = Rational(x[i]);
  return Polynomial(std::move(c)).monic();
}

}  // namespace schwarz
