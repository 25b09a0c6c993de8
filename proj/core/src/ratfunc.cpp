#include "schwarz/ratfunc.hpp"

#include <stdexcept>

namespace schwarz {

RatFunc::RatFunc(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(num, den);
  if (g.degree() > 0) {
    num_ = exact_div(num, g);
    den_ = exact_div(den, g);
  } else {
    num_ = num;
    den_ = den;
  }
  Rational l = den_.lc();
  if (l != 1) {
    Rational inv = 1 / l;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.coeff(0);
}

RatFunc RatFunc::derivative() const {
  if (num_.is_zero()) return {};
  if (den_.is_constant()) return RatFunc(num_.derivative(), Polynomial(1), Raw{});
  // (n/d)' = (n' d - n d') / d^2, reduced using g = gcd(d, d').
  Polynomial dd = den_.derivative();
  Polynomial g = gcd(den_, dd);
  Polynomial d1 = exact_div(den_, g);
  Polynomial t = num_.derivative() * d1 - num_ * exact_div(dd, g);
  return RatFunc(t, d1 * den_);
}

RatFunc RatFunc::compose(const RatFunc& y) const {
  if (num_.is_zero()) return {};
  const Polynomial& u = y.num_;
  const Polynomial& v = y.den_;
  auto homog = [&](const Polynomial& p, int m) {
    // sum p_i u^i v^(m-i)
    Polynomial r;
    Polynomial upow(1);
    std::vector<Polynomial> vpow(m + 1);
    vpow[0] = Polynomial(1);
    for (int i = 1; i <= m; ++i) vpow[i] = vpow[i - 1] * v;
    for (int i = 0; i <= p.degree(); ++i) {
      if (sgn(p.coeffs()[i]) != 0) r += p.coeffs()[i] * (upow * vpow[m - i]);
      if (i < p.degree()) upow = upow * u;
    }
    return r;
  };
  int dn = num_.degree(), dd = den_.degree();
  Polynomial n = homog(num_, dn), d = homog(den_, dd);
  if (dd > dn)
    n = n * v.pow(dd - dn);
  else if (dn > dd)
    d = d * v.pow(dn - dd);
  return RatFunc(n, d);
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (sgn(d) == 0) throw std::domain_error("evaluation at a pole");
  return num_.eval(x) / d;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of the zero function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return RatFunc(1);
  if (num_.is_zero()) return {};
  return RatFunc(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), Raw{});
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.is_constant()) {
      num_ += o.num_;
      return *this;
    }
    return *this = RatFunc(num_ + o.num_, den_);
  }
  Polynomial g = gcd(den_, o.den_);
  if (g.degree() == 0) {
    Polynomial n = num_ * o.den_ + o.num_ * den_;
    if (n.is_zero()) return *this = RatFunc();
    *this = RatFunc(std::move(n), den_ * o.den_, Raw{});
    return *this;
  }
  Polynomial b1 = exact_div(den_, g), d1 = exact_div(o.den_, g);
  Polynomial t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = RatFunc();
  Polynomial h = gcd(t, g);
  if (h.degree() > 0) {
    t = exact_div(t, h);
    *this = RatFunc(std::move(t), b1 * exact_div(o.den_, h), Raw{});
  } else {
    *this = RatFunc(std::move(t), b1 * o.den_, Raw{});
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  Polynomial g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Polynomial a = g1.degree() > 0 ? exact_div(num_, g1) : num_;
  Polynomial d = g1.degree() > 0 ? exact_div(o.den_, g1) : o.den_;
  Polynomial c = g2.degree() > 0 ? exact_div(o.num_, g2) : o.num_;
  Polynomial b = g2.degree() > 0 ? exact_div(den_, g2) : den_;
  *this = RatFunc(a * c, b * d, Raw{});
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Raw{}); }

std::string RatFunc::str(const std::string& var) const {
  if (den_ == Polynomial(1)) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace schwarz
