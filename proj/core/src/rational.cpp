#include "schwarz/rational.hpp"

#include <stdexcept>

namespace schwarz {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  auto check_int = [](std::string_view t) {
    size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view n = s.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!check_int(n) || !check_int(d) || d[0] == '-' || d[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  std::string ns(n);
  if (ns[0] == '+') ns.erase(0, 1);
  Integer num(ns), den{std::string(d)};
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

static bool integer_root(const Integer& a, unsigned long q, Integer& out) {
  if (a < 0) {
    if (q % 2 == 0) return false;
    Integer pos = -a;
    if (!integer_root(pos, q, out)) return false;
    out = -out;
    return true;
  }
  return mpz_root(out.get_mpz_t(), a.get_mpz_t(), q) != 0;
}

bool rational_root(const Rational& r, unsigned long q, Rational& out) {
  Integer n, d;
  if (!integer_root(r.get_num(), q, n) || !integer_root(r.get_den(), q, d)) return false;
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

Rational binomial(long n, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace schwarz
