#include "schwarz/schwarzian.hpp"

#include <stdexcept>

namespace schwarz {

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Series truncated(const Series& y, int rel) { return y.is_exact() ? y.truncate(y.val() + rel) : y; }

// coefficient of x^k, zero below the valuation
Rational coeff_or_zero(const Series& s, int k) { return k < s.val() ? Rational(0) : s.coeff(k); }

}  // namespace

Series schwarzian_derivative(const Series& y) {
  Series d1 = y.derivative();
  if (d1.is_zero()) throw std::domain_error("Schwarzian derivative of a constant");
  Series inv = d1.inverse();
  Series r = y.derivative().derivative() * inv;
  return y.derivative().derivative().derivative() * inv - Rational(3, 2) * r * r;
}

RatFunc schwarzian_derivative(const RatFunc& y) {
  RatFunc d1 = y.derivative();
  if (d1.is_zero()) throw std::domain_error("Schwarzian derivative of a constant");
  RatFunc d2 = d1.derivative();
  RatFunc r = d2 / d1;
  return d2.derivative() / d1 - RatFunc(Rational(3, 2)) * r * r;
}

RatFunc w_function(const DiffOperator& L) {
  int N = L.order();
  if (N < 2) throw std::invalid_argument("w_function needs order >= 2");
  DiffOperator M = L.normalized();
  const RatFunc& p = M.coeff(N - 1);
  const RatFunc& q = M.coeff(N - 2);
  Rational a(6, (N + 1) * N), b(6, (N + 1) * N * N), c(12, (N + 1) * N * (N - 1));
  a.canonicalize();
  b.canonicalize();
  c.canonicalize();
  return RatFunc(a) * p.derivative() + RatFunc(b) * p * p - RatFunc(c) * q;
}

Series schwarzian_residual(const RatFunc& W, const Series& y0, int order) {
  Series y = truncated(y0, order);
  if (y.val() < 1) throw std::invalid_argument("schwarzian_residual needs val(y) >= 1");
  Series d1 = y.derivative();
  Series r = schwarzian_derivative(y) - ratfunc_at_series(W, y) * d1 * d1;
  return r + laurent(W, r.order());
}

RatFunc schwarzian_residual(const RatFunc& W, const RatFunc& y) {
  RatFunc d1 = y.derivative();
  return W - W.compose(y) * d1 * d1 + schwarzian_derivative(y);
}

Gauge pullback_gauge(const DiffOperator& L, const RatFunc& y) {
  DiffOperator M = L.normalized();
  int N = M.order();
  RatFunc wl = -M.coeff(N - 1);  // w'/w
  RatFunc d1 = y.derivative();
  Rational h(-(N - 1), 2);
  h.canonicalize();
  return {RatFunc(h) * d1.derivative() / d1 + RatFunc(Rational(1, N)) * (wl - wl.compose(y) * d1)};
}

bool PullbackReport::holds() const { return first_mismatch() < 0; }

int PullbackReport::first_mismatch() const {
  for (size_t k = 0; k < coefficient_match.size(); ++k)
    if (!coefficient_match[k]) return static_cast<int>(k);
  return -1;
}

PullbackReport pullback_symmetry_check(const DiffOperator& L, const RatFunc& y) {
  DiffOperator M = L.normalized();
  PullbackReport rep;
  rep.conjugated = op_conjugate(M, pullback_gauge(M, y));
  rep.pulled = op_pullback(M, y);
  int N = std::max(rep.conjugated.order(), rep.pulled.order());
  for (int k = 0; k <= N; ++k) rep.coefficient_match.push_back(rep.conjugated.coeff(k) == rep.pulled.coeff(k));
  rep.residual = schwarzian_residual(w_function(M), y);
  return rep;
}

SolutionFamily solve_schwarzian_series(const RatFunc& W, int n, const Rational& a_n, int K,
                                       const std::map<int, Rational>& resonant_values) {
  if (n < 1) throw std::invalid_argument("solve_schwarzian_series needs n >= 1");
  if (sgn(a_n) == 0) throw std::invalid_argument("solve_schwarzian_series needs a_n != 0");
  if (K < 1) throw std::invalid_argument("solve_schwarzian_series needs K >= 1");
  Series lw = laurent(W, 1);
  if (!lw.is_zero() && lw.val() < -2)
    throw std::invalid_argument("W has a pole of order " + std::to_string(-lw.val()) + " at 0; at most 2 is supported");
  Rational w2 = coeff_or_zero(lw, -2);

  SolutionFamily fam;
  fam.n = n;
  fam.a_n = a_n;
  // x^-2 balance: (1 - n^2)(w_-2 + 1/2)
  if (sgn((1 - n * n) * (w2 + Rational(1, 2))) != 0) {
    fam.inconsistent_at = 0;
    fam.y = Series(n, {a_n}, n + 1);
    return fam;
  }
  std::vector<Rational> c{a_n};
  auto residual_at = [&](int k) {
    Series y(n, c, n + k + 1);
    return coeff_or_zero(schwarzian_residual(W, y), k - 2);
  };
  for (int k = 1; k < K; ++k) {
    c.push_back(0);
    Rational r0 = residual_at(k);
    c.back() = a_n;
    Rational alpha = residual_at(k) - r0;  // per unit of c_k
    if (sgn(alpha) != 0) {
      c.back() = -r0 / alpha * a_n;
    } else if (sgn(r0) == 0) {
      fam.resonances.push_back(k);
      auto it = resonant_values.find(k);
      c.back() = it == resonant_values.end() ? Rational(0) : it->second * a_n;
    } else {
      c.pop_back();
      fam.inconsistent_at = k;
      break;
    }
  }
  fam.y = Series(n, c, n + static_cast<int>(c.size()));
  return fam;
}

PremodularResult premodular_test(const RatFunc& W, int head_terms) {
  PremodularResult res;
  Series lw = laurent(W, head_terms - 2);
  res.pole_order = lw.is_zero() ? 0 : std::max(0, -lw.val());
  int lo = std::min(-2, lw.is_zero() ? -2 : lw.val());
  for (int k = lo; k < head_terms - 2; ++k) res.head.push_back(coeff_or_zero(lw, k));
  Series t = lw + Series::monomial(Rational(1, 2), -2);
  res.pass = t.is_zero() || t.val() >= -1;
  return res;
}

DiffOperator f_equation(const RatFunc& W) {
  return DiffOperator(std::vector<RatFunc>{-W.derivative(), RatFunc(-2) * W, RatFunc(), RatFunc(1)});
}

DiffOperator f_equation_factor(const RatFunc& W) {
  return DiffOperator(std::vector<RatFunc>{RatFunc(Rational(-1, 2)) * W, RatFunc(), RatFunc(1)});
}

Series w_from_f(const Series& F, const Rational& lambda) {
  if (F.is_zero()) throw std::invalid_argument("w_from_f needs F != 0");
  Series inv = F.inverse();
  Series l = F.derivative() * inv;
  return F.derivative().derivative() * inv - Rational(1, 2) * l * l + lambda * inv * inv;
}

Series casimir_residual(const Series& F, const Rational& lambda, const RatFunc& W) {
  Series d = F.derivative();
  Series r = F * d.derivative() - Rational(1, 2) * d * d + Series::constant(lambda);
  Series F2 = F * F;
  return r - F2 * laurent(W, F2.order());
}

// --- EpsSeries ---

EpsSeries EpsSeries::derivative() const {
  std::vector<Series> r;
  for (const auto& s : c_) r.push_back(s.derivative());
  return EpsSeries(std::move(r));
}

EpsSeries operator+(const EpsSeries& a, const EpsSeries& b) {
  int d = std::min(a.degree(), b.degree());
  std::vector<Series> r;
  for (int j = 0; j <= d; ++j) r.push_back(a[j] + b[j]);
  return EpsSeries(std::move(r));
}

EpsSeries operator-(const EpsSeries& a, const EpsSeries& b) {
  int d = std::min(a.degree(), b.degree());
  std::vector<Series> r;
  for (int j = 0; j <= d; ++j) r.push_back(a[j] - b[j]);
  return EpsSeries(std::move(r));
}

EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
  int d = std::min(a.degree(), b.degree());
  std::vector<Series> r(d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j)
      if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] += a[i] * b[j];
  return EpsSeries(std::move(r));
}

EpsSeries operator*(const Rational& c, const EpsSeries& a) {
  std::vector<Series> r;
  for (const auto& s : a.coeffs()) r.push_back(c * s);
  return EpsSeries(std::move(r));
}

EpsSeries EpsSeries::inverse() const {
  if (c_.empty()) throw std::domain_error("inverse of an empty eps-series");
  Series b0 = c_[0].inverse();
  std::vector<Series> b{b0};
  for (int j = 1; j <= degree(); ++j) {
    Series s;
    for (int i = 1; i <= j; ++i)
      if (!c_[i].is_zero() && !b[j - i].is_zero()) s += c_[i] * b[j - i];
    b.push_back(-(b0 * s));
  }
  return EpsSeries(std::move(b));
}

EpsSeries EpsSeries::substitute_into(const Series& f) const {
  std::vector<Series> hc(c_);
  hc[0] = Series();
  EpsSeries h(std::move(hc));
  std::vector<Series> one(c_.size());
  one[0] = Series::constant(1);
  EpsSeries hp(std::move(one));
  std::vector<Series> f0(c_.size());
  f0[0] = f;
  EpsSeries acc(std::move(f0));
  Series fd = f;
  for (int m = 1; m <= degree(); ++m) {
    hp = hp * h;
    fd = fd.derivative();
    std::vector<Series> fm(c_.size());
    fm[0] = fd;
    acc = acc + (1 / factorial(m)) * (EpsSeries(std::move(fm)) * hp);
  }
  return acc;
}

EpsSeries EpsSeries::substitute_into(const RatFunc& f, int order) const {
  return substitute_into(laurent(f, order));
}

bool EpsSeries::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

// --- one-parameter family ---

OneParamFamily one_param_family(const Series& F, int eps_degree) {
  if (F.is_zero() || F.val() != 1) throw std::invalid_argument("one_param_family needs val(F) = 1");
  OneParamFamily fam;
  fam.F = F;
  fam.Q.push_back(Series::x());
  fam.Q.push_back(F);
  for (int n = 2; n <= eps_degree; ++n) fam.Q.push_back(F * fam.Q.back().derivative());
  return fam;
}

EpsSeries OneParamFamily::y() const {
  std::vector<Series> c{Series::x()};
  for (size_t n = 1; n < Q.size(); ++n) c.push_back((1 / factorial(static_cast<int>(n))) * Q[n]);
  return EpsSeries(std::move(c));
}

Series OneParamFamily::at(const Rational& eps) const {
  Series acc = Series::x();
  Rational e = 1;
  for (size_t n = 1; n < Q.size(); ++n) {
    e *= eps;
    acc += (e / factorial(static_cast<int>(n))) * Q[n];
  }
  return acc;
}

namespace {
EpsSeries lift(const Series& s, int degree) {
  std::vector<Series> c(degree + 1);
  c[0] = s;
  return EpsSeries(std::move(c));
}
}  // namespace

EpsSeries OneParamFamily::functional_residual() const {
  EpsSeries Y = y();
  return lift(F, Y.degree()) * Y.derivative() - Y.substitute_into(F);
}

EpsSeries OneParamFamily::schwarzian_residual(const RatFunc& W) const {
  EpsSeries Y = y();
  int deg = Y.degree();
  int K = F.order();
  EpsSeries Y1 = Y.derivative(), Y2 = Y1.derivative(), Y3 = Y2.derivative();
  EpsSeries inv = Y1.inverse();
  EpsSeries r = Y2 * inv;
  EpsSeries S = Y3 * inv - Rational(3, 2) * (r * r);
  return lift(laurent(W, K), deg) - Y.substitute_into(W, K) * Y1 * Y1 + S;
}

// --- mirror maps ---

MirrorMaps mirror_maps(const Series& F) {
  if (F.is_zero() || F.val() != 1 || F.coeff(1) != 1)
    throw std::invalid_argument("mirror_maps needs F = x + O(x^2)");
  MirrorMaps m;
  m.F = F;
  m.theta = integrate(F.inverse());
  m.Q = Series::x() * exp(m.theta.series);
  m.P = m.Q.reverse();
  return m;
}

Series MirrorMaps::y(const Rational& a, int n) const { return P.compose(a * Q.pow_int(n)); }

Series MirrorMaps::pfunc_residual() const { return Series::x() * P.derivative() - F.compose(P); }

Series composition_law_check(const RatFunc& W, int n, int m, const Rational& a_n, const Rational& a_m, int K) {
  Rational a_nm = a_n * rat_pow(a_m, n);
  auto yn = solve_schwarzian_series(W, n, a_n, K);
  auto ym = solve_schwarzian_series(W, m, a_m, K);
  auto ynm = solve_schwarzian_series(W, n * m, a_nm, K);
  if (!yn.consistent() || !ym.consistent() || !ynm.consistent())
    throw std::domain_error("composition_law_check: a family is inconsistent");
  return yn.y.compose(ym.y) - ynm.y;
}

// --- rank two ---

RatFunc PowerProduct::log_derivative() const {
  RatFunc r;
  for (const auto& [f, e] : factors) r += RatFunc(e) * RatFunc(f.derivative()) / RatFunc(f);
  return r;
}

RatFunc ranktwo_w(const RatFunc& A_R) { return A_R.derivative() + RatFunc(Rational(1, 2)) * A_R * A_R; }

Series ranktwo_residual(const RatFunc& A_R, const Series& y0, int order) {
  Series y = truncated(y0, order);
  Series d1 = y.derivative();
  Series r = d1.derivative() - ratfunc_at_series(A_R, y) * d1 * d1;
  return r + laurent(A_R, r.order() + 1) * d1;
}

Series solve_ranktwo(const PowerProduct& w, int n, const Rational& a_n, int K) {
  if (n < 1 || sgn(a_n) == 0) throw std::invalid_argument("solve_ranktwo needs n >= 1 and a_n != 0");
  // split w = x^J * prod g^e with g(0) != 0; solutions a_n x^n + ... need J = -1
  Rational J = 0;
  std::vector<std::pair<Polynomial, Rational>> units;
  for (const auto& [f, e] : w.factors) {
    int j = f.valuation();
    J += e * j;
    units.emplace_back(Polynomial(std::vector<Rational>(f.coeffs().begin() + j, f.coeffs().end())), e);
  }
  if (J != -1) throw std::invalid_argument("solve_ranktwo needs w ~ 1/x at 0 (A_R with residue 1)");
  // y = x^n u; then u'/u = n (U - 1)/x with U = prod (g(x)/g(y))^e, U(0) = 1
  Series u(0, {a_n}, 1);
  while (u.order() < K) {
    Series y = u.shift(n);
    Series U = Series::constant(1);
    for (const auto& [g, e] : units) {
      if (g.is_constant()) continue;
      U *= pow(Series::from_polynomial(g) * ratfunc_at_series(RatFunc(g), y).inverse(), e);
    }
    Series I = integrate((n * (U - Series::constant(1))).shift(-1)).series;
    Series next = a_n * exp(I);
    if (next.order() <= u.order()) throw std::logic_error("solve_ranktwo: iteration does not gain precision");
    u = next.truncate(std::min(next.order(), K));
  }
  return u.shift(n);
}

FCheck ranktwo_f_check(const RatFunc& A_R, const Series& F) {
  if (F.is_zero() || F.val() != 1) throw std::invalid_argument("ranktwo_f_check needs val(F) = 1");
  FCheck r;
  Rational rm1 = coeff_or_zero(laurent(A_R, 0), -1);
  r.mu = F.coeff(1) * (rm1 - 1);
  int K = F.order();
  Series A = laurent(A_R, K);
  Series dA = laurent(A_R.derivative(), K);
  Series d1 = F.derivative();
  r.operator_residual = d1.derivative() - A * d1 - dA * F;
  Series inv = F.inverse();
  r.converse_residual = A - d1 * inv - r.mu * inv;
  r.w_residual = w_from_f(F, r.mu * r.mu / 2) - laurent(ranktwo_w(A_R), K);
  return r;
}

// --- Heun ---

DiffOperator heun_operator(const HeunParams& h) {
  Polynomial x = Polynomial::x();
  Polynomial den = x * Polynomial(std::vector<Rational>{-1, 1}) * Polynomial(std::vector<Rational>{-h.a, 1});
  Polynomial A(std::vector<Rational>{h.gamma * h.a, -((h.delta + h.gamma) * h.a + h.alpha - h.delta + h.beta + 1), h.alpha + h.beta + 1});
  Polynomial B(std::vector<Rational>{-h.q, h.alpha * h.beta});
  return DiffOperator(std::vector<RatFunc>{RatFunc(B, den), RatFunc(A, den), RatFunc(1)});
}

HeunReport heun_scan(const HeunParams& h) {
  HeunReport rep;
  rep.params = h;
  rep.degenerate = sgn(h.a) == 0 || h.a == 1;
  rep.W = w_function(heun_operator(h));
  Series lw = laurent(rep.W, 0);
  rep.head2 = coeff_or_zero(lw, -2);
  rep.head1 = coeff_or_zero(lw, -1);
  rep.premodular = premodular_test(rep.W).pass;
  if (!rep.degenerate) {
    Rational eps = h.alpha + h.beta + 1 - h.gamma - h.delta;
    // the double pole at each finite singularity fixes the residue up to e -> 2 - e
    RatFunc X = RatFunc::x();
    for (const Rational& u : {eps, Rational(2 - eps)})
      for (const Rational& v : {h.gamma, Rational(2 - h.gamma)})
        for (const Rational& w : {h.delta, Rational(2 - h.delta)}) {
          std::array<Rational, 3> t{u, v, w};
          bool seen = false;
          for (const auto& s : rep.factorizations) seen = seen || s == t;
          if (seen) continue;
          RatFunc AR = RatFunc(u) / (X - RatFunc(h.a)) + RatFunc(v) / X + RatFunc(w) / (X - RatFunc(1));
          if (ranktwo_w(AR) == rep.W) rep.factorizations.push_back(t);
        }
  }
  const std::pair<const char*, Rational> special[] = {
      {"alpha-gamma+1", h.alpha - h.gamma + 1}, {"beta-delta-1", h.beta - h.delta - 1},
      {"alpha-delta-gamma+2", h.alpha - h.delta - h.gamma + 2}, {"alpha-gamma-1", h.alpha - h.gamma - 1},
      {"alpha-delta-gamma", h.alpha - h.delta - h.gamma}, {"beta-delta+1", h.beta - h.delta + 1}};
  for (const auto& [name, value] : special)
    if (sgn(value) == 0) rep.special_conditions.emplace_back(name);
  return rep;
}

}  // namespace schwarz
