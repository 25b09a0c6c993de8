#include "schwarz/casebook.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "schwarz/bivariate.hpp"
#include "schwarz/cy_conditions.hpp"
#include "schwarz/frobenius.hpp"
#include "schwarz/mirror_yukawa.hpp"
#include "schwarz/powers.hpp"
#include "schwarz/schwarzian.hpp"
#include "schwarz/serialize.hpp"

#ifndef SCHWARZ_DEFAULT_DATA_DIR
#define SCHWARZ_DEFAULT_DATA_DIR "data/cases"
#endif

namespace schwarz {

bool CaseReport::pass() const { return failed() == 0; }

size_t CaseReport::failed() const {
  size_t n = 0;
  for (const CaseCheck& c : checks) n += c.pass ? 0 : 1;
  return n;
}

namespace {

RatFunc X() { return RatFunc::x(); }
RatFunc C(const Rational& c) { return RatFunc(c); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

// One data file with its parameter bindings.
class Data {
 public:
  Data(const std::filesystem::path& dir, const std::string& file) : path_(dir / file) {
    j_ = read_json_file(path_);
    if (!j_.is_object()) fail("", "expected a JSON object");
    if (!j_.contains("paper_ref") || !j_["paper_ref"].is_string()) fail("paper_ref", "missing or not a string");
    vars_.emplace("x", X());
    try {
      vars_ = parameters_from_json(j_, vars_);
    } catch (const InputError& e) {
      throw InputError(path_.string() + ": " + e.what());
    }
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw InputError(path_.string() + ": " + (field.empty() ? "" : field + ": ") + what);
  }

  const json& at(const std::string& key) const {
    if (!j_.contains(key)) fail(key, "missing field");
    return j_[key];
  }
  bool has(const std::string& key) const { return j_.contains(key); }

  RatFunc f(const json& v, const std::string& field, const Bindings& extra = {}) const {
    Bindings b = vars_;
    for (const auto& [k, e] : extra) b[k] = e;
    try {
      return ratfunc_from_json(v, b);
    } catch (const ParseError& e) {
      fail(field, e.what());
    } catch (const InputError& e) {
      fail(field, e.what());
    }
  }
  RatFunc f(const std::string& key, const Bindings& extra = {}) const { return f(at(key), key, extra); }

  Rational c(const json& v, const std::string& field, const Bindings& extra = {}) const {
    RatFunc r = f(v, field, extra);
    if (!r.is_constant()) fail(field, "expected a constant, got " + r.str());
    return r.constant_value();
  }
  Rational c(const std::string& key, const Bindings& extra = {}) const { return c(at(key), key, extra); }

  std::vector<Rational> list(const std::string& key, const Bindings& extra = {}) const {
    const json& a = at(key);
    if (!a.is_array()) fail(key, "expected an array");
    std::vector<Rational> out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(c(a[i], key + "[" + std::to_string(i) + "]", extra));
    return out;
  }

  DiffOperator op(const std::string& key) const {
    try {
      return operator_from_json(at(key), vars_);
    } catch (const InputError& e) {
      fail(key, e.what());
    }
  }

  int integer(const std::string& key, int fallback) const {
    if (!j_.contains(key)) return fallback;
    if (!j_[key].is_number_integer()) fail(key, "expected an integer");
    return j_[key].get<int>();
  }

  // [[base, exponent], ...] as a series: integer exponents may use any base,
  // fractional ones need base(0) != 0 (the branch with value base(0)^e real
  // and positive is only defined for base(0) = 1, which the data respect).
  Series algebraic(const std::string& key, int K) const { return algebraic(at(key), key, K); }
  Series algebraic(const json& a, const std::string& key, int K) const {
    if (!a.is_array()) fail(key, "expected [[base, exponent], ...]");
    Series r = Series::constant(1);
    for (size_t i = 0; i < a.size(); ++i) {
      std::string field = key + "[" + std::to_string(i) + "]";
      if (!a[i].is_array() || a[i].size() != 2) fail(field, "expected [base, exponent]");
      RatFunc b = f(a[i][0], field);
      Rational e = c(a[i][1], field);
      if (is_integer(e)) {
        r *= laurent(b.pow(e.get_num().get_si()), K);
      } else {
        Series s = laurent(b, K);
        if (s.val() != 0 || s.coeff(0) != 1) fail(field, "fractional power needs base(0) = 1");
        r *= pow(s, e);
      }
    }
    return r;
  }

  Gauge gauge(const std::string& key) const {
    const json& a = at(key);
    Gauge g = Gauge::identity();
    for (size_t i = 0; i < a.size(); ++i) {
      std::string field = key + "[" + std::to_string(i) + "]";
      g = g * Gauge::power(f(a[i][0], field), c(a[i][1], field));
    }
    return g;
  }

  std::vector<Rational> hypergeometric(const std::string& key) const {
    std::vector<Rational> abc = list(key);
    if (abc.size() != 3) fail(key, "expected [a, b, c]");
    return abc;
  }

  const json& raw() const { return j_; }
  const Bindings& vars() const { return vars_; }

 private:
  std::filesystem::path path_;
  json j_;
  Bindings vars_;
};

std::string list_str(const std::vector<Rational>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

std::vector<Rational> coeffs_of(const Series& s, int from, int to) {
  std::vector<Rational> out;
  for (int n = from; n < to; ++n) out.push_back(n < s.order() ? s.coeff(n) : Rational(0));
  return out;
}

class Builder {
 public:
  explicit Builder(std::string name) { r_.case_name = std::move(name); }

  void add(std::string desc, std::string expected, std::string computed, bool pass) {
    r_.checks.push_back({std::move(desc), std::move(expected), std::move(computed), pass});
  }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }

  void same(std::string desc, const Rational& e, const Rational& c) {
    add(std::move(desc), to_string(e), to_string(c), e == c);
  }
  void same(std::string desc, const RatFunc& e, const RatFunc& c) {
    add(std::move(desc), e.str(), c.str(), e == c);
  }
  void same(std::string desc, const DiffOperator& e, const DiffOperator& c) {
    add(std::move(desc), e.str(), c.str(), e == c);
  }
  void same(std::string desc, const std::vector<Rational>& e, const std::vector<Rational>& c) {
    add(std::move(desc), list_str(e), list_str(c), e == c);
  }
  void truth(std::string desc, bool ok, std::string expected, std::string computed) {
    add(std::move(desc), std::move(expected), std::move(computed), ok);
  }

  // residual zero modulo x^K
  void zero(std::string desc, const Series& s, int K) {
    std::string exp = "0 mod x^" + std::to_string(K);
    if (s.order() < K) {
      add(std::move(desc), exp, "known only mod x^" + std::to_string(s.order()), false);
    } else if (!s.is_zero() && s.val() < K) {
      add(std::move(desc), exp, to_string(s.coeff(s.val())) + " x^" + std::to_string(s.val()) + " + ...", false);
    } else {
      add(std::move(desc), exp, exp, true);
    }
  }
  void zero(std::string desc, const RatFunc& f) { add(std::move(desc), "0", f.str(), f.is_zero()); }

  void agree(std::string desc, const Series& a, const Series& b, int K) {
    std::string exp = "agreement mod x^" + std::to_string(K);
    int known = std::min(a.order(), b.order());
    if (known < K) {
      add(std::move(desc), exp, "known only mod x^" + std::to_string(known), false);
      return;
    }
    int m = first_mismatch(a, b, K);
    if (m == K)
      add(std::move(desc), exp, exp, true);
    else
      add(std::move(desc), exp,
          "x^" + std::to_string(m) + ": " + to_string(a.coeff(m)) + " vs " + to_string(b.coeff(m)), false);
  }

  void agree(std::string desc, const SeriesOperator& a, const SeriesOperator& b, int K) {
    int bk = -1, bn = -1;
    bool ok = agree_to(a, b, K, &bk, &bn);
    std::string exp = "agreement mod x^" + std::to_string(K);
    add(std::move(desc), exp,
        ok ? exp : "D^" + std::to_string(bk) + " coefficient differs at x^" + std::to_string(bn), ok);
  }

  // printed coefficients c[0..] of x^from, x^(from+1), ...
  void coefficients(std::string desc, const std::vector<Rational>& printed, const Series& s, int from = 0) {
    int to = from + static_cast<int>(printed.size());
    if (s.order() < to) {
      add(std::move(desc), list_str(printed), "known only mod x^" + std::to_string(s.order()), false);
      return;
    }
    same(std::move(desc), printed, coeffs_of(s, from, to));
  }

  CaseReport done() { return std::move(r_); }

 private:
  CaseReport r_;
};

// Dense (A, B) polynomial from an expression in A and B.
Bivariate bivariate_from(const Data& d, const std::string& key, int degA, int degB) {
  std::vector<Rational> bs;
  std::vector<Polynomial> rows;
  for (int j = 0; j <= degB; ++j) {
    RatFunc r = d.f(key, {{"A", X()}, {"B", C(j)}});
    if (!r.is_polynomial() || r.num().degree() > degA) d.fail(key, "not a polynomial of the stated degree");
    bs.emplace_back(j);
    std::vector<Rational> c = r.num().coeffs();
    for (Rational& v : c) v /= r.den().coeff(0);
    rows.emplace_back(std::move(c));
  }
  std::vector<Bivariate::Term> terms;
  for (int i = 0; i <= degA; ++i) {
    std::vector<Rational> ys;
    for (const Polynomial& p : rows) ys.push_back(p.coeff(i));
    Polynomial inB = interpolate(bs, ys);
    for (int j = 0; j <= inB.degree(); ++j)
      if (inB.coeff(j) != 0) terms.push_back({inB.coeff(j), i, j});
  }
  return Bivariate::from_terms(terms);
}

SeriesOperator first_order(const Series& one, const Series& d) { return SeriesOperator({one, d}); }

// ---------------------------------------------------------------- modular-j

CaseReport modular_j(const std::filesystem::path& dir) {
  Builder b("modular-j");
  Data d(dir, "modular-j.json");
  RatFunc W = d.f("w");
  const json& fj = d.at("f");
  std::vector<Rational> abc;
  for (const json& e : fj.at("hypergeometric")) abc.push_back(d.c(e, "f.hypergeometric"));
  DiffOperator L = hypergeometric_operator(abc[0], abc[1], abc[2]);
  b.same("W of the 2F1([1/12, 5/12], [1]) operator", W, w_function(L));

  const int K = 30;
  Series h = hypergeometric_2f1(abc[0], abc[1], abc[2], K);
  Series F = d.algebraic(fj.at("prefactor"), "f.prefactor", K) * (fj.value("square", false) ? h * h : h);
  b.zero("F annihilated by D^3 - 2W D - W'", apply(f_equation(W), F), K - 5);
  Rational lambda = d.c("lambda");
  Series w = w_from_f(F, lambda);
  b.agree("W recovered from F with lambda = " + to_string(lambda), w, laurent(W, w.order()), w.order());
  b.zero("Casimir residual F F'' - F'^2/2 + lambda - F^2 W", casimir_residual(F, lambda, W), K - 5);

  MirrorMaps m = mirror_maps(F.truncate(12));
  Rational scale = d.c("mirror_scale");
  Series q = m.Q.scaled_argument(scale) * Rational(1 / scale);
  Series p = m.P.scaled_argument(scale) * Rational(1 / scale);
  b.coefficients("Q(1728x)/1728 coefficients of x^1..x^5", d.list("Q_coefficients"), q, 1);
  b.coefficients("P(1728x)/1728 coefficients of x^1..x^5", d.list("P_coefficients"), p, 1);
  b.agree("Q(P(x)) = x", m.Q.compose(m.P), Series::x(), 11);
  b.zero("x P' - F(P)", m.pfunc_residual(), 10);

  for (const json& aj : d.at("a1_samples")) {
    Rational a1 = d.c(aj, "a1_samples");
    SolutionFamily fam = solve_schwarzian_series(W, 1, a1, 8);
    Rational expect = d.c("y1_x2_coefficient", {{"a1", C(a1)}});
    b.same("y_1 x^2 coefficient at a_1 = " + to_string(a1), expect, fam.y.coeff(2));
    b.zero("Schwarzian residual of y_1 at a_1 = " + to_string(a1), schwarzian_residual(W, fam.y), 6);
  }

  std::vector<Rational> am = d.list("composition_parameters");
  int Kc = d.integer("composition_order", 8);
  for (const json& nm : d.at("composition_pairs")) {
    int n = nm.at(0).get<int>(), mm = nm.at(1).get<int>();
    Series diff = composition_law_check(W, n, mm, am[0], am[1], Kc);
    b.zero("composition y_" + std::to_string(n) + " o y_" + std::to_string(mm) + " = y_" + std::to_string(n * mm),
           diff, n * mm + Kc);
  }
  PremodularResult pm = premodular_test(W);
  b.truth("pre-modular Laurent head -1/(2x^2) + O(1/x)", pm.pass, "pass",
          std::string(pm.pass ? "pass" : "fail") + ", x^-2 coefficient " + to_string(pm.head.at(0)));
  return b.done();
}

// -------------------------------------------------------------- landen-chi2

CaseReport landen_chi2(const std::filesystem::path& dir) {
  Builder b("landen-chi2");
  Data d(dir, "landen-chi2.json");
  const Bindings k{{"k", X()}};
  const int K = d.integer("order", 20);
  std::vector<Rational> abc = d.hypergeometric("hypergeometric");
  RatFunc pre = d.f("prefactor");
  RatFunc arg = d.f("argument");

  // chi = prefactor * 2F1(arg): pullback, then gauge by 1/prefactor
  Gauge v = Gauge{pre.derivative() / pre}.inverse();
  DiffOperator Lchi = op_conjugate(op_pullback(hypergeometric_operator(abc[0], abc[1], abc[2]), arg), v);
  Series hk = hypergeometric_2f1(abc[0], abc[1], abc[2], K + 8).compose(laurent(arg, 2 * K + 16));
  Series chi = (laurent(pre, 2 * K + 8) * hk).truncate(K + 8);
  b.zero("chi annihilated by the gauged pullback operator", apply(Lchi, chi), K);

  RatFunc W = w_function(Lchi);
  b.same("W of the chi operator", d.f("w"), W);
  std::vector<Rational> head = d.list("w_head");
  b.coefficients("Laurent head of W from x^-2", head, laurent(W, 8), -2);
  PremodularResult pm = premodular_test(W);
  b.truth("pre-modular test fails", !pm.pass, "fail with x^-2 coefficient 15/2",
          std::string(pm.pass ? "pass" : "fail") + " with x^-2 coefficient " + to_string(pm.head.at(0)));
  SolutionFamily s2 = solve_schwarzian_series(W, 2, 1, 8);
  b.truth("no Schwarzian solution a_2 x^2 + ...", !s2.consistent(), "inconsistent",
          s2.consistent() ? "consistent" : "inconsistent at level " + std::to_string(*s2.inconsistent_at));

  // covariance under Landen, written in m with k = m^2
  Series m2 = Series::monomial(1, 2);
  Series landen = laurent(C(2) * X() / (C(1) + X() * X()), K + 8);
  Series G = chi.compose(landen);
  Series rhs = laurent(d.f("automat_factor", k).compose(X() * X()), K + 8) * chi.derivative().compose(m2);
  b.agree("chi(2 sqrt(k)/(1 + k)) = 4(1 + k)/k chi'(k) in m, k = m^2", G, rhs, K);

  RatFunc dcoef = d.f("automat2_derivative", k).compose(X() * X()) / (C(2) * X());
  RatFunc mult = d.f("automat2_multiplier", k).compose(X() * X());
  Series back = laurent(dcoef, K + 6) * G.derivative() + laurent(mult, K + 6) * G;
  b.agree("chi(k) = 1/4 (k(k-1) d/dk + (k^2+k+2)/(k+1)) chi(2 sqrt(k)/(1+k)) in m", chi.compose(m2), back, K);

  // descending Landen: (1 - r)/(1 + r), r = (1 - k^2)^(1/2)
  const int Kd = K + 8;
  Series r = pow(Series(0, {1, 0, -1}, Kd), Rational(1, 2));
  Series one = Series::constant(1);
  Series inv = (one - r) / (one + r);
  b.coefficients("inverse Landen series head", d.list("inverse_landen_head"), inv, 0);
  Series lhs3 = chi.compose(inv);
  Series c0 = (laurent(X() * X() - C(2), Kd) * r + Series::constant(2)) * laurent(C(1) / (C(4) * X() * X()), Kd);
  Series c1 = laurent((X() * X() - C(1)) / (C(4) * X()), Kd) * (one - r);
  Series rhs3 = c0 * chi + c1 * chi.derivative();
  b.agree("chi at the inverse Landen argument", lhs3, rhs3, K);
  return b.done();
}

// ---------------------------------------------------- avoiding-permutations

Series f_at(const std::vector<Rational>& abc, const RatFunc& y, int K) {
  Series g = laurent(y, K);
  return hypergeometric_2f1(abc[0], abc[1], abc[2], K).compose(g).truncate(K);
}

CaseReport avoiding_permutations(const std::filesystem::path& dir) {
  Builder b("avoiding-permutations");
  const RatFunc one(1);

  // operator, pullbacks and the gauge-mediated homomorphism
  Data d0(dir, "ap-operator.json");
  DiffOperator L2 = d0.op("operator");
  std::vector<Rational> abc = d0.hypergeometric("hypergeometric");
  b.same("L2 is the 2F1([-1/4, 3/4], [1]) operator", hypergeometric_operator(abc[0], abc[1], abc[2]), L2);
  RatFunc p1 = d0.f("p1"), p2 = d0.f("p2");
  RatFunc P1 = d0.f(d0.at("hauptmoduls").at("P1"), "hauptmoduls.P1");
  RatFunc P2 = d0.f(d0.at("hauptmoduls").at("P2"), "hauptmoduls.P2");
  b.same("p1(x) = P1(-27x)", p1, P1.compose(C(-27) * X()));
  b.same("p2(x) = P2(-243x)", p2, P2.compose(C(-243) * X()));
  b.same("p2(x) = p1(1/(9x))", p2, p1.compose(one / (C(9) * X())));
  b.same("P2(x) = P1(729/x)", P2, P1.compose(C(729) / X()));
  DiffOperator M1 = d0.op("M1"), L1 = d0.op("L1");
  Gauge alpha = d0.gauge("alpha");
  DiffOperator lhs = op_conjugate(op_pullback(L2, p1) * L1, alpha);
  DiffOperator rhs = M1 * op_pullback(L2, p2);
  b.same("(1/alpha) pullback(L2, p1) L1 alpha = M1 pullback(L2, p2)", rhs, lhs);
  const int K = 30;
  b.agree("the same identity as series operators", SeriesOperator::from(lhs, K + 4),
          SeriesOperator::from(rhs, K + 4), K);

  // modular curve
  Data dg(dir, "ap-gamma3.json");
  int dA = dg.at("degrees").at(0).get<int>(), dB = dg.at("degrees").at(1).get<int>();
  Bivariate G3 = bivariate_from(dg, "gamma3", dA, dB);
  b.truth("Gamma3 symmetric in A, B", G3 == G3.swap_vars(), "symmetric",
          G3 == G3.swap_vars() ? "symmetric" : "not symmetric");
  b.truth("Gamma3(p1, p2) = 0", G3.vanishes_on(p1, p2), "0", G3.cleared_composition(p1, p2).str("x"));

  // L1, L2 with square roots, H1, compatibility
  Data di(dir, "ap-identities.json");
  const int Ki = di.integer("order", 30);
  const int Kw = Ki + 8;
  const json& c1 = di.at("calL1");
  const json& c2 = di.at("calL2");
  SeriesOperator cL1 = first_order(di.algebraic(c1.at("one"), "calL1.one", Kw), di.algebraic(c1.at("D"), "calL1.D", Kw));
  SeriesOperator cL2 = first_order(di.algebraic(c2.at("one"), "calL2.one", Kw), di.algebraic(c2.at("D"), "calL2.D", Kw));
  RatFunc cf = di.f("compatibility_factor");
  // H1 is defined as the monic annihilator of 2F1(p1), i.e. the normalized pullback
  DiffOperator H1 = op_pullback(L2, p1), H1p = di.op("H1");
  DiffOperator H2 = op_pullback(L2, p2);
  b.same("H1 D^1 coefficient as printed", H1p.coeff(1), H1.coeff(1));
  bool printed_h1_fits = agree_to(cL1 * cL2, SeriesOperator::from(DiffOperator(one) + cf * H1p, Kw), Ki);
  if (H1.coeff(0) == -H1p.coeff(0) && !printed_h1_fits)
    b.note("the printed H1 has D^0 coefficient " + H1p.coeff(0).str() + "; the annihilator of 2F1(p1) has " +
           H1.coeff(0).str() + " (opposite sign), and only the latter satisfies calL1 calL2 = 1 - 64x^2/9 H1");
  else
    b.same("H1 D^0 coefficient as printed", H1p.coeff(0), H1.coeff(0));
  b.agree("calL1 calL2 = 1 - 64x^2/9 H1", cL1 * cL2, SeriesOperator::from(DiffOperator(one) + cf * H1, Kw), Ki);
  b.agree("calL2 calL1 = 1 - 64x^2/9 H2", cL2 * cL1, SeriesOperator::from(DiffOperator(one) + cf * H2, Kw), Ki);
  Series F1 = f_at(abc, p1, Kw), F2 = f_at(abc, p2, Kw);
  b.agree("2F1(p1) = calL1(2F1(p2))", F1, cL1.apply(F2), Ki);
  b.agree("2F1(p2) = calL2(2F1(p1))", F2, cL2.apply(F1), Ki);

  // Xi functions
  Data dx(dir, "ap-xi.json");
  Series Xi2 = dx.algebraic("xi2_prefactor", Kw) * F2;
  Series Xi1 = dx.algebraic("xi1_prefactor", Kw) * F1;
  b.coefficients("Xi2 integer series", dx.list("xi2_series"), Xi2, 0);
  DiffOperator cM1 = dx.op("M1"), cM2 = dx.op("M2"), cN1 = dx.op("N1"), Om2 = dx.op("Omega2");
  b.agree("Xi1 = M1(Xi2)", Xi1, apply(cM1, Xi2), Ki - 4);
  b.agree("Xi2 = M2(Xi1)", Xi2, apply(cM2, Xi1), Ki - 4);
  b.zero("Omega2 annihilates Xi2", apply(Om2, Xi2), Ki - 4);
  RatFunc invol = dx.f("involution");
  b.same("pullback(Omega2, 1/(9x)) M1 = N1 Omega2", cN1 * Om2, op_pullback(Om2, invol) * cM1);
  Rational sc = dx.c("involution_scale");
  b.same("M1 = 6561 pullback(M2, 1/(9x))", cM1, C(sc) * op_pullback_raw(cM2, invol));
  b.same("6561 M2 = pullback(M1, 1/(9x))", C(sc) * cM2, op_pullback_raw(cM1, invol));
  RatFunc cfx = dx.f("compatibility_factor");
  b.same("M2 M1 = 1 - 64x^2/9 Omega2", DiffOperator(one) + cfx * Om2, cM2 * cM1);
  DiffOperator Om1 = (one / cfx) * (cM1 * cM2 - DiffOperator(one));
  b.truth("(M1 M2 - 1)/(-64x^2/9) is monic of order 2", Om1.order() == 2 && Om1.is_monic(), "monic, order 2",
          Om1.str());
  b.zero("Omega1 annihilates Xi1", apply(Om1, Xi1), Ki - 8);

  // level 9
  Data d9(dir, "ap-level9.json");
  const int K9 = d9.integer("order", 30);
  RatFunc q1 = d9.f("q1"), q2 = d9.f("q2"), inv9 = d9.f("q_involution");
  b.same("q2 = q1(1/(2187x)) as printed", q2, q1.compose(inv9));
  DiffOperator hL1 = d9.op("hatL1"), hL2 = d9.op("hatL2"), hH1 = d9.op("hatH1");
  DiffOperator hH2 = op_pullback(L2, q2);
  b.same("hatH1 = normalized pullback(L2, q1)", op_pullback(L2, q1), hH1);
  RatFunc R12 = d9.f("R12");
  b.same("hatL1 hatL2 = 1 + R12 hatH1", DiffOperator(one) + R12 * hH1, hL1 * hL2);
  b.same("hatL2 hatL1 = 1 + R12 hatH2", DiffOperator(one) + R12 * hH2, hL2 * hL1);
  // involution: the constant is determined from the computation and compared with the printed one
  Rational s9 = d9.c("involution_scale");
  DiffOperator pb2 = op_pullback_raw(hL2, inv9), pb1 = op_pullback_raw(hL1, inv9);
  Rational k9 = hL1.coeff(1).is_zero() ? Rational(0) : (hL1.coeff(1) / pb2.coeff(1)).is_constant()
                                                              ? (hL1.coeff(1) / pb2.coeff(1)).constant_value()
                                                              : Rational(0);
  b.truth("hatL1 = k pullback(hatL2, 1/(2187x)) for a constant k", sgn(k9) != 0 && hL1 == C(k9) * pb2,
          "constant k", sgn(k9) != 0 ? "k = " + to_string(k9) : "no constant ratio");
  b.same("pullback(hatL1, 1/(2187x)) = k hatL2 with the same k", C(k9) * hL2, pb1);
  if (sgn(k9) != 0 && !(C(s9) * hL1 == pb2))
    b.note("the printed involution reads " + to_string(s9) + " hatL1 = pullback(hatL2, 1/(2187x)); the operators as "
           "printed give hatL1 = " + to_string(k9) + " pullback(hatL2, 1/(2187x)), a constant factor " +
           to_string(Rational(s9 * k9)) + " apart (the M1/M2 involution with 6561 holds as printed)");
  Series Q1 = f_at(abc, q1, K9 + 4), Q2 = f_at(abc, q2, K9 + 4);
  b.agree("2F1(q1) = hatL1(2F1(q2))", Q1, apply(hL1, Q2), K9 - 2);
  b.agree("2F1(q2) = hatL2(2F1(q1))", Q2, apply(hL2, Q1), K9 - 2);
  RatFunc A = d9.f("A"), B = d9.f("B");
  b.same("q1 = p1(A)", q1, p1.compose(A));
  b.same("q2 = p1(B)", q2, p1.compose(B));
  b.same("q2 = p2(19683x^3/(1 - 81x + 2187x^2))", q2, p2.compose(d9.f("q2_via_p2")));
  Bivariate curve = bivariate_from(d9, "algcurve", 3, 3);
  b.truth("algebraic curve vanishes on (A, B)", curve.vanishes_on(A, B), "0",
          curve.cleared_composition(A, B).str("x"));
  Bivariate G9 = resultant_in_second_var(G3, G3);
  b.truth("Gamma9 = Res_B(Gamma3(A,B), Gamma3(B,C)) vanishes on (q1, q2)", G9.vanishes_on(q1, q2), "0",
          G9.cleared_composition(q1, q2).str("x"));
  b.note("Gamma9 has bidegree (" + std::to_string(G9.degree_x()) + ", " + std::to_string(G9.degree_y()) + ") and " +
         std::to_string(G9.term_count()) + " terms");

  // W of L2
  Data dw(dir, "ap-w.json");
  RatFunc WL2 = w_function(L2);
  b.coefficients("Laurent head of W(L2) from x^-2", dw.list("w_head"), laurent(WL2, 3), -2);
  RatFunc printed = dw.f("w_printed");
  if (!(printed == WL2))
    b.note("the printed closed form " + printed.str() + " does not match its own Laurent head; W(L2) = " +
           WL2.str());

  // modular form identity
  Data dm(dir, "ap-modularform.json");
  const int Km = dm.integer("order", 20);
  std::vector<Rational> jabc = dm.hypergeometric("hypergeometric");
  Series left = dm.algebraic("A1", Km) * f_at(jabc, dm.f("p1"), Km);
  Series right = dm.algebraic("A2", Km) * f_at(jabc, dm.f("p2"), Km);
  b.agree("A1 2F1(p1) = A2 2F1(p2)", left, right, Km);
  Series right_printed = dm.algebraic("A1", Km) * f_at(jabc, dm.f("p2"), Km);
  if (first_mismatch(left, right_printed, Km) < Km)
    b.note("with A1 on both sides, as printed, the identity fails at x^" +
           std::to_string(first_mismatch(left, right_printed, Km)) + "; A2 on the right is the consistent form");
  return b.done();
}

// --------------------------------------------------------- heun-premodular

CaseReport heun_premodular(const std::filesystem::path& dir) {
  Builder b("heun-premodular");
  Data d(dir, "heun-premodular.json");
  std::vector<Rational> uvw = d.list("aziz_uvw");
  for (const json& mj : d.at("aziz_M")) {
    Rational M = d.c(mj, "aziz_M");
    HeunParams h{M, (M + 1) / 4, Rational(1, 2), 1, Rational(3, 2), Rational(1, 2)};
    HeunReport rep = heun_scan(h);
    std::string tag = " (a = " + to_string(M) + ")";
    bool found = false, branch = true;
    for (const auto& t : rep.factorizations) {
      found = found || (t[0] == uvw[0] && t[1] == uvw[1] && t[2] == uvw[2]);
      branch = branch && (h.gamma - t[1]) * (h.gamma - 2 + t[1]) == 0;
    }
    b.truth("factorization u = v = w = 1/2" + tag, found, "found", found ? "found" : "absent");
    b.truth("every factorization has (gamma - v)(gamma - 2 + v) = 0" + tag, branch, "true", branch ? "true" : "false");
    std::string conds;
    for (const auto& c : rep.special_conditions) conds += (conds.empty() ? "" : ", ") + c;
    b.truth("special condition alpha - gamma + 1 = 0" + tag,
            rep.special_conditions == std::vector<std::string>{"alpha-gamma+1"}, "alpha-gamma+1", conds);
    b.truth("not pre-modular (gamma = 3/2)" + tag, !rep.premodular, "fail", rep.premodular ? "pass" : "fail");
  }

  const json& g1 = d.at("gamma_one");
  auto par = [&](const char* k) { return d.c(g1.at(k), std::string("gamma_one.") + k); };
  HeunParams base{par("a"), par("q"), par("alpha"), par("beta"), par("gamma"), par("delta")};
  std::vector<Rational> gammas{base.gamma};
  for (const Rational& g : d.list("gamma_other")) gammas.push_back(g);
  for (const Rational& g : gammas) {
    HeunParams h = base;
    h.gamma = g;
    RatFunc W = w_function(heun_operator(h));
    PremodularResult pm = premodular_test(W);
    bool expect = g == 1;
    std::string tag = " (gamma = " + to_string(g) + ")";
    b.truth("pre-modular iff gamma = 1" + tag, pm.pass == expect, expect ? "pass" : "fail",
            std::string(pm.pass ? "pass" : "fail") + ", x^-2 coefficient " + to_string(pm.head.at(0)));
    b.same("x^-2 coefficient gamma(gamma - 2)/2" + tag, g * (g - 2) / 2, pm.head.at(0));
    if (expect) {
      Rational v1 = pm.head.at(1);
      b.same("x^-1 coefficient" + tag,
             -(h.a * h.delta * h.gamma + h.alpha * h.gamma + h.beta * h.gamma - h.delta * h.gamma - h.gamma * h.gamma +
               h.gamma - 2 * h.q) / h.a,
             v1);
    }
    SolutionFamily s2 = solve_schwarzian_series(W, 2, 1, 8);
    b.truth("n = 2 solution exists iff pre-modular" + tag, s2.consistent() == pm.pass,
            pm.pass ? "consistent" : "inconsistent",
            s2.consistent() ? "consistent" : "inconsistent at level " + std::to_string(*s2.inconsistent_at));
  }

  // the gamma = 1, q = alpha = 0 family and its Abel-integral pullbacks
  const int K = d.integer("order", 8);
  for (const json& sj : d.at("abel_samples")) {
    Rational a = d.c(sj.at("a"), "abel_samples.a"), beta = d.c(sj.at("beta"), "abel_samples.beta"),
             delta = d.c(sj.at("delta"), "abel_samples.delta");
    std::string tag = " (a, beta, delta) = (" + to_string(a) + ", " + to_string(beta) + ", " + to_string(delta) + ")";
    Bindings pb{{"a", C(a)}, {"beta", C(beta)}, {"delta", C(delta)}};
    PowerProduct w{{{Polynomial::x(), -1},
                    {Polynomial(std::vector<Rational>{-1, 1}), -delta},
                    {Polynomial(std::vector<Rational>{-a, 1}), delta - beta}}};
    RatFunc AR = -w.log_derivative();
    b.same("A_R = 1/x + delta/(x-1) + (beta-delta)/(x-a)" + tag,
           C(1) / X() + C(delta) / (X() - C(1)) + C(beta - delta) / (X() - C(a)), AR);
    DiffOperator L2({RatFunc(), AR, C(1)});
    b.same("HeunG(a, 0, 0, beta, 1, delta) operator = (D + A_R) D" + tag, heun_operator({a, 0, 0, beta, 1, delta}), L2);
    RatFunc W = ranktwo_w(AR);
    b.truth("pre-modular" + tag, premodular_test(W).pass, "pass", premodular_test(W).pass ? "pass" : "fail");
    auto abel_ratio = [&](const Series& y) {
      // y' w(y)/w(x), each factor normalized to 1 at 0
      Series xs = Series::x(y.order()), one = Series::constant(1);
      Series r = y.derivative() * xs / y;
      r *= pow((one - y) / (one - xs), -delta);
      r *= pow((one - y * Rational(1 / a)) / (one - xs * Rational(1 / a)), delta - beta);
      return r;
    };
    for (const json& aj : d.at("a1_samples")) {
      Rational a1 = d.c(aj, "a1_samples");
      Series y1 = solve_ranktwo(w, 1, a1, K);
      Bindings vb = pb;
      vb["a1"] = C(a1);
      std::string t = tag + ", a_1 = " + to_string(a1);
      b.same("y_1 x^2 coefficient" + t, d.c("y1_x2", vb), y1.coeff(2));
      b.zero("rank-two residual of y_1" + t, ranktwo_residual(AR, y1), K - 1);
      b.zero("Schwarzian residual of y_1" + t, schwarzian_residual(W, y1), K - 2);
      b.agree("x y'/y = c_1 w(x)/w(y) with c_1 = 1" + t, abel_ratio(y1), Series::constant(1), K - 1);
    }
    for (const json& aj : d.at("a2_samples")) {
      Rational a2 = d.c(aj, "a2_samples");
      Series y2 = solve_ranktwo(w, 2, a2, K);
      Bindings vb = pb;
      vb["a2"] = C(a2);
      std::string t = tag + ", a_2 = " + to_string(a2);
      b.same("y_2 x^3 coefficient" + t, d.c("y2_x3", vb), y2.coeff(3));
      b.zero("rank-two residual of y_2" + t, ranktwo_residual(AR, y2), K - 1);
      b.agree("x y'/y = c_1 w(x)/w(y) with c_1 = 2" + t, abel_ratio(y2), Series::constant(2), K - 1);
    }
  }
  return b.done();
}

// ---------------------------------------------------------------- hadamard-cy

CaseReport hadamard_cy(const std::filesystem::path& dir) {
  Builder b("hadamard-cy");
  Data d(dir, "hadamard-cy.json");
  HadamardPair h = hadamard_pair(d.c("a"), d.c("b"));
  b.same("s = a(1-a) + b(1-b)", d.c("s_expected"), h.s);
  b.same("p = ab(1-a)(1-b)", d.c("p_expected"), h.p);
  Bindings sp{{"s", C(h.s)}, {"p", C(h.p)}};
  b.same("L4 D^3 coefficient P", d.f("P", sp), h.L4.coeff(3));
  b.same("L4 D^2 coefficient Q", d.f("Q", sp), h.L4.coeff(2));
  b.same("H4 D^3 coefficient P-hat", d.f("Phat", sp), h.H4.coeff(3));
  b.same("H4 D^2 coefficient Q-hat", d.f("Qhat", sp), h.H4.coeff(2));
  b.same("exterior square of L4 = 5F4 operator", h.L5, sym_or_ext_power(h.L4, PowerKind::ext2).op);
  b.zero("Calabi condition for L4", calabi_residual(h.L4).residual);
  b.zero("Calabi condition for H4", calabi_residual(h.H4).residual);
  Polynomial ind = indicial_polynomial(h.H4);
  b.truth("H4 indicial polynomial s^4 (MUM)", ind == Polynomial::monomial(1, 4), "s^4", ind.str("s"));

  const int K = d.integer("order", 8);
  MumData dl = mum_data(h.L4, K), dm = mum_data(h.H4, K);
  b.same("L4 local exponent at 0", Rational(1, 2), dl.exponent);
  b.coefficients("nome q_x(L4) through x^4", d.list("nome_L4", sp), dl.q_x);
  b.coefficients("nome q_x(H4) through x^4", d.list("nome_H4", sp), dm.q_x);
  b.same("q_x(H4) x^2 coefficient", Rational(28, 45), dm.q_x.coeff(2));

  YukawaRelationReport rel = yukawa_pullback_relation_check(h.L4, h.H4, h.y, h.v, K);
  b.same("pullback y = lambda x + ...: lambda", d.c("lambda"), rel.lambda);
  b.truth("(1/v) pullback(L4, y) v = H4", rel.precondition, "true", rel.precondition ? "true" : rel.detail);
  b.truth("q_x(H4) = q_x(L4)(y)/lambda", rel.nome, "true", rel.nome ? "true" : rel.detail);
  b.truth("K_x(H4) = K_x(L4)(y)", rel.yukawa_x, "true", rel.yukawa_x ? "true" : rel.detail);
  b.truth("K_q(H4)(q) = K_q(L4)(lambda q)", rel.yukawa_q, "true", rel.yukawa_q ? "true" : rel.detail);

  // printed Yukawa series, compared with the Frobenius-basis ones
  struct Y {
    const char* key;
    const char* what;
    const Series& s;
  } ys[] = {{"Kx_L4", "K_x(L4)", dl.K_x}, {"Kx_H4", "K_x(H4)", dm.K_x}, {"Kq_L4", "K_q(L4)", dl.K_q},
            {"Kq_H4", "K_q(H4)", dm.K_q}};
  bool squares = true;
  for (const Y& y : ys) {
    std::vector<Rational> pr = d.list(y.key, sp);
    b.coefficients(std::string("printed ") + y.what + " through order 3", pr, y.s);
    Series sq = y.s * y.s;
    squares = squares && coeffs_of(sq, 0, static_cast<int>(pr.size())) == pr;
  }
  if (squares)
    b.note("each printed Yukawa series equals the square of (q d/dq)^2 (y2/y0) through the printed order");

  for (const json& sj : d.at("residual_samples")) {
    Rational s = d.c(sj, "residual_samples");
    Bindings sb{{"s", C(s)}, {"p", C(0)}};
    DiffOperator L({RatFunc(), RatFunc(), d.f("Q", sb), d.f("P", sb), C(1)});
    DiffOperator M({RatFunc(), RatFunc(), d.f("Qhat", sb), d.f("Phat", sb), C(1)});
    b.zero("pair Schwarzian residual W(H) - W(L)(y) y'^2 + {y, x} at s = " + to_string(s),
           pair_schwarzian_residual(L, M, d.f("y")));
  }

  Gauge u = Gauge::power(X(), Rational(-1, 2)) * Gauge::power(C(1) - X(), Rational(-3, 4));
  DiffOperator M4 = op_conjugate(h.L4, u.inverse());
  b.same("conjugate by x^(-1/2)(1-x)^(-3/4): D^3 coefficient", d.f("P_YY", sp), M4.coeff(3));
  b.same("conjugate by x^(-1/2)(1-x)^(-3/4): D^2 coefficient", d.f("Q_YY", sp), M4.coeff(2));
  b.same("W unchanged by the conjugation", w_function(h.L4), w_function(M4));
  return b.done();
}

// ------------------------------------------------------------- gallery

CaseReport gallery_from_file(const std::filesystem::path& dir) {
  Data d(dir, "sym-power-gallery.json");
  CaseReport r = sym_power_gallery(d.f("p"), d.f("q"), d.f("A_R"), d.f("pullback"));
  r.notes.push_back("inputs: p = " + d.f("p").str() + ", q = " + d.f("q").str() + ", A_R = " + d.f("A_R").str());
  return r;
}

using CaseFn = CaseReport (*)(const std::filesystem::path&);

const std::map<std::string, CaseFn>& registry() {
  static const std::map<std::string, CaseFn> r{
      {"modular-j", modular_j},           {"landen-chi2", landen_chi2},
      {"avoiding-permutations", avoiding_permutations}, {"heun-premodular", heun_premodular},
      {"hadamard-cy", hadamard_cy},       {"sym-power-gallery", gallery_from_file}};
  return r;
}

}  // namespace

CaseReport sym_power_gallery(const RatFunc& p, const RatFunc& q, const RatFunc& A_R, const RatFunc& y) {
  Builder b("sym-power-gallery");
  const DiffOperator D = DiffOperator::D();
  DiffOperator L2({q, p, C(1)});
  DiffOperator L4 = L2 * L2;
  b.same("L2^2: D^3 coefficient 2p", C(2) * p, L4.coeff(3));
  b.same("L2^2: D^2 coefficient p^2 + 2q + 2p'", p * p + C(2) * q + C(2) * p.derivative(), L4.coeff(2));
  b.zero("Calabi condition for L2^2", calabi_residual(L4).residual);
  DiffOperator Dp = D + DiffOperator(p);
  PowerResult e2 = sym_or_ext_power(L4, PowerKind::ext2);
  b.same("Ext^2(L2^2) = (D + p) Sym^2(L2) (D + p)", (Dp * sym_power_order2(L2, 2) * Dp).normalized(), e2.op);
  b.same("W(L2^2) = W(L2)/5", w_function(L2) * C(Rational(1, 5)), w_function(L4));
  b.same("pullback of a product is the product of pullbacks", op_pullback_raw(L2, y) * op_pullback_raw(L2, y),
         op_pullback_raw(L4, y));

  DiffOperator L3 = sym_power_order2(L2, 2), S3 = sym_power_order2(L2, 3), S4 = sym_power_order2(L2, 4);
  b.zero("Sym^2(L2) is a symmetric square", symcy3_residual(L3).residual);
  b.zero("Calabi condition for Sym^3(L2)", calabi_residual(S3).residual);
  b.zero("s-condition for Sym^3(L2)", s_condition_residual(S3).residual);
  for (const ConditionReport& c : order5_residuals(S4)) b.zero("order-5 condition " + c.name + " for Sym^4(L2)", c.residual);
  SymPowerDetection det = detect_sym_power(S4, 5);
  b.truth("Sym^4(L2) detected as a symmetric power", det.is_sym_power, "true", det.is_sym_power ? "true" : "false");
  b.same("detected L2 rebuilds Sym^4", S4, det.rebuilt);

  // rank-two subcase W = A_R' + A_R^2/2
  RatFunc W = ranktwo_w(A_R);
  DiffOperator cL3 = f_equation(W);
  DiffOperator Dm = D - DiffOperator(A_R), Dplus = D + DiffOperator(A_R);
  DiffOperator LF = D * Dm;
  b.same("L_F = D^2 - A_R D - A_R' = D (D - A_R)", DiffOperator({-A_R.derivative(), -A_R, C(1)}), LF);
  b.same("D^3 - 2W D - W' = (D + A_R) D (D - A_R)", Dplus * D * Dm, cL3);
  b.same("D^3 - 2W D - W' = (D + A_R) L_F", Dplus * LF, cL3);
  DiffOperator half_p = D + DiffOperator(A_R * C(Rational(1, 2))), half_m = D - DiffOperator(A_R * C(Rational(1, 2)));
  DiffOperator cL2 = f_equation_factor(W);
  b.same("D^2 - W/2 = (D + A_R/2)(D - A_R/2)", half_p * half_m, cL2);
  b.same("D^2 - W/2 = w^(1/2) L_F w^(-1/2)", op_conjugate(LF, Gauge{A_R * C(Rational(1, 2))}), cL2);
  b.same("Sym^2(D^2 - W/2) = (D + A_R) D (D - A_R)", Dplus * D * Dm, sym_power_order2(cL2, 2));
  b.zero("1/w solves L_F", op_conjugate(LF, Gauge{A_R}).coeff(0));
  return b.done();
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"modular-j",       "landen-chi2", "avoiding-permutations",
                                              "heun-premodular", "hadamard-cy", "sym-power-gallery"};
  return names;
}

std::filesystem::path default_data_dir() {
  if (const char* e = std::getenv("SCHWARZ_DATA_DIR"); e && *e) return e;
  return SCHWARZ_DEFAULT_DATA_DIR;
}

CaseReport run_case(const std::string& name, const std::filesystem::path& data_dir) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const std::string& n : case_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown case '" + name + "' (known: " + known + ")");
  }
  return it->second(data_dir);
}

std::vector<CaseReport> run_cases(const std::vector<std::string>& names, const std::filesystem::path& data_dir,
                                  unsigned jobs) {
  for (const std::string& n : names)
    if (!registry().count(n)) run_case(n, data_dir);  // throws
  std::vector<CaseReport> out(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(names.size()));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < names.size();) {
      try {
        out[i] = run_case(names[i], data_dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

json to_json(const CaseReport& r) {
  json checks = json::array();
  for (const CaseCheck& c : r.checks)
    checks.push_back({{"description", c.description}, {"expected", c.expected}, {"computed", c.computed},
                      {"pass", c.pass}});
  return {{"case", r.case_name}, {"pass", r.pass()}, {"checks", checks}, {"notes", r.notes}};
}

}  // namespace schwarz
