#include <doctest.h>

#include <random>

#include "schwarz/cy_conditions.hpp"
#include "schwarz/mirror_yukawa.hpp"
#include "schwarz/powers.hpp"
#include "schwarz/schwarzian.hpp"
#include "support.hpp"

using namespace schwarz;
using namespace schwarz::testing;

namespace {

DiffOperator theta4() {
  DiffOperator t = DiffOperator::theta();
  return t * t * t * t;
}

// theta^4 - 5x(5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)
DiffOperator quintic() {
  DiffOperator t = DiffOperator::theta();
  auto f = [&](long k) { return R(5) * t + DiffOperator(R(k)); };
  return theta4() - R(5) * X() * (f(1) * f(2) * f(3) * f(4));
}

// theta^2 - x (alpha theta^2 + beta theta + gamma): MUM at 0 for any alpha, beta, gamma
DiffOperator mum2(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  DiffOperator t = DiffOperator::theta();
  return t * t - X() * (RatFunc(alpha) * t * t + RatFunc(beta) * t + DiffOperator(RatFunc(gamma)));
}

Series series_of(std::vector<Rational> c, int order) { return Series(0, std::move(c), order); }

// Nome and Yukawa polynomials in (s, p), as printed for the Appendix G pair.
struct Printed {
  Rational s, p;
  std::vector<Rational> nome_L4() const {
    return {0, 1, (2 * p - s + 1) / 2,
            (93 * p * p - 98 * p * s + 26 * s * s + 112 * p - 60 * s + 40) / 128,
            (27748 * p * p * p - 45289 * p * p * s + 24798 * p * s * s - 4554 * s * s * s + 55759 * p * p -
             61734 * p * s + 17190 * s * s + 43848 * p - 24516 * s + 13608) /
                62208};
  }
  std::vector<Rational> nome_H4() const {
    return {0, 1, -2 * (2 * p - s), (93 * p * p - 98 * p * s + 26 * s * s - 16 * p + 4 * s) / 8,
            -(27748 * p * p * p - 45289 * p * p * s + 24798 * p * s * s - 4554 * s * s * s + 9708 * p * s -
              12038 * p * p - 1764 * s * s + 1080 * p - 216 * s) /
                972};
  }
  std::vector<Rational> Kx_L4() const {
    return {1, -(5 * p + 1 - 2 * s), (825 * p * p - 638 * p * s + 120 * s * s + 244 * p - 80 * s) / 64,
            -(119240 * p * p * p - 133883 * p * p * s + 48642 * p * s * s - 5688 * s * s * s - 20346 * p * s +
              35609 * p * p + 2448 * s * s - 3420 * p + 1728 * s) /
                5184};
  }
  std::vector<Rational> Kx_H4() const {
    return {1, 4 * (5 * p - 2 * s + 1),
            (825 * p * p - 638 * p * s + 120 * s * s + 404 * p - 144 * s + 32) / 4,
            (119240 * p * p * p - 133883 * p * p * s + 48642 * p * s * s - 5688 * s * s * s - 72024 * p * s +
             102434 * p * p + 12168 * s * s + 21204 * p - 6696 * s + 972) /
                81};
  }
  std::vector<Rational> Kq_L4() const {
    return {1, -(5 * p - 2 * s + 1),
            (1145 * p * p - 926 * p * s + 184 * s * s + 468 * p - 176 * s + 32) / 64,
            -(571795 * p * p * p - 698524 * p * p * s + 280506 * p * s * s - 36972 * s * s * s +
              355447 * p * p - 273162 * p * s + 51390 * s * s + 54072 * p - 18900 * s + 1944) /
                10368};
  }
};

}  // namespace

TEST_CASE("theta^4 has trivial nome and Yukawa") {
  MumData m = mum_data(theta4(), 12);
  CHECK(agree_to(m.q_x, Series::x(), 12));
  CHECK(agree_to(m.K_q, Series::constant(1), 11));
  CHECK(agree_to(m.K_x, Series::constant(1), 11));
  CHECK(m.exponent == 0);
}

TEST_CASE("quintic Yukawa reproduces the classical instanton head") {
  MumData m = mum_data(quintic(), 6);
  CHECK(m.q_x.coeff(2) == 770);
  CHECK(m.q_x.coeff(3) == 1014275);
  CHECK(m.K_q.coeff(1) == 575);
  CHECK(m.K_q.coeff(2) == 975375);
  CHECK(m.K_q.coeff(3) == 1712915000);
}

TEST_CASE("non-MUM operators are rejected with the indicial polynomial") {
  DiffOperator t = DiffOperator::theta();
  DiffOperator L = t * t * (t - DiffOperator(R(1))) * (t - DiffOperator(R(2)));
  try {
    mum_data(L, 8);
    FAIL("expected NotMumError");
  } catch (const NotMumError& e) {
    CHECK(e.indicial().degree() == 4);
    CHECK(e.indicial().coeff(0) == 0);
  }
  CHECK_THROWS_AS(mum_data(t * t * t, 8), std::invalid_argument);
}

TEST_CASE("a repeated nonzero exponent is gauged away") {
  // x^(1/3) theta^4 x^(-1/3) has indicial polynomial (s - 1/3)^4
  DiffOperator L = op_conjugate(quintic(), Gauge{R(-1, 3) / X()});
  Rational r;
  mum_normalized(L, &r);
  CHECK(r == Q(1, 3));
  MumData a = mum_data(L, 8), b = mum_data(quintic(), 8);
  CHECK(agree_to(a.K_q, b.K_q, 7));
}

TEST_CASE("Sym^3 of a MUM order-2 operator has K_q = 1 to q^8") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int i = 0; i < 4; ++i) {
    Rational alpha(d(rng), 1 + (d(rng) + 6) % 4), beta(d(rng), 3), gamma(d(rng), 1 + (d(rng) + 6) % 5);
    DiffOperator L4 = sym_power_order2(mum2(alpha, beta, gamma).normalized(), 3);
    MumData m = mum_data(L4, 12);
    CHECK(agree_to(m.K_q, Series::constant(1), 9));
    CHECK(m.K_q.order() >= 9);
  }
  MumData m = mum_data(sym_power_order2(hypergeometric_operator(Q(1, 2), Q(1, 2), 1), 3), 12);
  CHECK(agree_to(m.K_q, Series::constant(1), 9));
}

TEST_CASE("Yukawa data invariants") {
  MumData m = mum_data(quintic(), 10);
  CHECK(m.K_q.coeff(0) == 1);
  int K = std::min(m.K_x.order(), 9);
  CHECK(agree_to(m.K_x, m.K_q.compose(m.q_x), K));
  SUBCASE("gauge conjugation does not change nome or Yukawa") {
    std::mt19937 rng(7);
    for (int i = 0; i < 3; ++i) {
      DiffOperator L = op_conjugate(quintic(), Gauge{random_coeff(rng)});
      MumData g = mum_data(L, 10);
      CHECK(agree_to(g.q_x, m.q_x, 10));
      CHECK(agree_to(g.K_q, m.K_q, 9));
    }
  }
}

TEST_CASE("pullback relations for nome and Yukawa") {
  DiffOperator L = quintic();
  SUBCASE("y = x/(1+x): Yukawa couplings coincide") {
    RatFunc y = X() / (X() + R(1));
    YukawaRelationReport rep = yukawa_pullback_relation_check(L, op_pullback(L, y), y, Gauge::identity(), 9);
    CHECK(rep.holds());
    CHECK(rep.lambda == 1);
    CHECK(rep.n == 1);
    CHECK(agree_to(mum_data(op_pullback(L, y), 9).K_q, mum_data(L, 9).K_q, 8));
  }
  SUBCASE("y = 3x") {
    RatFunc y = R(3) * X();
    YukawaRelationReport rep = yukawa_pullback_relation_check(L, op_pullback(L, y), y, Gauge::identity(), 9);
    CHECK(rep.holds());
    CHECK(rep.lambda == 3);
  }
  SUBCASE("y = x^2") {
    RatFunc y = X() * X();
    YukawaRelationReport rep = yukawa_pullback_relation_check(L, op_pullback(L, y), y, Gauge::identity(), 12);
    CHECK(rep.holds());
    CHECK(rep.n == 2);
  }
  SUBCASE("with a gauge") {
    RatFunc y = X() / (R(1) - R(2) * X());
    Gauge v{R(1) / (X() + R(2))};
    DiffOperator M = op_conjugate(op_pullback(L, y), v);
    CHECK(yukawa_pullback_relation_check(L, M, y, v, 9).holds());
  }
  SUBCASE("a failing precondition names the first coefficient") {
    RatFunc y = X() / (X() + R(1));
    YukawaRelationReport rep = yukawa_pullback_relation_check(L, L, y, Gauge::identity(), 9);
    CHECK_FALSE(rep.precondition);
    CHECK_FALSE(rep.holds());
    CHECK(rep.detail.find("precondition") != std::string::npos);
  }
}

TEST_CASE("pair Schwarzian residual") {
  std::mt19937 rng(3);
  SUBCASE("exact pullback gives zero") {
    for (int i = 0; i < 3; ++i) {
      DiffOperator L = random_monic(rng, 4);
      RatFunc y = X() * (R(1) + X()) / (R(2) - X());
      CHECK(pair_schwarzian_residual(L, op_pullback(L, y), y).is_zero());
      Series r = pair_schwarzian_residual(L, op_pullback(L, y), laurent(y, 20), 12);
      CHECK(r.order() >= 8);
      CHECK(agree_to(r, Series::zero(), 8));
    }
  }
  SUBCASE("y = x gives W(M) - W(L)") {
    DiffOperator L = random_monic(rng, 4), M = random_monic(rng, 4);
    CHECK(pair_schwarzian_residual(L, M, X()) == w_function(M) - w_function(L));
  }
}

TEST_CASE("ext2_square_root") {
  SUBCASE("recovers an operator from its exterior square") {
    DiffOperator L2 = hypergeometric_operator(Q(1, 6), Q(1, 3), 1);
    DiffOperator L4 = sym_power_order2(L2, 3);
    DiffOperator E = sym_or_ext_power(L4, PowerKind::ext2).op;
    CHECK(ext2_square_root(L4.coeff(3), L4.coeff(2), E) == L4);
  }
  SUBCASE("an incompatible target throws") {
    DiffOperator L4 = sym_power_order2(hypergeometric_operator(Q(1, 6), Q(1, 3), 1), 3);
    CHECK_THROWS_AS(ext2_square_root(L4.coeff(3), L4.coeff(2), hypergeometric_5f4_operator(Q(1, 3), Q(1, 5))),
                    std::domain_error);
  }
}

TEST_CASE("Hadamard pair at (a, b) = (1/3, 1/5)") {
  HadamardPair h = hadamard_pair(Q(1, 3), Q(1, 5));
  Printed pr{h.s, h.p};
  CHECK(h.s == Q(86, 225));
  CHECK(h.p == Q(8, 225));

  CHECK(sym_or_ext_power(h.L4, PowerKind::ext2).op == h.L5);
  CHECK(calabi_residual(h.L4).holds);
  CHECK(calabi_residual(h.H4).holds);
  CHECK(h.H4.coeff(3) == hadamard_pair_Phat(h.s));
  CHECK(h.H4.coeff(2) == hadamard_pair_Qhat(h.s));
  CHECK(indicial_polynomial(h.H4) == P({0, 0, 0, 0, 1}));

  MumData dl = mum_data(h.L4, 8), dm = mum_data(h.H4, 8);
  CHECK(dl.exponent == Q(1, 2));
  CHECK(agree_to(dl.q_x, series_of(pr.nome_L4(), 5), 5));
  CHECK(agree_to(dm.q_x, series_of(pr.nome_H4(), 5), 5));
  CHECK(dm.q_x.coeff(2) == Q(28, 45));

  YukawaRelationReport rep = yukawa_pullback_relation_check(h.L4, h.H4, h.y, h.v, 8);
  CHECK(rep.holds());
  CHECK(rep.lambda == -4);

  // The printed Yukawa series are the squares of the Frobenius ones, at every printed order.
  int k = 4;
  CHECK(agree_to(dl.K_q * dl.K_q, series_of(pr.Kq_L4(), k), k));
  CHECK(agree_to(dl.K_x * dl.K_x, series_of(pr.Kx_L4(), k), k));
  CHECK(agree_to(dm.K_x * dm.K_x, series_of(pr.Kx_H4(), k), k));
  CHECK(dm.K_x.coeff(1) == Q(62, 75));
  CHECK_FALSE(dm.K_x.coeff(1) == pr.Kx_H4()[1]);

  // not the annihilator of the literal Hadamard product of the two 2F1 factors
  int K = 20;
  Series g = Series::constant(1, K) / Series(0, {1, -1}, K);
  Series lit = hadamard(g * hypergeometric_2f1(h.a, 1 - h.a, 1, K), g * hypergeometric_2f1(h.b, 1 - h.b, 1, K));
  CHECK_FALSE(agree_to(apply(h.H4, lit), Series::zero(), 10));
}

TEST_CASE("printed pair data satisfy the pair Schwarzian equation for any s") {
  RatFunc y = R(-4) * X() / (R(1) - X()).pow(2);
  for (Rational s : {Q(86, 225), Q(7, 16), Q(47, 144), Q(0), Q(-3, 2)}) {
    DiffOperator L = op({RatFunc(), RatFunc(), hadamard_pair_Q(s), hadamard_pair_P(s), R(1)});
    DiffOperator M = op({RatFunc(), RatFunc(), hadamard_pair_Qhat(s), hadamard_pair_Phat(s), R(1)});
    CHECK(pair_schwarzian_residual(L, M, y).is_zero());
  }
  // a perturbed Q-hat breaks it
  RatFunc Qbad = hadamard_pair_Qhat(Q(1, 3)) + R(1) / X();
  DiffOperator L = op({RatFunc(), RatFunc(), hadamard_pair_Q(Q(1, 3)), hadamard_pair_P(Q(1, 3)), R(1)});
  DiffOperator M = op({RatFunc(), RatFunc(), Qbad, hadamard_pair_Phat(Q(1, 3)), R(1)});
  CHECK_FALSE(pair_schwarzian_residual(L, M, y).is_zero());
}

TEST_CASE("the conjugated top coefficients have the same W") {
  // u = x^(-1/2) (1 - x)^(-3/4) relates the printed pair (P, Q) and (P_YY, Q_YY)
  Rational s = Q(86, 225);
  RatFunc Pyy = R(2) * (R(3) - R(5) * X()) / (X() * (R(1) - X()));
  RatFunc Qyy = (R(99) * X() * X() - R(122) * X() + R(28)) / (R(4) * X() * X() * (X() - R(1)).pow(2)) +
                RatFunc(s) / (R(2) * X() * (X() - R(1)));
  HadamardPair h = hadamard_pair(Q(1, 3), Q(1, 5));
  Gauge u = Gauge::power(X(), Q(-1, 2)) * Gauge::power(R(1) - X(), Q(-3, 4));
  DiffOperator M4 = op_conjugate(h.L4, u.inverse());
  CHECK(M4.coeff(3) == Pyy);
  CHECK(M4.coeff(2) == Qyy);
  CHECK(w_function(M4) == w_function(h.L4));
}
