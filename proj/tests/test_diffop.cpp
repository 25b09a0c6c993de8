#include "doctest.h"

#include <random>

#include "schwarz/frobenius.hpp"
#include "schwarz/guess.hpp"
#include "schwarz/powers.hpp"

using namespace schwarz;

namespace {

RatFunc X() { return RatFunc::x(); }
RatFunc R(long n, long d = 1) { return RatFunc(make_rational(n, d)); }
Polynomial P(std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.emplace_back(v);
  return Polynomial(std::move(r));
}
DiffOperator op(std::vector<RatFunc> c) { return DiffOperator(std::move(c)); }

RatFunc random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  Polynomial n(std::vector<Rational>{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
  Polynomial den(std::vector<Rational>{Rational(2 + (d(rng) + 4) % 3), Rational(d(rng))});
  return RatFunc(n, den);
}

// Monic operator with polynomial-free denominators that do not vanish at 0.
DiffOperator random_monic(std::mt19937& rng, int N) {
  std::vector<RatFunc> c;
  for (int k = 0; k < N; ++k) c.push_back(random_coeff(rng));
  c.push_back(R(1));
  return op(c);
}

}  // namespace

TEST_CASE("composition and Leibniz") {
  DiffOperator D = DiffOperator::D();
  CHECK(D * D == DiffOperator::D_power(2));
  // (D + a)(D + c) = D^2 + (a + c) D + (c' + a c)
  RatFunc AR = RatFunc(P({3, -5}), P({0, 4, -4}));
  RatFunc C = RatFunc(P({1, 2}), P({1, 0, 1}));
  DiffOperator lhs = op({AR + C, R(1)}) * op({C, R(1)});
  RatFunc B = C.derivative() + C * (C + AR);
  CHECK(lhs == op({B, AR + R(2) * C, R(1)}));
  // D * f = f D + f'
  RatFunc f = R(1) / (X() - R(2));
  CHECK(D * DiffOperator(f) == op({f.derivative(), f}));
}

TEST_CASE("adjoint") {
  RatFunc a = X() * X() + R(1);
  CHECK(op_adjoint(op({a, R(1)})) == op({a, R(-1)}));
  std::mt19937 rng(3);
  DiffOperator L = random_monic(rng, 4);
  CHECK(op_adjoint(op_adjoint(L)) == L);
  // (M L)* = L* M*
  DiffOperator M = random_monic(rng, 2);
  CHECK(op_adjoint(M * L) == op_adjoint(L) * op_adjoint(M));
}

TEST_CASE("gauge conjugation") {
  RatFunc g = R(1) / (X() - R(2));
  DiffOperator c = op_conjugate(DiffOperator::D_power(2), Gauge{g});
  CHECK(c == op({g.derivative() + g * g, R(2) * g, R(1)}));
  // equals (1/v) L v with v = 1/(x-2) as operators acting on polynomials
  std::mt19937 rng(5);
  for (int N = 2; N <= 5; ++N) {
    DiffOperator L = random_monic(rng, N);
    RatFunc rho = X() * X() + R(3);  // Gauge of rho: shifts p by N rho'/rho
    Gauge G = Gauge::power(rho, 1);
    DiffOperator Lc = op_conjugate(L, G);
    CHECK(Lc.coeff(N) == R(1));
    CHECK(Lc.coeff(N - 1) == L.coeff(N - 1) + R(N) * rho.derivative() / rho);
    // action check: Lc(f) = L(f rho)/rho for a rational test function
    RatFunc f = R(1) / (X() + R(5));
    CHECK(apply(Lc, f) == apply(L, f * rho) / rho);
    // conjugation composes
    Gauge H{R(1) / X()};
    CHECK(op_conjugate(op_conjugate(L, G), H) == op_conjugate(L, G * H));
  }
}

TEST_CASE("pullback") {
  DiffOperator pb = op_pullback(DiffOperator::D_power(2), X() * X());
  CHECK(pb == op({RatFunc(), R(-1) / X(), R(1)}));
  CHECK(apply(pb, X() * X()).is_zero());
  std::mt19937 rng(9);
  RatFunc y = X() * X() / (R(1) + X());
  RatFunc yp = y.derivative(), ypp = yp.derivative();
  for (int N : {2, 3, 5}) {
    DiffOperator L = random_monic(rng, N);
    DiffOperator Lp = op_pullback(L, y);
    RatFunc expect = L.coeff(N - 1).compose(y) * yp - R(N * (N - 1), 2) * ypp / yp;
    CHECK(Lp.coeff(N - 1) == expect);
  }
  // raw pullback acts by substitution: L(f)(y) = raw(L)(f(y))
  DiffOperator L = random_monic(rng, 3);
  RatFunc f = R(1) / (X() * X() + R(2));
  CHECK(apply(op_pullback_raw(L, y), f.compose(y)) == apply(L, f).compose(y));
}

TEST_CASE("pullback chain coherence") {
  std::mt19937 rng(21);
  std::vector<RatFunc> ys = {X() / (R(1) - X()), R(3) * X() * X() + X(), X() * (R(2) + X()) / (R(1) + R(2) * X())};
  for (int trial = 0; trial < 3; ++trial) {
    DiffOperator L = random_monic(rng, 2 + trial);
    for (size_t i = 0; i < ys.size(); ++i)
      for (size_t j = 0; j < ys.size(); ++j) {
        if (i == j) continue;
        CHECK(op_pullback(op_pullback(L, ys[i]), ys[j]) == op_pullback(L, ys[i].compose(ys[j])));
      }
  }
}

TEST_CASE("symmetric powers of order-2 operators") {
  CHECK(sym_power_order2(DiffOperator::D_power(2), 2) == DiffOperator::D_power(3));
  DiffOperator L = op({R(-1), RatFunc(), R(1)});
  CHECK(sym_power_order2(L, 2) == op({RatFunc(), R(-4), RatFunc(), R(1)}));
  std::mt19937 rng(13);
  for (int t = 0; t < 4; ++t) {
    RatFunc A = random_coeff(rng), B = random_coeff(rng);
    DiffOperator L2 = op({B, A, R(1)});
    for (int m = 2; m <= 4; ++m) CHECK(sym_power_order2(L2, m) == sym_power_order2_generic(L2, m));
    DiffOperator S3 = sym_power_order2(L2, 3);
    CHECK(S3.coeff(3) == R(6) * A);
    CHECK(S3.coeff(2) == R(11) * A * A + R(4) * A.derivative() + R(10) * B);
    // annihilates u^m for a series solution u
    Series u = taylor_solution(L2, {Rational(1), Rational(2)}, 20);
    for (int m = 1; m <= 5; ++m) {
      Series um = u.pow_int(m);
      Series r = apply(sym_power_order2(L2, m), um);
      CHECK(r.is_zero());
      CHECK(r.order() >= 20 - m - 1);
    }
  }
}

TEST_CASE("exterior and symmetric squares by cyclic vectors") {
  auto e = sym_or_ext_power(DiffOperator::D_power(4), PowerKind::ext2);
  // wedges (j - i) x^(i+j-1) of 1, x, x^2, x^3 span only degrees 0..4
  CHECK(e.order == 5);
  CHECK(e.op == DiffOperator::D_power(5));
  std::mt19937 rng(17);
  RatFunc A = random_coeff(rng), B = random_coeff(rng);
  DiffOperator L4 = sym_power_order2(op({B, A, R(1)}), 3);
  CHECK(power_order(L4, PowerKind::ext2) == 5);
  CHECK(power_order(L4, PowerKind::sym2) == 7);
  auto ext = sym_or_ext_power(L4, PowerKind::ext2);
  CHECK(ext.order == 5);
  // wedge of two series solutions is annihilated
  DiffOperator L2 = op({B, A, R(1)});
  Series u = taylor_solution(L2, {Rational(1), Rational(0)}, 24);
  Series v = taylor_solution(L2, {Rational(0), Rational(1)}, 24);
  Series y1 = u * u * u, y2 = u * u * v;
  Series w = y1 * y2.derivative() - y1.derivative() * y2;
  CHECK(apply(ext.op, w).is_zero());
  DiffOperator generic = random_monic(rng, 4);
  CHECK(power_order(generic, PowerKind::ext2) == 6);
  CHECK(power_order(generic, PowerKind::sym2) == 10);
  // Sym^2 of an order-3 symmetric square has order 5
  DiffOperator L3 = sym_power_order2(L2, 2);
  CHECK(power_order(L3, PowerKind::sym2) == 5);
  CHECK(sym_or_ext_power(L3, PowerKind::sym2).order == 5);
}

TEST_CASE("operator guessing") {
  Series geo = laurent(R(1) / RatFunc(P({1, -1})), 60);
  auto g = guess_operator(geo, {2, 3, 20});
  REQUIRE(g);
  CHECK(*g == op({R(-1), RatFunc(P({1, -1}))}));
  std::vector<Rational> e(60);
  Rational f = 1;
  for (int n = 0; n < 60; ++n) {
    e[n] = 1 / f;
    f *= (n + 1);
  }
  auto ge = guess_operator(Series(0, e, 60), {2, 3, 20});
  REQUIRE(ge);
  CHECK(*ge == op({R(-1), R(1)}));
  // Hadamard product of two Gauss series is a 4F3 series; its operator is
  // theta^4 - x (theta + 1/3)(theta + 2/3)(theta + 1/2)^2 up to a left factor
  int K = 90;
  Series hh = hadamard(hypergeometric_2f1(make_rational(1, 3), make_rational(2, 3), 1, K),
                       hypergeometric_2f1(make_rational(1, 2), make_rational(1, 2), 1, K));
  auto gh = guess_operator(hh, {4, 6, 20});
  REQUIRE(gh);
  DiffOperator th = DiffOperator::theta();
  auto shift = [&](Rational a) { return th + DiffOperator(std::vector<RatFunc>{RatFunc(a)}); };
  DiffOperator f43 = th * th * th * th - X() * (shift(make_rational(1, 3)) * shift(make_rational(2, 3)) *
                                              shift(make_rational(1, 2)) * shift(make_rational(1, 2)));
  CHECK(gh->order() == 4);
  CHECK(gh->normalized() == f43.normalized());
  CHECK(apply(*gh, hh).is_zero());
  CHECK_THROWS(guess_operator(laurent(R(1), 5), {2, 2, 20}));
}

TEST_CASE("Frobenius MUM basis") {
  DiffOperator th = DiffOperator::theta();
  DiffOperator t4 = th * th * th * th;
  auto fb = frobenius_mum_basis(t4, 10);
  CHECK(fb.S[0] == Series::constant(1, 10));
  for (int t = 1; t < 4; ++t) CHECK(fb.S[t].is_zero());
  DiffOperator H = hypergeometric_operator(make_rational(1, 12), make_rational(5, 12), 1);
  DiffOperator L4 = sym_power_order2(H, 3);
  CHECK(indicial_polynomial(L4) == Polynomial::monomial(1, 4));
  int K = 20;
  auto b = frobenius_mum_basis(L4, K);
  for (const auto& y : b.solutions) {
    LogSeries r = apply(L4, y);
    for (const auto& p : r.parts) {
      CHECK(p.is_zero());
      CHECK(p.order() >= K - 4);
    }
  }
  // y0 is the cube of the hypergeometric series
  Series h = hypergeometric_2f1(make_rational(1, 12), make_rational(5, 12), 1, K);
  CHECK(agree_to(b.S[0], h * h * h, K));
  // a non-MUM operator reports its indicial polynomial
  DiffOperator bad = hypergeometric_operator(make_rational(1, 2), make_rational(1, 2), make_rational(1, 3));
  try {
    frobenius_mum_basis(bad, 10);
    CHECK(false);
  } catch (const NotMumError& e) {
    CHECK(e.indicial() == Polynomial(std::vector<Rational>{0, make_rational(-2, 3), 1}));
  }
}

TEST_CASE("series operators") {
  DiffOperator H = hypergeometric_operator(make_rational(-1, 4), make_rational(3, 4), 1);
  SeriesOperator S = SeriesOperator::from(H, 20);
  Series f = hypergeometric_2f1(make_rational(-1, 4), make_rational(3, 4), 1, 20);
  Series r = S.apply(f);
  CHECK(r.is_zero());
  SeriesOperator T = SeriesOperator::from(DiffOperator::theta(), 20);
  SeriesOperator TT = T * T;
  CHECK(agree_to(TT, SeriesOperator::from(DiffOperator::theta() * DiffOperator::theta(), 20), 19));
}
