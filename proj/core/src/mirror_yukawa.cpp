#include "schwarz/mirror_yukawa.hpp"

#include <stdexcept>

#include "schwarz/powers.hpp"
#include "schwarz/schwarzian.hpp"

namespace schwarz {

namespace {

RatFunc c(long n, long d = 1) { return RatFunc(make_rational(n, d)); }

// (q d/dq)^2 on a series in q
Series theta_squared(const Series& f) {
  if (f.is_zero()) return f;
  std::vector<Rational> out;
  const auto& raw = f.raw();
  for (size_t i = 0; i < raw.size(); ++i) {
    long n = f.val() + static_cast<long>(i);
    out.push_back(raw[i] * Rational(n * n));
  }
  return Series(f.val(), std::move(out), f.order());
}

std::string mismatch_text(const char* what, const Series& a, const Series& b, int K) {
  int k = first_mismatch(a, b, K);
  return std::string(what) + " differs at x^" + std::to_string(k) + ": " + to_string(a.coeff(k)) +
         " vs " + to_string(b.coeff(k));
}

}  // namespace

DiffOperator mum_normalized(const DiffOperator& L, Rational* exponent) {
  if (L.order() != 4) throw std::invalid_argument("nome/Yukawa need an operator of order 4");
  Polynomial ind = indicial_polynomial(L);
  // (s - r)^4 has s^3 coefficient -4r
  Rational r = -ind.coeff(3) / 4;
  Polynomial lin(std::vector<Rational>{-r, 1});
  if (!(ind == lin * lin * lin * lin)) throw NotMumError(ind);
  if (exponent) *exponent = r;
  DiffOperator M = L.normalized();
  if (sgn(r) != 0) M = op_conjugate(M, Gauge{RatFunc(r) / RatFunc::x()});
  return M;
}

Series nome_series(const DiffOperator& L, int K) {
  FrobeniusBasis fb = frobenius_mum_basis(mum_normalized(L), K);
  return Series::x() * exp(fb.S[1] / fb.S[0]);
}

MumData mum_data(const DiffOperator& L, int K) {
  MumData out;
  out.op = mum_normalized(L, &out.exponent);
  FrobeniusBasis fb = frobenius_mum_basis(out.op, K);
  Series t = fb.S[1] / fb.S[0];
  out.q_x = Series::x() * exp(t);
  Series phi = fb.S[2] / fb.S[0] - Rational(1, 2) * t * t;
  Series x_of_q = out.q_x.reverse();
  out.K_q = Series::constant(1) + theta_squared(phi.compose(x_of_q));
  out.K_x = out.K_q.compose(out.q_x);
  return out;
}

Yukawa yukawa(const DiffOperator& L, int K) {
  MumData m = mum_data(L, K);
  return {m.K_x, m.K_q};
}

RatFunc pair_schwarzian_residual_w(const RatFunc& W_L, const RatFunc& W_M, const RatFunc& y) {
  RatFunc y1 = y.derivative();
  return W_M - W_L.compose(y) * y1 * y1 + schwarzian_derivative(y);
}

RatFunc pair_schwarzian_residual(const DiffOperator& L, const DiffOperator& M, const RatFunc& y) {
  return pair_schwarzian_residual_w(w_function(L), w_function(M), y);
}

Series pair_schwarzian_residual(const DiffOperator& L, const DiffOperator& M, const Series& y0,
                                int order) {
  Series y = y0.is_exact() ? y0.truncate(y0.val() + order) : y0;
  Series y1 = y.derivative();
  Series r = ratfunc_at_series(w_function(L), y) * y1 * y1;
  r = schwarzian_derivative(y) - r;
  return r + laurent(w_function(M), r.order());
}

YukawaRelationReport yukawa_pullback_relation_check(const DiffOperator& L, const DiffOperator& M,
                                                    const RatFunc& y, const Gauge& v, int K) {
  YukawaRelationReport rep;
  rep.order = K;
  DiffOperator lhs = op_conjugate(op_pullback(L, y), v);
  DiffOperator rhs = M.normalized();
  rep.precondition = lhs == rhs;
  if (!rep.precondition) {
    for (int k = 0; k <= std::max(lhs.order(), rhs.order()); ++k)
      if (!(lhs.coeff(k) == rhs.coeff(k))) {
        rep.detail = "precondition fails at D^" + std::to_string(k) + ": " + lhs.coeff(k).str() + " vs " +
                     rhs.coeff(k).str();
        break;
      }
    return rep;
  }
  Series ys = laurent(y, K + 2);
  if (ys.is_zero() || ys.val() < 1) {
    rep.detail = "pullback must vanish at 0";
    return rep;
  }
  rep.n = ys.val();
  rep.lambda = ys.coeff(rep.n);

  MumData dl = mum_data(L, K), dm = mum_data(M, K);
  Series lhs_nome = dm.q_x.pow_int(rep.n);
  Series rhs_nome = dl.q_x.compose(ys) * (Rational(1) / rep.lambda);
  int kn = std::min({K, lhs_nome.order(), rhs_nome.order()});
  rep.nome = agree_to(lhs_nome, rhs_nome, kn);

  Series rhs_kx = dl.K_x.compose(ys);
  int kx = std::min({K, dm.K_x.order(), rhs_kx.order()});
  rep.yukawa_x = agree_to(dm.K_x, rhs_kx, kx);

  Series rhs_kq = dl.K_q.scaled_argument(rep.lambda).compose(Series::monomial(1, rep.n));
  int kq = std::min({K, dm.K_q.order(), rhs_kq.order()});
  rep.yukawa_q = agree_to(dm.K_q, rhs_kq, kq);

  rep.order = std::min({kn, kx, kq});
  if (!rep.nome)
    rep.detail = mismatch_text("nome", lhs_nome, rhs_nome, kn);
  else if (!rep.yukawa_x)
    rep.detail = mismatch_text("K_x", dm.K_x, rhs_kx, kx);
  else if (!rep.yukawa_q)
    rep.detail = mismatch_text("K_q", dm.K_q, rhs_kq, kq);
  return rep;
}

DiffOperator ext2_square_root(const RatFunc& P, const RatFunc& Q, const DiffOperator& L5) {
  if (L5.order() != 5) throw std::invalid_argument("ext2_square_root needs an order-5 target");
  RatFunc R = c(1, 2) * P * Q - c(1, 8) * P * P * P + Q.derivative() - c(3, 4) * P * P.derivative() -
              c(1, 2) * P.derivative().derivative();
  DiffOperator target = L5.normalized();
  // S enters the D^1 coefficient of the exterior square as -4S, with no derivative
  PowerResult e0 = sym_or_ext_power(DiffOperator({RatFunc(), R, Q, P, RatFunc(1)}), PowerKind::ext2);
  if (e0.op.order() != 5) throw std::domain_error("ext2_square_root: exterior square is not of order 5");
  RatFunc S = (e0.op.coeff(1) - target.coeff(1)) * c(1, 4);
  DiffOperator L4({S, R, Q, P, RatFunc(1)});
  if (!(sym_or_ext_power(L4, PowerKind::ext2).op == target))
    throw std::domain_error("ext2_square_root: no order-4 operator with these P, Q has this exterior square");
  return L4;
}

DiffOperator hypergeometric_5f4_operator(const Rational& a, const Rational& b) {
  DiffOperator th = DiffOperator::theta();
  auto sh = [&](const Rational& r) { return th + DiffOperator(RatFunc(r)); };
  DiffOperator lhs = th * th * th * th * th;
  DiffOperator rhs = sh(Rational(1, 2)) * sh(a) * sh(1 - a) * sh(b) * sh(1 - b);
  return (lhs - RatFunc::x() * rhs).normalized();
}

RatFunc hadamard_pair_P(const Rational&) {
  RatFunc X = RatFunc::x();
  return (c(4) - c(5) * X) / (X * (c(1) - X));
}

RatFunc hadamard_pair_Q(const Rational& s) {
  RatFunc X = RatFunc::x();
  return (c(3) * X - c(2)) * (c(11) * X - c(10)) / (c(8) * X * X * (X - c(1)).pow(2)) +
         RatFunc(s) / (c(2) * X * (X - c(1)));
}

RatFunc hadamard_pair_Phat(const Rational&) {
  RatFunc X = RatFunc::x();
  return c(2) * (c(5) * X * X + c(4) * X - c(3)) / (X * (X + c(1)) * (X - c(1)));
}

RatFunc hadamard_pair_Qhat(const Rational& s) {
  RatFunc X = RatFunc::x();
  RatFunc num = c(25) * X.pow(4) + c(40) * X.pow(3) - c(16) * X * X - c(32) * X + c(7);
  return c(2) * RatFunc(s) / (X * (X - c(1)).pow(2)) +
         num / (X * X * (X + c(1)).pow(2) * (X - c(1)).pow(2));
}

HadamardPair hadamard_pair(const Rational& a, const Rational& b) {
  HadamardPair h;
  h.a = a;
  h.b = b;
  h.s = a * (1 - a) + b * (1 - b);
  h.p = a * b * (1 - a) * (1 - b);
  h.L5 = hypergeometric_5f4_operator(a, b);
  h.L4 = ext2_square_root(hadamard_pair_P(h.s), hadamard_pair_Q(h.s), h.L5);
  RatFunc X = RatFunc::x();
  h.y = c(-4) * X / (c(1) - X).pow(2);
  h.v = Gauge::power(X * (c(1) + X) / (c(1) - X), Rational(1, 2));
  h.H4 = op_conjugate(op_pullback(h.L4, h.y), h.v);
  return h;
}

}  // namespace schwarz
