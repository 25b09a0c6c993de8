#include <benchmark/benchmark.h>

#include "schwarz/casebook.hpp"
#include "schwarz/cy_conditions.hpp"
#include "schwarz/mirror_yukawa.hpp"
#include "schwarz/powers.hpp"
#include "schwarz/schwarzian.hpp"

using namespace schwarz;

namespace {

RatFunc modular_w() {
  DiffOperator h = hypergeometric_operator(make_rational(1, 12), make_rational(5, 12), 1);
  return w_function(h);
}

DiffOperator quintic() {
  DiffOperator t = DiffOperator::theta();
  auto f = [&](long k) { return RatFunc(Rational(5)) * t + DiffOperator(RatFunc(Rational(k))); };
  return t * t * t * t - RatFunc(Rational(5)) * RatFunc::x() * (f(1) * f(2) * f(3) * f(4));
}

void BM_SymPowerClosed(benchmark::State& st) {
  DiffOperator h = hypergeometric_operator(make_rational(1, 12), make_rational(5, 12), 1);
  for (auto _ : st) benchmark::DoNotOptimize(sym_power_order2(h, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SymPowerClosed)->DenseRange(2, 4);

void BM_Ext2CyclicVector(benchmark::State& st) {
  DiffOperator L4 = sym_power_order2(hypergeometric_operator(make_rational(1, 12), make_rational(5, 12), 1), 3);
  for (auto _ : st) benchmark::DoNotOptimize(sym_or_ext_power(L4, PowerKind::ext2));
}
BENCHMARK(BM_Ext2CyclicVector)->Unit(benchmark::kMillisecond);

void BM_CalabiResidual(benchmark::State& st) {
  DiffOperator L4 = quintic().normalized();
  for (auto _ : st) benchmark::DoNotOptimize(calabi_residual(L4));
}
BENCHMARK(BM_CalabiResidual);

void BM_SolveSchwarzian(benchmark::State& st) {
  RatFunc W = modular_w();
  for (auto _ : st)
    benchmark::DoNotOptimize(solve_schwarzian_series(W, 1, 3, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SolveSchwarzian)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_MirrorYukawaQuintic(benchmark::State& st) {
  DiffOperator L = quintic();
  for (auto _ : st) benchmark::DoNotOptimize(mum_data(L, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_MirrorYukawaQuintic)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Case(benchmark::State& st) {
  const std::string name = case_names()[static_cast<size_t>(st.range(0))];
  st.SetLabel(name);
  for (auto _ : st) benchmark::DoNotOptimize(run_case(name));
}
BENCHMARK(BM_Case)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
