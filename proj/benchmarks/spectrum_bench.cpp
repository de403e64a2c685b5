#include <benchmark/benchmark.h>

#include "meq/spectrum.hpp"
#include "meq/systems.hpp"

namespace {

void BM_WeylSum(benchmark::State& state) {
  const auto sys = meq::period_doubling_system();
  const meq::Point x = meq::period_doubling_two_sided_point();
  const auto alpha = meq::CirclePoint::from_rational(1, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(meq::weyl_sum(sys, meq::Observable::sign(), x, alpha, state.range(0)).modulus);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeylSum)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_EigenvalueScan(benchmark::State& state) {
  const auto alpha = meq::RotationNumber::golden();
  const auto sys = meq::sturmian_system(alpha);
  const meq::Point x = meq::sturmian_point(alpha, meq::CirclePoint::from_double(0.1));
  meq::ScanOptions opt;
  opt.M = state.range(0);
  opt.N = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(meq::eigenvalue_scan(sys, meq::Observable::symbol_value(), x, opt).peaks.size());
}
BENCHMARK(BM_EigenvalueScan)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
