#include <benchmark/benchmark.h>

#include "meq/parallel.hpp"
#include "meq/systems.hpp"

namespace {

void BM_ThueMorseFarCoordinate(benchmark::State& state) {
  const auto x = meq::thue_morse_two_sided_point();
  meq::Rng rng(1);
  const std::int64_t reach = std::int64_t{1} << state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(x.at(rng.between(-reach, reach)));
}
BENCHMARK(BM_ThueMorseFarCoordinate)->Arg(10)->Arg(30)->Arg(60);

void BM_CantorPrefix(benchmark::State& state) {
  const auto x = meq::cantor_two_sided_point();
  for (auto _ : state) {
    std::int64_t zeros = 0;
    for (std::int64_t i = 0; i < state.range(0); ++i) zeros += x.at(i) == 0;
    benchmark::DoNotOptimize(zeros);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CantorPrefix)->Arg(59049);

void BM_SturmianCoordinate(benchmark::State& state) {
  const auto x = meq::sturmian_point(meq::RotationNumber::golden(), meq::CirclePoint::from_double(0.1));
  std::int64_t n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(x.at(n++));
}
BENCHMARK(BM_SturmianCoordinate);

void BM_ToeplitzCoordinate(benchmark::State& state) {
  const auto x = meq::toeplitz_point({meq::random_hole_path(3), {0, 1}, std::nullopt});
  meq::Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(x.at(rng.between(-1000000, 1000000)));
}
BENCHMARK(BM_ToeplitzCoordinate);

}  // namespace
