#include <benchmark/benchmark.h>

#include <cmath>

#include "hpt/cone.hpp"
#include "hpt/generate.hpp"
#include "hpt/hyperbolicity.hpp"
#include "hpt/moebius.hpp"
#include "hpt/quad_scan.hpp"

namespace {

hpt::DenseMatrix cone_matrix(std::size_t base_n, std::size_t levels) {
  const auto z = hpt::euclidean(2, base_n, 1.0, 11);
  const auto c = hpt::build_cone(z, hpt::geometric_heights(hpt::diameter(z), levels));
  return c.materialize().finite_part();
}

// Four-point condition, the cheapest evaluator.
std::array<double, 3> four_point(const hpt::DenseMatrix& m, const hpt::Quad& q) {
  const double s0 = m(q[0], q[2]) + m(q[1], q[3]);
  const double s1 = m(q[0], q[1]) + m(q[2], q[3]);
  const double s2 = m(q[0], q[3]) + m(q[1], q[2]);
  return {s0 - std::max(s1, s2), s1 - std::max(s0, s2), s2 - std::max(s0, s1)};
}

void BM_ScanSerial(benchmark::State& state) {
  const auto m = cone_matrix(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) {
    auto r = hpt::scan_quadruples_serial<3>(m.n, [&](const hpt::Quad& q) { return four_point(m, q); });
    benchmark::DoNotOptimize(r.best);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hpt::choose4(m.n)));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto m = cone_matrix(static_cast<std::size_t>(state.range(0)), 6);
  const hpt::ScanOptions opts{static_cast<int>(state.range(1))};
  for (auto _ : state) {
    auto r = hpt::scan_quadruples<3>(m.n, [&](const hpt::Quad& q) { return four_point(m, q); }, opts);
    benchmark::DoNotOptimize(r.best);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hpt::choose4(m.n)));
}

void BM_AptDefect(benchmark::State& state) {
  const auto z = hpt::euclidean(2, 12, 1.0, 3);
  const auto x = hpt::build_cone(z, hpt::geometric_heights(hpt::diameter(z), 6)).materialize();
  const hpt::ScanOptions opts{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(hpt::apt_defect(x, -1.0, opts).exp.defect);
}

void BM_PtolemyDefect(benchmark::State& state) {
  const auto x = hpt::euclidean(2, static_cast<std::size_t>(state.range(0)), 1.0, 5);
  const hpt::ScanOptions opts{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(hpt::ptolemy_defect(x, opts).defect);
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Args({4, 1})->Args({4, 8})->Args({8, 1})->Args({8, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AptDefect)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PtolemyDefect)->Args({40, 1})->Args({40, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
