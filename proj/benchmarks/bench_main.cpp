#include <benchmark/benchmark.h>

#include "gerbekit/cocycle.hpp"
#include "gerbekit/cohomology.hpp"
#include "gerbekit/corpus.hpp"

using namespace gerbekit;

namespace {

void BM_AutomorphismGroup(benchmark::State& state) {
  const auto g = state.range(0) == 0 ? symmetric_group(3)
                                     : direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2)));
  for (auto _ : state) benchmark::DoNotOptimize(automorphism_group(g).maps.size());
  state.SetLabel(state.range(0) == 0 ? "S3" : "(Z/2)^3");
}
BENCHMARK(BM_AutomorphismGroup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NerveBundleApex(benchmark::State& state) {
  const auto b = extension_to_bundle(corpus::z4_over_z2());
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::size_t top = 0;
  for (auto _ : state) {
    auto n = DeltaSet::nerve(*b.span.apex, dim);
    top = n.size(dim);
  }
  state.counters["simplices"] = static_cast<double>(top);
}
BENCHMARK(BM_NerveBundleApex)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_NerveS3Apex(benchmark::State& state) {
  const auto b = extension_to_bundle(corpus::s3_over_z2());
  for (auto _ : state) benchmark::DoNotOptimize(DeltaSet::nerve(*b.span.apex, 3).size(3));
}
BENCHMARK(BM_NerveS3Apex)->Unit(benchmark::kMillisecond);

void BM_GroupCohomology(benchmark::State& state) {
  const auto t = as_two_groupoid(group_as_groupoid(symmetric_group(3)));
  const auto p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nerve_cohomology(t, 3, p)[3].dimension());
}
BENCHMARK(BM_GroupCohomology)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Elimination(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = static_cast<std::uint32_t>(state.range(1));
  std::vector<FpVector> rows;
  std::uint64_t x = 88172645463325252ULL;
  for (std::size_t r = 0; r < n; ++r) {
    FpVector v(p, n);
    for (std::size_t c = 0; c < n; ++c) {
      x ^= x << 13;
      x ^= x >> 7;
      x ^= x << 17;
      v.set(c, static_cast<std::uint32_t>(x % p));
    }
    rows.push_back(std::move(v));
  }
  for (auto _ : state) {
    Echelon e(p, n);
    for (const auto& r : rows) e.insert(r);
    benchmark::DoNotOptimize(e.rank());
  }
}
BENCHMARK(BM_Elimination)->Args({512, 2})->Args({1024, 2})->Args({512, 3})->Unit(benchmark::kMillisecond);

void BM_CharacteristicMap(benchmark::State& state) {
  const auto e = corpus::z4_over_z2();
  const auto red = central_reduction(e, *is_central(e));
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_map(red.span, 2, 2).rows);
}
BENCHMARK(BM_CharacteristicMap)->Unit(benchmark::kMillisecond);

void BM_RoundTrip(benchmark::State& state) {
  const auto e = corpus::trivial_z3_e5();
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_check(e).tilde.f1.size());
}
BENCHMARK(BM_RoundTrip)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
