#include <benchmark/benchmark.h>

#include "condsense/families.hpp"
#include "condsense/monotonicity.hpp"
#include "condsense/oracle.hpp"
#include "condsense/paircond_identity.hpp"
#include "condsense/primitives.hpp"
#include "condsense/tolerant_uniformity.hpp"

using namespace condsense;

namespace {

Distribution make_zipf(std::size_t n, double s) {
  return generate(FamilySpec::parse("zipf:n=" + std::to_string(n) +
                                    ";s=" + std::to_string(s)))
      .dist;
}

void BM_samp(benchmark::State& state) {
  Distribution d = make_zipf(static_cast<std::size_t>(state.range(0)), 1.1);
  OracleHandle h(d, 7);
  for (auto _ : state) benchmark::DoNotOptimize(h.samp());
}
BENCHMARK(BM_samp)->Arg(1000)->Arg(100000);

void BM_cond_small_set(benchmark::State& state) {
  Distribution d = make_zipf(10000, 1.1);
  OracleHandle h(d, 7);
  std::vector<Elem> s;
  for (Elem i = 1; i <= static_cast<Elem>(state.range(0)); ++i) s.push_back(i * 3);
  for (auto _ : state) benchmark::DoNotOptimize(h.cond(s));
}
BENCHMARK(BM_cond_small_set)->Arg(16)->Arg(256);

void BM_pcond_batched(benchmark::State& state) {
  Distribution d = make_zipf(10000, 1.1);
  OracleHandle h(d, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(h.pcond_count(3, 4000, static_cast<std::uint64_t>(
                                                        state.range(0))));
}
BENCHMARK(BM_pcond_batched)->Arg(1000)->Arg(100000);

void BM_compare(benchmark::State& state) {
  Distribution d = make_zipf(1000, 1.1);
  OracleHandle h(d, 7);
  SampPcondOracle o(h);
  Config cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(compare(o, 2, 9, 0.05, 0.1, cfg));
}
BENCHMARK(BM_compare);

void BM_tolerant_unif(benchmark::State& state) {
  Distribution d = make_zipf(static_cast<std::size_t>(state.range(0)), 0.5);
  Config cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    OracleHandle h(d, ++seed);
    benchmark::DoNotOptimize(tolerant_unif(h, 0.2, cfg));
  }
}
BENCHMARK(BM_tolerant_unif)->Unit(benchmark::kMillisecond)->Arg(500);

void BM_bucket_partition(benchmark::State& state) {
  Instance inst = generate(FamilySpec::parse("appendixa:r=3;k=10;eps=0.4"));
  for (auto _ : state)
    benchmark::DoNotOptimize(bucket_partition(*inst.dstar, 0.2));
}
BENCHMARK(BM_bucket_partition);

}  // namespace

BENCHMARK_MAIN();
