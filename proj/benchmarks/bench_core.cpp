#include <benchmark/benchmark.h>

#include "designlab/decompose.hpp"
#include "designlab/exceptional.hpp"
#include "designlab/feasibility.hpp"
#include "designlab/incidence.hpp"
#include "designlab/permgroup.hpp"

namespace {

using namespace designlab;

void BM_VerifyBiplane(benchmark::State& state) {
  IncidenceStructure d = develop_difference_set(find_difference_set_16_6_2());
  for (auto _ : state) benchmark::DoNotOptimize(verify_2design(d));
}
BENCHMARK(BM_VerifyBiplane);

void BM_VerifyAffinePlane16(benchmark::State& state) {
  IncidenceStructure d = affine_plane(16);
  for (auto _ : state) benchmark::DoNotOptimize(verify_2design(d));
}
BENCHMARK(BM_VerifyAffinePlane16);

void BM_StabilizerChainE16(benchmark::State& state) {
  auto gens = translation_generators();
  for (auto _ : state) {
    PermGroup g(16, gens);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_StabilizerChainE16);

void BM_InvariantPartitionsE16(benchmark::State& state) {
  PermGroup g(16, translation_generators());
  for (auto _ : state) benchmark::DoNotOptimize(g.invariant_partitions());
}
BENCHMARK(BM_InvariantPartitionsE16);

void BM_FullReportBiplane(benchmark::State& state) {
  IncidenceStructure d = develop_difference_set(find_difference_set_16_6_2());
  auto scans = constant_intersection_subgroups(d);
  Partition sigma = coset_partition(scans.front().subgroup);
  PermGroup g(16, translation_generators());
  for (auto _ : state) benchmark::DoNotOptimize(full_report(d, sigma, &g));
}
BENCHMARK(BM_FullReportBiplane);

void BM_Enumerate(benchmark::State& state) {
  const u64 lambda = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates(lambda));
}
BENCHMARK(BM_Enumerate)->Arg(13)->Arg(97)->Arg(997);

void BM_EnumerateKeepRejected(benchmark::State& state) {
  EnumOptions opts;
  opts.keep_rejected = true;
  const u64 lambda = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates(lambda, opts));
}
BENCHMARK(BM_EnumerateKeepRejected)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
