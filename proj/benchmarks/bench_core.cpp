#include <benchmark/benchmark.h>

#include "fuchsian/distinguisher.hpp"
#include "fuchsian/scrape_matrices.hpp"
#include "fuchsian/smooth_reps.hpp"

using namespace fuchsian;

namespace {

void BM_Distinguish(benchmark::State& state, const char* left, const char* right) {
  Signature l = parse_signature(left), r = parse_signature(right);
  for (auto _ : state) benchmark::DoNotOptimize(distinguish(l, r));
}

void BM_DistinguishAndVerify(benchmark::State& state, const char* left, const char* right) {
  Signature l = parse_signature(left), r = parse_signature(right);
  for (auto _ : state) {
    auto c = distinguish(l, r);
    benchmark::DoNotOptimize(verify_certificate(c, l, r));
  }
}

void BM_FindQ(benchmark::State& state) {
  Factor x = coscrape({15, 42, 63}, 30);
  for (auto _ : state) benchmark::DoNotOptimize(find_q(x));
}

void BM_HurwitzEpimorphisms(benchmark::State& state) {
  GroupTable G = make_table(GroupDescriptor::psl2(7));
  Signature s = parse_signature("(0;0;2,3,7)");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_epimorphisms(s, G).count);
}

void BM_MaximalSmoothnessPSL11(benchmark::State& state) {
  GroupTable G = make_table(GroupDescriptor::psl2(11));
  Signature s = parse_signature("(0;0;15,42,63)");
  for (auto _ : state) benchmark::DoNotOptimize(maximal_smoothness(G, s));
}

void BM_PatchedRank(benchmark::State& state) {
  u64 M = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank(append_patch_rows(build_F(M))));
  state.SetLabel("tau=" + std::to_string(divisors(M).size()));
}

void BM_SubgroupOrder(benchmark::State& state) {
  PSL2 G(static_cast<u64>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<Mat2> gens{G.random_element(rng), G.random_element(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(G.subgroup_order(gens));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Distinguish, example1, "(0;0;4,3,7)", "(0;0;2,3,7)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Distinguish, example2, "(0;0;15,42,63)", "(0;0;21,21,90)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Distinguish, example3, "(0;0;2,3,3,315)", "(0;0;15,18,21)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Distinguish, mixed, "(1;0;2)", "(0;3;-)")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DistinguishAndVerify, example1, "(0;0;4,3,7)", "(0;0;2,3,7)")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindQ)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HurwitzEpimorphisms)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximalSmoothnessPSL11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PatchedRank)->Arg(60)->Arg(210)->Arg(288)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SubgroupOrder)->Arg(101)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
