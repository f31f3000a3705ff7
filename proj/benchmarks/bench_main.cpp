#include "qdepth/catalog.hpp"
#include "qdepth/chartab.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/hopf.hpp"
#include "qdepth/mackey.hpp"
#include "qdepth/subgroups.hpp"

#include <benchmark/benchmark.h>

using namespace qdepth;

namespace {

Group make(const CatalogEntry& e) { return Group::enumerate(e.degree, e.generators); }

void BM_DixonTable(benchmark::State& state, CatalogEntry entry) {
    const Group g = make(entry);
    for (auto _ : state) benchmark::DoNotOptimize(compute_character_table(g));
}
BENCHMARK_CAPTURE(BM_DixonTable, A5, alternating_group(5))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DixonTable, S5, symmetric_group(5))->Unit(benchmark::kMillisecond);

void BM_DepthReportS4InS5(benchmark::State& state) {
    const Group g = make(symmetric_group(5));
    const Subgroup h = Subgroup::from_images(g, {{2, 1, 3, 4, 5}, {2, 3, 4, 1, 5}});
    const Group hg = h.as_group();
    const auto tg = compute_character_table(g);
    const auto th = compute_character_table(hg);
    for (auto _ : state) benchmark::DoNotOptimize(analyze_pair(tg, h, hg, th));
}
BENCHMARK(BM_DepthReportS4InS5)->Unit(benchmark::kMillisecond);

void BM_AnnihilatorChainSmallQG(benchmark::State& state) {
    const SmallQuantumGroup u = build_small_quantum_group(static_cast<int>(state.range(0)));
    const auto r = quantum_subalgebra(u, "R2");
    const QuotientModule q = quotient_module(u.h, r);
    for (auto _ : state) benchmark::DoNotOptimize(annihilator_chain(u.h, q));
}
BENCHMARK(BM_AnnihilatorChainSmallQG)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_QTensor(benchmark::State& state) {
    const Group g = make(symmetric_group(5));
    const Subgroup h = Subgroup::from_images(g, {{2, 1, 3, 4, 5}, {2, 3, 4, 1, 5}});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(q_tensor_decomposition(h, n));
}
BENCHMARK(BM_QTensor)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
