// Benchmarks the OpenMP kernels against their serial reference
// implementations on synthetic documents of increasing size.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "toposum/embeddings.hpp"
#include "toposum/graph.hpp"
#include "toposum/kernels.hpp"

using namespace toposum;

namespace {

EmbeddingMatrix synthetic_embeddings(std::size_t n, std::size_t dim,
                                     std::uint64_t seed) {
    EmbeddingMatrix emb;
    emb.n = n;
    emb.dim = dim;
    emb.data.reserve(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string text = "sentence " + std::to_string(i) + " about topic " +
                                 std::to_string(i % 7);
        const auto row = mock_embed_text(text, dim, seed);
        emb.data.insert(emb.data.end(), row.begin(), row.end());
    }
    return emb;
}

std::vector<std::size_t> evenly_spaced(std::size_t n, std::size_t count) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(i * n / count);
    return out;
}

SemanticGraph sized_graph(std::size_t n, std::uint64_t seed) {
    const auto emb = synthetic_embeddings(n, 32, seed);
    return build_graph(emb, 0.5, 10.0);
}

void bench_knn_serial(benchmark::State& state) {
    const auto emb = synthetic_embeddings(static_cast<std::size_t>(state.range(0)), 32, 1);
    const int k = adaptive_k(emb.n);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::knn_candidates_serial(emb, k));
}

void bench_knn_parallel(benchmark::State& state) {
    const auto emb = synthetic_embeddings(static_cast<std::size_t>(state.range(0)), 32, 1);
    const int k = adaptive_k(emb.n);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::knn_candidates(emb, k));
}

void bench_witness_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto emb = synthetic_embeddings(n, 32, 2);
    const auto landmarks = evenly_spaced(n, n / 5 + 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::witness_edge_values_serial(emb, landmarks, 1));
}

void bench_witness_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto emb = synthetic_embeddings(n, 32, 2);
    const auto landmarks = evenly_spaced(n, n / 5 + 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::witness_edge_values(emb, landmarks, 1));
}

void bench_pool_distances_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = sized_graph(n, 3);
    const auto sources = evenly_spaced(n, 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::pool_distances_serial(g, sources));
}

void bench_pool_distances_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = sized_graph(n, 3);
    const auto sources = evenly_spaced(n, 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::pool_distances(g, sources));
}

BENCHMARK(bench_knn_serial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_knn_parallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_witness_serial)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_witness_parallel)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_pool_distances_serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_pool_distances_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
