#include "toposum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "toposum/errors.hpp"

namespace toposum::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

// Shared per-row body so the serial and OpenMP variants are literally the
// same computation.
std::vector<std::size_t> knn_row(const EmbeddingMatrix& emb, std::size_t i,
                                 std::size_t k) {
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(emb.n - 1);
    for (std::size_t j = 0; j < emb.n; ++j) {
        if (j == i) continue;
        cand.emplace_back(semantic_distance(emb.row(i), emb.row(j)), j);
    }
    const std::size_t take = std::min(k, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take),
                      cand.end());
    std::vector<std::size_t> out(take);
    for (std::size_t r = 0; r < take; ++r) out[r] = cand[r].second;
    return out;
}

} // namespace

std::vector<std::vector<std::size_t>> knn_candidates_serial(const EmbeddingMatrix& emb,
                                                            int k) {
    std::vector<std::vector<std::size_t>> out(emb.n);
    if (k <= 0) return out;
    for (std::size_t i = 0; i < emb.n; ++i)
        out[i] = knn_row(emb, i, static_cast<std::size_t>(k));
    return out;
}

std::vector<std::vector<std::size_t>> knn_candidates(const EmbeddingMatrix& emb, int k) {
    std::vector<std::vector<std::size_t>> out(emb.n);
    if (k <= 0) return out;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(emb.n); ++i)
        out[static_cast<std::size_t>(i)] =
            knn_row(emb, static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    return out;
}

namespace {

// nu-th smallest (1-indexed) distance from each row to the landmark set;
// nu = 0 means a zero offset for every witness.
std::vector<double> witness_offsets(const EmbeddingMatrix& emb,
                                    const std::vector<std::size_t>& landmarks, int nu) {
    std::vector<double> m(emb.n, 0.0);
    if (nu <= 0) return m;
    const std::size_t rank =
        std::min<std::size_t>(static_cast<std::size_t>(nu), landmarks.size()) - 1;
    for (std::size_t w = 0; w < emb.n; ++w) {
        std::vector<double> d;
        d.reserve(landmarks.size());
        for (std::size_t l : landmarks)
            d.push_back(semantic_distance(emb.row(w), emb.row(l)));
        std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(rank),
                         d.end());
        m[w] = d[rank];
    }
    return m;
}

double witness_edge_value(const EmbeddingMatrix& emb,
                          const std::vector<char>& is_landmark,
                          const std::vector<double>& offsets, std::size_t a,
                          std::size_t b) {
    double best = std::numeric_limits<double>::infinity();
    auto contribution = [&](std::size_t w) {
        const double reach = std::max(semantic_distance(emb.row(a), emb.row(w)),
                                      semantic_distance(emb.row(b), emb.row(w)));
        return std::max(0.0, reach - offsets[w]);
    };
    best = std::min(best, contribution(a));
    best = std::min(best, contribution(b));
    for (std::size_t w = 0; w < emb.n; ++w) {
        if (is_landmark[w]) continue;
        best = std::min(best, contribution(w));
    }
    return best;
}

} // namespace

std::vector<double> witness_edge_values_serial(const EmbeddingMatrix& emb,
                                               const std::vector<std::size_t>& landmarks,
                                               int nu) {
    std::vector<std::size_t> sorted = landmarks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> is_landmark(emb.n, 0);
    for (std::size_t l : sorted) is_landmark[l] = 1;
    const auto offsets = witness_offsets(emb, sorted, nu);

    const std::size_t L = sorted.size();
    std::vector<double> out(L * (L - 1) / 2);
    std::size_t flat = 0;
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j, ++flat)
            out[flat] = witness_edge_value(emb, is_landmark, offsets, sorted[i], sorted[j]);
    return out;
}

std::vector<double> witness_edge_values(const EmbeddingMatrix& emb,
                                        const std::vector<std::size_t>& landmarks,
                                        int nu) {
    std::vector<std::size_t> sorted = landmarks;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> is_landmark(emb.n, 0);
    for (std::size_t l : sorted) is_landmark[l] = 1;
    const auto offsets = witness_offsets(emb, sorted, nu);

    const std::size_t L = sorted.size();
    std::vector<double> out(L * (L - 1) / 2);
    // Flatten (i, j) -> pair rank so iterations are independent.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(out.size());
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) pairs.emplace_back(i, j);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs.size()); ++p) {
        const auto [i, j] = pairs[static_cast<std::size_t>(p)];
        out[static_cast<std::size_t>(p)] =
            witness_edge_value(emb, is_landmark, offsets, sorted[i], sorted[j]);
    }
    return out;
}

std::vector<double> dijkstra(const SemanticGraph& g, std::size_t source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n_total, inf);
    if (source >= g.n_total || !g.present[source])
        throw NodeAbsent("Dijkstra source " + std::to_string(source) +
                         " is not an active node");
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : g.adj[u]) {
            if (!g.present[v]) continue;
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

std::vector<std::vector<double>> pool_distances_serial(
    const SemanticGraph& g, const std::vector<std::size_t>& sources) {
    std::vector<std::vector<double>> out(sources.size());
    for (std::size_t r = 0; r < sources.size(); ++r) out[r] = dijkstra(g, sources[r]);
    return out;
}

std::vector<std::vector<double>> pool_distances(const SemanticGraph& g,
                                                const std::vector<std::size_t>& sources) {
    std::vector<std::vector<double>> out(sources.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(sources.size()); ++r)
        out[static_cast<std::size_t>(r)] =
            dijkstra(g, sources[static_cast<std::size_t>(r)]);
    return out;
}

} // namespace toposum::kernels
