#include "toposum/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"
#include "toposum/kernels.hpp"

namespace toposum {

std::size_t SemanticGraph::n_active() const {
    return static_cast<std::size_t>(std::count(present.begin(), present.end(), 1));
}

int adaptive_k(std::size_t n) {
    if (n <= 1) return 0;
    if (n <= 6) return static_cast<int>(n) - 1;
    const double raw = std::ceil(2.0 * std::log(static_cast<double>(n)));
    const int hi = std::min(20, static_cast<int>(n) - 1);
    return std::clamp(static_cast<int>(raw), 5, hi);
}

SemanticGraph build_graph(const EmbeddingMatrix& emb, double alpha, double tau) {
    SemanticGraph g;
    g.n_total = emb.n;
    g.alpha = alpha;
    g.tau = tau;
    g.k_used = adaptive_k(emb.n);
    g.present.assign(emb.n, 1);
    g.adj.resize(emb.n);
    if (g.k_used == 0) return g;

    const auto cand = kernels::knn_candidates(emb, g.k_used);
    std::vector<std::set<std::size_t>> cand_set(emb.n);
    for (std::size_t i = 0; i < emb.n; ++i)
        cand_set[i] = std::set<std::size_t>(cand[i].begin(), cand[i].end());

    for (std::size_t i = 0; i < emb.n; ++i) {
        for (std::size_t j : cand[i]) {
            if (j <= i) continue; // handle each unordered pair once, from its low end
            if (!cand_set[j].count(i)) continue;
            const double w =
                alpha * semantic_distance(emb.row(i), emb.row(j)) +
                (1.0 - alpha) *
                    std::exp(-std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                             tau);
            g.adj[i].emplace_back(j, w);
            g.adj[j].emplace_back(i, w);
        }
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

SemanticGraph remove_node(const SemanticGraph& g, std::size_t i) {
    if (i >= g.n_total || !g.present[i])
        throw NodeAbsent("cannot remove node " + std::to_string(i) +
                         ": not an active node");
    SemanticGraph out = g;
    out.present[i] = 0;
    out.adj[i].clear();
    for (auto& nb : out.adj)
        nb.erase(std::remove_if(nb.begin(), nb.end(),
                                [i](const auto& e) { return e.first == i; }),
                 nb.end());
    return out;
}

std::string graph_to_json(const SemanticGraph& g) {
    nlohmann::json j;
    j["n"] = g.n_total;
    j["n_active"] = g.n_active();
    j["k_used"] = g.k_used;
    j["alpha"] = g.alpha;
    j["tau"] = g.tau;
    auto nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < g.n_total; ++i)
        if (g.present[i]) nodes.push_back(i);
    j["nodes"] = std::move(nodes);
    auto edges = nlohmann::json::array();
    for (std::size_t i = 0; i < g.n_total; ++i)
        for (const auto& [nb, w] : g.adj[i])
            if (i < nb) edges.push_back({i, nb, w});
    j["edges"] = std::move(edges);
    return j.dump();
}

} // namespace toposum
