#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "toposum/embeddings.hpp"

namespace toposum {

struct SemanticGraph {
    std::size_t n_total = 0; // node ids are original sentence indices
    int k_used = 0;
    double alpha = 0.5;
    double tau = 10.0;
    std::vector<char> present;
    // Per-node neighbour lists sorted by neighbour id; weights symmetric.
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;

    std::size_t n_active() const;
};

// clamp(ceil(2*ln(max(n,2))), 5, min(20, n-1)); n <= 6 returns n-1.
int adaptive_k(std::size_t n);

// Mutual kNN under semantic_distance; edge weight
// alpha*d_sem(i,j) + (1-alpha)*exp(-|i-j|/tau).
SemanticGraph build_graph(const EmbeddingMatrix& emb, double alpha, double tau);

// Value-semantics removal: returns a copy without node i or its edges.
// Throws NodeAbsent if i is out of range or already removed.
SemanticGraph remove_node(const SemanticGraph& g, std::size_t i);

std::string graph_to_json(const SemanticGraph& g);

} // namespace toposum
