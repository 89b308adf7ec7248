#pragma once

#include <cstddef>
#include <vector>

#include "toposum/embeddings.hpp"
#include "toposum/graph.hpp"

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP variant producing bit-identical results (disjoint writes only; no
// cross-thread floating-point reductions). The unsuffixed entry points
// dispatch to OpenMP when compiled in and fall back to the reference.
namespace toposum::kernels {

bool openmp_enabled();

// For each row, the k nearest other rows by semantic_distance,
// ties broken by lower index; each list sorted by (distance, index).
std::vector<std::vector<std::size_t>> knn_candidates_serial(const EmbeddingMatrix& emb,
                                                            int k);
std::vector<std::vector<std::size_t>> knn_candidates(const EmbeddingMatrix& emb, int k);

// Witness edge appearance values for all landmark pairs a < b, flattened in
// lexicographic pair order. Witnesses for a pair are its two endpoints plus
// every non-landmark row; each witness w contributes
// max(0, max(d(a,w), d(b,w)) - m_nu(w)) where m_nu(w) is the nu-th smallest
// distance from w to the landmark set (m_0 = 0), and the edge value is the
// minimum contribution.
std::vector<double> witness_edge_values_serial(const EmbeddingMatrix& emb,
                                               const std::vector<std::size_t>& landmarks,
                                               int nu);
std::vector<double> witness_edge_values(const EmbeddingMatrix& emb,
                                        const std::vector<std::size_t>& landmarks,
                                        int nu);

// Single-source shortest paths over active nodes (infinity = unreachable).
std::vector<double> dijkstra(const SemanticGraph& g, std::size_t source);

// One Dijkstra row per source, parallel over sources.
std::vector<std::vector<double>> pool_distances_serial(const SemanticGraph& g,
                                                       const std::vector<std::size_t>& sources);
std::vector<std::vector<double>> pool_distances(const SemanticGraph& g,
                                                const std::vector<std::size_t>& sources);

} // namespace toposum::kernels
