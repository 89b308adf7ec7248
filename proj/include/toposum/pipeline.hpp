#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toposum/compressor.hpp"
#include "toposum/corpus.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/graph.hpp"
#include "toposum/homology.hpp"
#include "toposum/pool.hpp"

namespace toposum {

struct PipelineConfig {
    double alpha = 0.5;
    double tau = 10.0;
    double landmark_proportion = 0.2;
    int nu = 1;
    double max_filtration = 3.0;
    int k_pool = 3;
    int m_pool = 3;
    std::uint64_t seed = 42;
};

struct TopologyResult {
    SemanticGraph graph;
    LandmarkSet landmarks;
    PersistenceDiagram diagram;
    ProtectedPool pool;
};

// graph -> one-time persistence analysis -> pool. Throws TooFewSentences
// for fewer than 2 rows.
TopologyResult run_topology(const EmbeddingMatrix& emb, const PipelineConfig& cfg);

// Full flat pipeline: exactly one reduce() per call (n >= 2).
Summary compress_flat(const std::vector<SentenceRecord>& sentences,
                      const EmbeddingMatrix& emb, const PipelineConfig& pipe,
                      const CompressionConfig& comp,
                      const std::vector<double>* query_embedding,
                      const std::string& document_id);

// Documents below comp.hierarchy_threshold delegate to the flat pipeline
// (identical output apart from the hierarchical flag). Longer documents are
// segmented, compressed locally at max(sqrt(target_ratio),
// local_ratio_floor), concatenated in order, then compressed globally at a
// ratio that lands the original budget; the global pass builds its own
// graph, persistence analysis, and pool over the survivors.
Summary compress_hierarchical(const std::vector<SentenceRecord>& sentences,
                              const EmbeddingMatrix& emb,
                              const std::vector<std::size_t>& segment_markers,
                              const PipelineConfig& pipe, const CompressionConfig& comp,
                              const std::vector<double>* query_embedding,
                              const std::string& document_id);

// Segment boundaries as sentence-index ranges [begin, end).
std::vector<std::pair<std::size_t, std::size_t>> plan_segments(
    const std::vector<SentenceRecord>& sentences,
    const std::vector<std::size_t>& segment_markers, int segment_target_count);

} // namespace toposum
