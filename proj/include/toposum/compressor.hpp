#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toposum/corpus.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/graph.hpp"
#include "toposum/pool.hpp"

namespace toposum {

enum class ScoringMode { topo_task, random, topo_only };

struct CompressionConfig {
    double target_ratio = 0.3; // (0, 1]
    double lambda = 0.7;       // topology weight in the composite score
    double beta = 0.5;         // dense-similarity weight inside the task score
    ScoringMode mode = ScoringMode::topo_task;
    double disconnect_penalty = -1e9;
    std::uint64_t seed = 42;
    bool strict_budget = false; // pool larger than budget: error instead of warning
    std::string query;          // empty = no query
    double bm25_k1 = 1.2;
    double bm25_b = 0.75;
    // Hierarchical mode.
    bool hierarchy_enabled = true;
    std::size_t hierarchy_threshold = 120;
    int segment_target_count = 0; // 0 = derive so segments hold ~120 sentences
    double local_ratio_floor = 0.5;
};

struct DeletionEvent {
    std::size_t iter = 0;
    std::size_t index = 0; // original sentence index
    double score = 0.0;
    double topo_raw = 0.0;
    double topo_norm = 0.0;
    double task = 0.0;
    bool tie_broken = false;
    // Absent for flat runs; segment id >= 0 for local passes, -1 for the
    // global pass of a hierarchical run.
    std::optional<int> segment;
};

struct Summary {
    std::string document_id;
    std::vector<std::size_t> retained_indices;  // ascending
    std::vector<std::size_t> protected_indices; // ascending
    std::vector<std::string> retained_texts;    // aligned with retained_indices
    // Last deletion score computed for each retained sentence (null for pool
    // members and for runs that never scored it).
    std::vector<std::optional<double>> retained_scores;
    std::vector<DeletionEvent> deletion_log;
    bool hierarchical = false;
    std::string config_echo_json; // serialized effective settings
};

// Raw BM25 of each sentence against the query; the document's sentences are
// the corpus (idf = ln((N-df+0.5)/(df+0.5)+1)). Tokenization: lowercase,
// split on non-alphanumerics.
std::vector<double> bm25_raw_scores(const std::vector<std::string>& sentence_texts,
                                    const std::string& query, double k1, double b);

// Min-max to [0,1]; spread below 1e-12 maps everything to 0.
std::vector<double> min_max_normalize(const std::vector<double>& raw);

// -sum of shortest-path lengths from i to each pool node under graph
// weights; fully unreachable candidates score `penalty`, partially
// unreachable ones add penalty/|pool| per unreachable pool node.
// Throws EmptyPool.
double topo_score(const SemanticGraph& g, std::size_t i,
                  const std::vector<std::size_t>& pool, double penalty);

// One pass of Dijkstras from the pool; scores for every active non-pool node
// (indexed by node id; pool nodes and absent nodes get NaN).
std::vector<double> topo_scores_all(const SemanticGraph& g,
                                    const std::vector<std::size_t>& pool,
                                    double penalty);

// beta*cos(e_i, e_q) + (1-beta)*BM25_norm per sentence; all zeros without a
// query.
std::vector<double> task_scores(const std::vector<SentenceRecord>& sentences,
                                const EmbeddingMatrix& emb,
                                const std::vector<double>* query_embedding,
                                const CompressionConfig& cfg);

// Iterative deletion on a prebuilt graph/pool until
// |retained| = max(ceil(ratio*n), |pool|). Ties delete the lower original
// index. Throws PoolExceedsBudget in strict mode when the pool alone
// overflows the budget (warns otherwise).
Summary compress(const std::vector<SentenceRecord>& sentences,
                 const EmbeddingMatrix& emb, const SemanticGraph& g,
                 const ProtectedPool& pool, const CompressionConfig& cfg,
                 const std::vector<double>* query_embedding);

std::string summary_to_json(const Summary& s);
void write_summary(const Summary& s, const std::string& path,
                   const std::string& format); // "json" | "plain_text"
std::string deletion_log_jsonl(const Summary& s);

} // namespace toposum
