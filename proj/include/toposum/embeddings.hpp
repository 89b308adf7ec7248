#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "toposum/corpus.hpp"

namespace toposum {

struct EmbeddingMatrix {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> data; // row-major, rows L2-normalized

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }

    EmbeddingMatrix select(const std::vector<std::size_t>& rows) const;
};

// Dot product of L2-normalized vectors, clamped to [-1, 1].
double cosine(std::span<const double> a, std::span<const double> b);

// 1 - cosine, in [0, 2].
double semantic_distance(std::span<const double> a, std::span<const double> b);

// In-place L2 normalization; near-zero vectors (norm < 1e-12) are replaced
// by the first basis vector and a warning is emitted.
void normalize_row(std::span<double> v, const std::string& what);

enum class EmbedMode { cache, http, mock };

struct EmbeddingProviderConfig {
    EmbedMode mode = EmbedMode::cache;
    std::string cache_path;
    std::string endpoint;
    std::string model_id;
    std::string auth_token_env; // name of env var holding the bearer token
    int batch_size = 32;
    int max_retries = 3;
    double timeout_seconds = 30.0;
    int backoff_ms = 100;
    int max_in_flight = 4;
    std::size_t mock_dim = 32;
    std::uint64_t seed = 42;
};

// Returns one normalized row per sentence, in sentence order.
EmbeddingMatrix embed_sentences(const std::vector<SentenceRecord>& sentences,
                                const EmbeddingProviderConfig& cfg);

// Embeds a free-standing query text. In cache mode the cache file must carry
// an entry with index = n_sentences (one past the last sentence).
std::vector<double> embed_query(const std::string& query, std::size_t n_sentences,
                                const EmbeddingProviderConfig& cfg);

// JSONL cache: one {"index": int, "vector": [...]} per line.
EmbeddingMatrix load_embedding_cache(const std::string& path, std::size_t n_expected);
void write_embedding_cache(const EmbeddingMatrix& emb, const std::string& path);

// Deterministic seeded-hash embedding of one text (the mock provider's unit).
std::vector<double> mock_embed_text(const std::string& text, std::size_t dim,
                                    std::uint64_t seed);

} // namespace toposum
