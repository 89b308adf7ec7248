#pragma once

// Shared serialization of effective settings; every layer that emits a
// config echo funnels through these so the shapes stay in sync.

#include <string>

#include "nlohmann/json.hpp"
#include "toposum/compressor.hpp"
#include "toposum/corpus.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/pipeline.hpp"

namespace toposum::detail {

inline const char* mode_name(ScoringMode mode) {
    switch (mode) {
        case ScoringMode::topo_task: return "topo_task";
        case ScoringMode::random: return "random";
        case ScoringMode::topo_only: return "topo_only";
    }
    return "topo_task";
}

inline const char* format_name(InputFormat format) {
    return format == InputFormat::jsonl ? "jsonl" : "plain_text";
}

inline const char* embed_mode_name(EmbedMode mode) {
    switch (mode) {
        case EmbedMode::cache: return "cache";
        case EmbedMode::http: return "http";
        case EmbedMode::mock: return "mock";
    }
    return "cache";
}

inline nlohmann::json compression_echo(const CompressionConfig& c) {
    nlohmann::json j;
    j["target_ratio"] = c.target_ratio;
    j["lambda"] = c.lambda;
    j["beta"] = c.beta;
    j["mode"] = mode_name(c.mode);
    j["disconnect_penalty"] = c.disconnect_penalty;
    j["seed"] = c.seed;
    j["strict_budget"] = c.strict_budget;
    j["query"] = c.query;
    j["bm25_k1"] = c.bm25_k1;
    j["bm25_b"] = c.bm25_b;
    j["hierarchy_enabled"] = c.hierarchy_enabled;
    j["hierarchy_threshold"] = c.hierarchy_threshold;
    j["segment_target_count"] = c.segment_target_count;
    j["local_ratio_floor"] = c.local_ratio_floor;
    return j;
}

inline nlohmann::json pipeline_echo(const PipelineConfig& p) {
    nlohmann::json j;
    j["alpha"] = p.alpha;
    j["tau"] = p.tau;
    j["landmark_proportion"] = p.landmark_proportion;
    j["nu"] = p.nu;
    j["max_filtration"] = p.max_filtration;
    j["k_pool"] = p.k_pool;
    j["m_pool"] = p.m_pool;
    j["seed"] = p.seed;
    return j;
}

inline nlohmann::json provider_echo(const EmbeddingProviderConfig& p) {
    nlohmann::json j;
    j["mode"] = embed_mode_name(p.mode);
    j["cache_path"] = p.cache_path;
    j["endpoint"] = p.endpoint;
    j["model_id"] = p.model_id;
    j["auth_token_env"] = p.auth_token_env;
    j["batch_size"] = p.batch_size;
    j["max_retries"] = p.max_retries;
    j["timeout_seconds"] = p.timeout_seconds;
    j["backoff_ms"] = p.backoff_ms;
    j["max_in_flight"] = p.max_in_flight;
    j["mock_dim"] = p.mock_dim;
    j["seed"] = p.seed;
    return j;
}

} // namespace toposum::detail
