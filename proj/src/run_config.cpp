#include "toposum/run_config.hpp"

#include <string>

#include "echo_detail.hpp"
#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

std::string config_echo_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["pipeline"] = detail::pipeline_echo(cfg.pipeline);
    j["compression"] = detail::compression_echo(cfg.compression);
    j["provider"] = detail::provider_echo(cfg.provider);
    j["input_format"] = detail::format_name(cfg.input_format);
    return j.dump();
}

void validate_run_config(const RunConfig& cfg) {
    auto fail = [](const std::string& what) { throw ConfigError(what); };

    const auto& c = cfg.compression;
    if (!(c.target_ratio > 0.0) || c.target_ratio > 1.0)
        fail("target_ratio must be in (0, 1], got " + std::to_string(c.target_ratio));
    if (c.lambda < 0.0 || c.lambda > 1.0)
        fail("lambda must be in [0, 1], got " + std::to_string(c.lambda));
    if (c.beta < 0.0 || c.beta > 1.0)
        fail("beta must be in [0, 1], got " + std::to_string(c.beta));
    if (!(c.local_ratio_floor > 0.0) || c.local_ratio_floor > 1.0)
        fail("local_ratio_floor must be in (0, 1], got " +
             std::to_string(c.local_ratio_floor));
    if (c.hierarchy_threshold < 2) fail("hierarchy_threshold must be at least 2");
    if (c.segment_target_count < 0) fail("segment_count cannot be negative");
    if (c.bm25_k1 < 0.0) fail("bm25_k1 cannot be negative");
    if (c.bm25_b < 0.0 || c.bm25_b > 1.0) fail("bm25_b must be in [0, 1]");

    const auto& p = cfg.pipeline;
    if (p.alpha < 0.0 || p.alpha > 1.0)
        fail("alpha must be in [0, 1], got " + std::to_string(p.alpha));
    if (!(p.tau > 0.0)) fail("tau must be positive");
    if (!(p.landmark_proportion > 0.0) || p.landmark_proportion > 1.0)
        fail("landmark_proportion must be in (0, 1], got " +
             std::to_string(p.landmark_proportion));
    if (p.nu < 0) fail("nu cannot be negative");
    if (!(p.max_filtration > 0.0)) fail("max_filtration must be positive");
    if (p.k_pool < 0 || p.m_pool < 0) fail("pool feature counts cannot be negative");

    const auto& e = cfg.provider;
    if (e.mode == EmbedMode::cache && e.cache_path.empty())
        fail("cache embedding mode needs --embeddings <file>");
    if (e.mode == EmbedMode::http && e.endpoint.empty())
        fail("http embedding mode needs --endpoint <url>");
    if (e.batch_size < 1) fail("batch_size must be at least 1");
    if (e.max_retries < 0) fail("max_retries cannot be negative");
    if (!(e.timeout_seconds > 0.0)) fail("timeout must be positive");
    if (e.backoff_ms < 0) fail("backoff_ms cannot be negative");
    if (e.max_in_flight < 1) fail("max_in_flight must be at least 1");
    if (e.mock_dim < 1) fail("mock_dim must be at least 1");
}

} // namespace toposum
