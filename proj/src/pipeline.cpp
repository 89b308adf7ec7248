#include "toposum/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "echo_detail.hpp"
#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

TopologyResult run_topology(const EmbeddingMatrix& emb, const PipelineConfig& cfg) {
    TopologyResult out;
    out.landmarks = select_landmarks(emb, cfg.landmark_proportion, cfg.seed);
    out.graph = build_graph(emb, cfg.alpha, cfg.tau);
    const auto filtration =
        build_witness_filtration(emb, out.landmarks, cfg.nu, cfg.max_filtration);
    out.diagram = reduce(filtration, out.landmarks);
    out.pool = build_pool(out.diagram, cfg.k_pool, cfg.m_pool);
    return out;
}

namespace {

std::string two_stage_echo(const PipelineConfig& pipe, const CompressionConfig& comp) {
    nlohmann::json echo;
    echo["pipeline"] = detail::pipeline_echo(pipe);
    echo["compression"] = detail::compression_echo(comp);
    return echo.dump();
}

} // namespace

Summary compress_flat(const std::vector<SentenceRecord>& sentences,
                      const EmbeddingMatrix& emb, const PipelineConfig& pipe,
                      const CompressionConfig& comp,
                      const std::vector<double>* query_embedding,
                      const std::string& document_id) {
    auto topo = run_topology(emb, pipe);
    Summary s = compress(sentences, emb, topo.graph, topo.pool, comp, query_embedding);
    s.document_id = document_id;
    s.hierarchical = false;
    s.config_echo_json = two_stage_echo(pipe, comp);
    return s;
}

std::vector<std::pair<std::size_t, std::size_t>> plan_segments(
    const std::vector<SentenceRecord>& sentences,
    const std::vector<std::size_t>& segment_markers, int segment_target_count) {
    const std::size_t n = sentences.size();
    std::vector<std::pair<std::size_t, std::size_t>> segs;
    if (n == 0) return segs;

    if (!segment_markers.empty()) {
        std::vector<std::size_t> bounds;
        bounds.push_back(0);
        for (std::size_t m : segment_markers)
            if (m < n) bounds.push_back(m);
        bounds.push_back(n);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
            segs.emplace_back(bounds[i], bounds[i + 1]);
        return segs;
    }

    std::size_t count =
        segment_target_count > 0
            ? static_cast<std::size_t>(segment_target_count)
            : static_cast<std::size_t>(
                  std::ceil(static_cast<double>(n) / 120.0));
    count = std::clamp<std::size_t>(count, 1, n);
    const std::size_t block = (n + count - 1) / count;
    for (std::size_t begin = 0; begin < n; begin += block)
        segs.emplace_back(begin, std::min(n, begin + block));
    return segs;
}

Summary compress_hierarchical(const std::vector<SentenceRecord>& sentences,
                              const EmbeddingMatrix& emb,
                              const std::vector<std::size_t>& segment_markers,
                              const PipelineConfig& pipe, const CompressionConfig& comp,
                              const std::vector<double>* query_embedding,
                              const std::string& document_id) {
    const std::size_t n = sentences.size();
    if (n < comp.hierarchy_threshold) {
        Summary s = compress_flat(sentences, emb, pipe, comp, query_embedding,
                                  document_id);
        s.hierarchical = true;
        return s;
    }

    const auto segs = plan_segments(sentences, segment_markers, comp.segment_target_count);

    CompressionConfig local_cfg = comp;
    local_cfg.target_ratio =
        std::max(std::sqrt(comp.target_ratio), comp.local_ratio_floor);

    std::vector<DeletionEvent> events;
    std::vector<std::size_t> survivor_positions;
    for (std::size_t t = 0; t < segs.size(); ++t) {
        const auto [b, e] = segs[t];
        std::vector<std::size_t> positions(e - b);
        std::iota(positions.begin(), positions.end(), b);
        if (e - b < 2) { // too small for topology; keep as-is
            survivor_positions.insert(survivor_positions.end(), positions.begin(),
                                      positions.end());
            continue;
        }
        const std::vector<SentenceRecord> sub(sentences.begin() +
                                                  static_cast<std::ptrdiff_t>(b),
                                              sentences.begin() +
                                                  static_cast<std::ptrdiff_t>(e));
        const auto sub_emb = emb.select(positions);
        auto topo = run_topology(sub_emb, pipe);
        Summary local =
            compress(sub, sub_emb, topo.graph, topo.pool, local_cfg, query_embedding);
        for (auto& ev : local.deletion_log) {
            ev.segment = static_cast<int>(t);
            events.push_back(std::move(ev));
        }
        // Map the survivors' record indices back to document positions.
        std::map<std::size_t, std::size_t> index_to_position;
        for (std::size_t p = b; p < e; ++p)
            index_to_position[sentences[p].index] = p;
        for (std::size_t idx : local.retained_indices)
            survivor_positions.push_back(index_to_position.at(idx));
    }
    std::sort(survivor_positions.begin(), survivor_positions.end());

    std::vector<SentenceRecord> global_records;
    global_records.reserve(survivor_positions.size());
    for (std::size_t p : survivor_positions) global_records.push_back(sentences[p]);
    const auto global_emb = emb.select(survivor_positions);

    CompressionConfig global_cfg = comp;
    global_cfg.target_ratio =
        std::min(1.0, comp.target_ratio * static_cast<double>(n) /
                          static_cast<double>(survivor_positions.size()));

    auto topo = run_topology(global_emb, pipe);
    Summary s = compress(global_records, global_emb, topo.graph, topo.pool, global_cfg,
                         query_embedding);
    for (auto& ev : s.deletion_log) {
        ev.segment = -1;
        events.push_back(std::move(ev));
    }
    s.deletion_log = std::move(events);
    s.document_id = document_id;
    s.hierarchical = true;
    s.config_echo_json = two_stage_echo(pipe, comp);
    return s;
}

} // namespace toposum
