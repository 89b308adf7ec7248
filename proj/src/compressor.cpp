#include "toposum/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "echo_detail.hpp"
#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"
#include "toposum/kernels.hpp"
#include "toposum/rouge.hpp"

namespace toposum {

std::vector<double> bm25_raw_scores(const std::vector<std::string>& sentence_texts,
                                    const std::string& query, double k1, double b) {
    const std::size_t n = sentence_texts.size();
    std::vector<std::vector<std::string>> docs(n);
    double total_len = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        docs[i] = rouge_tokenize(sentence_texts[i]);
        total_len += static_cast<double>(docs[i].size());
    }
    const double avgdl = n ? total_len / static_cast<double>(n) : 0.0;
    const auto query_terms = rouge_tokenize(query);

    // Document frequency per distinct query term.
    std::map<std::string, std::size_t> df;
    for (const auto& term : query_terms) df.emplace(term, 0);
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (auto& [term, count] : df)
            if (seen.count(term)) ++count;
    }

    std::vector<double> out(n, 0.0);
    if (avgdl == 0.0) return out;
    for (std::size_t i = 0; i < n; ++i) {
        const double dl = static_cast<double>(docs[i].size());
        double score = 0.0;
        for (const auto& [term, dfreq] : df) {
            const double tf = static_cast<double>(
                std::count(docs[i].begin(), docs[i].end(), term));
            if (tf == 0.0) continue;
            const double idf =
                std::log((static_cast<double>(n) - static_cast<double>(dfreq) + 0.5) /
                             (static_cast<double>(dfreq) + 0.5) +
                         1.0);
            score += idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * dl / avgdl));
        }
        out[i] = score;
    }
    return out;
}

std::vector<double> min_max_normalize(const std::vector<double>& raw) {
    if (raw.empty()) return {};
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(raw.size(), 0.0);
    if (hi - lo < 1e-12) return out;
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / (hi - lo);
    return out;
}

double topo_score(const SemanticGraph& g, std::size_t i,
                  const std::vector<std::size_t>& pool, double penalty) {
    if (pool.empty()) throw EmptyPool("topology score needs a non-empty pool");
    const auto dist = kernels::dijkstra(g, i);
    double score = 0.0;
    std::size_t unreachable = 0;
    for (std::size_t p : pool) {
        if (std::isinf(dist[p]))
            ++unreachable;
        else
            score -= dist[p];
    }
    if (unreachable == pool.size()) return penalty;
    return score + static_cast<double>(unreachable) * penalty /
                       static_cast<double>(pool.size());
}

std::vector<double> topo_scores_all(const SemanticGraph& g,
                                    const std::vector<std::size_t>& pool,
                                    double penalty) {
    if (pool.empty()) throw EmptyPool("topology scores need a non-empty pool");
    const auto rows = kernels::pool_distances(g, pool);
    std::vector<double> out(g.n_total, std::numeric_limits<double>::quiet_NaN());
    std::set<std::size_t> in_pool(pool.begin(), pool.end());
    for (std::size_t i = 0; i < g.n_total; ++i) {
        if (!g.present[i] || in_pool.count(i)) continue;
        double score = 0.0;
        std::size_t unreachable = 0;
        for (std::size_t r = 0; r < pool.size(); ++r) {
            if (std::isinf(rows[r][i]))
                ++unreachable;
            else
                score -= rows[r][i];
        }
        if (unreachable == pool.size())
            out[i] = penalty;
        else
            out[i] = score + static_cast<double>(unreachable) * penalty /
                                 static_cast<double>(pool.size());
    }
    return out;
}

std::vector<double> task_scores(const std::vector<SentenceRecord>& sentences,
                                const EmbeddingMatrix& emb,
                                const std::vector<double>* query_embedding,
                                const CompressionConfig& cfg) {
    const std::size_t n = sentences.size();
    if (cfg.query.empty()) return std::vector<double>(n, 0.0);
    std::vector<std::string> texts;
    texts.reserve(n);
    for (const auto& s : sentences) texts.push_back(s.text);
    const auto bm25_norm =
        min_max_normalize(bm25_raw_scores(texts, cfg.query, cfg.bm25_k1, cfg.bm25_b));
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double dense =
            query_embedding ? cosine(emb.row(i), *query_embedding) : 0.0;
        out[i] = cfg.beta * dense + (1.0 - cfg.beta) * bm25_norm[i];
    }
    return out;
}

Summary compress(const std::vector<SentenceRecord>& sentences,
                 const EmbeddingMatrix& emb, const SemanticGraph& g,
                 const ProtectedPool& pool, const CompressionConfig& cfg,
                 const std::vector<double>* query_embedding) {
    const std::size_t n = sentences.size();
    const std::size_t ceil_budget = static_cast<std::size_t>(
        std::ceil(cfg.target_ratio * static_cast<double>(n) - 1e-9));
    const std::size_t budget = std::max(ceil_budget, pool.all.size());
    if (pool.all.size() > ceil_budget) {
        if (cfg.strict_budget)
            throw PoolExceedsBudget(
                "protected pool of " + std::to_string(pool.all.size()) +
                " sentences exceeds the retention budget of " +
                std::to_string(ceil_budget));
        std::cerr << "warning: protected pool (" << pool.all.size()
                  << ") exceeds the retention budget (" << ceil_budget
                  << "); keeping the whole pool\n";
    }

    const std::set<std::size_t> pool_positions(pool.all.begin(), pool.all.end());
    const auto task =
        cfg.mode == ScoringMode::random
            ? std::vector<double>(n, 0.0)
            : task_scores(sentences, emb, query_embedding, cfg);

    SemanticGraph graph = g;
    std::vector<char> active(n, 1);
    std::size_t n_active = n;
    std::vector<std::optional<double>> last_score(n);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Summary out;
    std::size_t iter = 0;
    while (n_active > budget) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < n; ++i)
            if (active[i] && !pool_positions.count(i)) candidates.push_back(i);

        std::vector<double> score(candidates.size(), 0.0);
        std::vector<double> topo_raw(candidates.size(), 0.0);
        std::vector<double> topo_norm(candidates.size(), 0.0);
        if (cfg.mode == ScoringMode::random) {
            for (double& s : score) s = unit(rng);
        } else {
            if (!pool.all.empty()) {
                const auto all_raw =
                    topo_scores_all(graph, pool.all, cfg.disconnect_penalty);
                for (std::size_t c = 0; c < candidates.size(); ++c)
                    topo_raw[c] = all_raw[candidates[c]];
                topo_norm = min_max_normalize(topo_raw);
            }
            for (std::size_t c = 0; c < candidates.size(); ++c)
                score[c] = cfg.mode == ScoringMode::topo_only
                               ? topo_norm[c]
                               : cfg.lambda * topo_norm[c] +
                                     (1.0 - cfg.lambda) * task[candidates[c]];
        }
        for (std::size_t c = 0; c < candidates.size(); ++c)
            last_score[candidates[c]] = score[c];

        std::size_t pick = 0;
        for (std::size_t c = 1; c < candidates.size(); ++c)
            if (score[c] < score[pick]) pick = c;
        const bool tie =
            std::count(score.begin(), score.end(), score[pick]) > 1;

        DeletionEvent ev;
        ev.iter = iter++;
        ev.index = sentences[candidates[pick]].index;
        ev.score = score[pick];
        ev.topo_raw = topo_raw[pick];
        ev.topo_norm = topo_norm[pick];
        ev.task = cfg.mode == ScoringMode::random ? 0.0 : task[candidates[pick]];
        ev.tie_broken = tie;
        out.deletion_log.push_back(std::move(ev));

        graph = remove_node(graph, candidates[pick]);
        active[candidates[pick]] = 0;
        --n_active;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        out.retained_indices.push_back(sentences[i].index);
        out.retained_texts.push_back(sentences[i].text);
        out.retained_scores.push_back(pool_positions.count(i) ? std::nullopt
                                                              : last_score[i]);
    }
    for (std::size_t p : pool.all)
        if (p < n) out.protected_indices.push_back(sentences[p].index);
    std::sort(out.protected_indices.begin(), out.protected_indices.end());

    nlohmann::json echo;
    echo["compression"] = detail::compression_echo(cfg);
    out.config_echo_json = echo.dump();
    return out;
}

std::string summary_to_json(const Summary& s) {
    if (s.retained_indices.empty())
        throw RefusedEmptySummary("summary for document '" + s.document_id +
                                  "' retains no sentences");
    nlohmann::json j;
    j["document_id"] = s.document_id;
    j["hierarchical"] = s.hierarchical;
    j["retained_indices"] = s.retained_indices;
    j["protected_indices"] = s.protected_indices;
    j["sentences"] = s.retained_texts;
    auto scores = nlohmann::json::array();
    for (const auto& v : s.retained_scores) {
        if (v)
            scores.push_back(*v);
        else
            scores.push_back(nullptr);
    }
    j["scores"] = std::move(scores);
    auto log = nlohmann::json::array();
    for (const auto& e : s.deletion_log) {
        nlohmann::json ev;
        ev["iter"] = e.iter;
        ev["index"] = e.index;
        ev["score"] = e.score;
        ev["topo_raw"] = e.topo_raw;
        ev["topo_norm"] = e.topo_norm;
        ev["task"] = e.task;
        ev["tie_broken"] = e.tie_broken;
        if (e.segment) ev["segment"] = *e.segment;
        log.push_back(std::move(ev));
    }
    j["deletion_log"] = std::move(log);
    nlohmann::json echo;
    if (!s.config_echo_json.empty()) {
        echo = nlohmann::json::parse(s.config_echo_json, nullptr,
                                     /*allow_exceptions=*/false);
        if (echo.is_discarded()) echo = s.config_echo_json;
    }
    j["config_echo"] = std::move(echo);
    return j.dump(2);
}

void write_summary(const Summary& s, const std::string& path,
                   const std::string& format) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write summary: " + path);
    if (format == "plain_text") {
        if (s.retained_indices.empty())
            throw RefusedEmptySummary("summary for document '" + s.document_id +
                                      "' retains no sentences");
        for (const auto& text : s.retained_texts) file << text << "\n";
    } else {
        file << summary_to_json(s) << "\n";
    }
}

std::string deletion_log_jsonl(const Summary& s) {
    std::string out;
    for (const auto& e : s.deletion_log) {
        nlohmann::json ev;
        ev["iter"] = e.iter;
        ev["index"] = e.index;
        ev["score"] = e.score;
        ev["topo_raw"] = e.topo_raw;
        ev["topo_norm"] = e.topo_norm;
        ev["task"] = e.task;
        ev["tie_broken"] = e.tie_broken;
        if (e.segment) ev["segment"] = *e.segment;
        out += ev.dump();
        out += "\n";
    }
    return out;
}

} // namespace toposum
