// Release gate: twelve checks, one printed verdict line each. The binary
// exits nonzero if any check fails. Tolerances are pinned here on purpose;
// do not widen them to make a failing build pass.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "oracles.hpp"
#include "toposum/compressor.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/graph.hpp"
#include "toposum/homology.hpp"
#include "toposum/kernels.hpp"
#include "toposum/pipeline.hpp"
#include "toposum/pool.hpp"
#include "toposum/rouge.hpp"

using namespace toposum;
using json = nlohmann::json;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " " << (id < 10 ? " " : "") << id
              << "/12 " << label;
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

EmbeddingMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    EmbeddingMatrix emb;
    emb.n = rows.size();
    emb.dim = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows) emb.data.insert(emb.data.end(), r.begin(), r.end());
    return emb;
}

EmbeddingMatrix random_matrix(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return oracles::random_unit_rows(n, dim, rng);
}

std::vector<SentenceRecord> plain_sentences(std::size_t n) {
    std::vector<SentenceRecord> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].index = i;
        out[i].text = "Sentence " + std::to_string(i) + " covers item " +
                      std::to_string(i % 9) + ".";
    }
    return out;
}

std::vector<oracles::Bar> library_bars(const PersistenceDiagram& d) {
    std::vector<oracles::Bar> out;
    for (const auto& f : d.dim0) out.push_back({0, f.birth, f.death});
    for (const auto& f : d.dim1) out.push_back({1, f.birth, f.death});
    std::sort(out.begin(), out.end(), [](const oracles::Bar& a, const oracles::Bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

bool bars_equal(const std::vector<oracles::Bar>& a, const std::vector<oracles::Bar>& b,
                double tol, std::string& why) {
    if (a.size() != b.size()) {
        why = "bar count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool ia = std::isinf(a[i].death), ib = std::isinf(b[i].death);
        const bool same_death = (ia && ib) || (!ia && !ib && std::abs(a[i].death - b[i].death) <= tol);
        if (a[i].dim != b[i].dim || std::abs(a[i].birth - b[i].birth) > tol || !same_death) {
            why = "bar " + std::to_string(i) + " differs";
            return false;
        }
    }
    return true;
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = std::string("\"") + TOPOSUM_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// ---- Planted corpus for the ablation-ordering check -----------------------
//
// Layout: 12 cyclically linked "argument" sentences, then 23 topic clusters
// of 4 on-topic sentences plus 2 long off-topic fillers each. Cluster
// directions are orthogonal axes; the fillers form one tight blob on a
// dedicated off-topic axis and carry 20 tokens of vocabulary absent from the
// reference, so they are digressions the summary should drop.

struct PlantedCorpus {
    std::vector<SentenceRecord> sentences;
    EmbeddingMatrix emb;
    std::string reference;
};

PlantedCorpus make_planted_corpus(std::uint64_t seed) {
    constexpr std::size_t kClusters = 23;
    constexpr std::size_t kMembers = 4;
    constexpr std::size_t kFillers = 2;
    constexpr std::size_t kCycle = 12;
    constexpr std::size_t kDim = 30;
    constexpr std::size_t kFillerAxis = kClusters + 2;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto noisy_unit = [&](std::vector<double> base, double eps) {
        for (auto& x : base) x += eps * gauss(rng);
        double nrm = 0.0;
        for (double x : base) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (auto& x : base) x /= nrm;
        return base;
    };

    PlantedCorpus c;
    std::vector<std::vector<double>> rows;
    std::string ref_cycle, ref_clusters;

    for (std::size_t k = 0; k < kCycle; ++k) {
        std::vector<double> p(kDim, 0.0);
        double th = 2.0 * M_PI * static_cast<double>(k) / kCycle;
        p[kClusters] = std::cos(th);
        p[kClusters + 1] = std::sin(th);
        rows.push_back(noisy_unit(p, 0.01));
        std::string text = "claim" + std::to_string(k) + " supports claim" +
                           std::to_string((k + 1) % kCycle) + ".";
        SentenceRecord s;
        s.index = c.sentences.size();
        s.text = text;
        c.sentences.push_back(s);
        ref_cycle += text + " ";
    }
    for (std::size_t cl = 0; cl < kClusters; ++cl) {
        for (std::size_t m = 0; m < kMembers; ++m) {
            std::vector<double> p(kDim, 0.0);
            p[cl] = 1.0;
            rows.push_back(noisy_unit(p, 0.05));
            SentenceRecord s;
            s.index = c.sentences.size();
            s.text = "topic" + std::to_string(cl) + " anchor" + std::to_string(cl) +
                     " detail" + std::to_string(cl * kMembers + m) + ".";
            c.sentences.push_back(s);
        }
        for (std::size_t f = 0; f < kFillers; ++f) {
            std::vector<double> p(kDim, 0.0);
            p[kFillerAxis] = 1.0;
            rows.push_back(noisy_unit(p, 0.03));
            SentenceRecord s;
            s.index = c.sentences.size();
            std::size_t id = cl * kFillers + f;
            std::string filler = "meander" + std::to_string(id);
            for (int t = 0; t < 19; ++t)
                filler += " fluff" + std::to_string(id * 19 + static_cast<std::size_t>(t));
            s.text = filler + ".";
            c.sentences.push_back(s);
        }
        ref_clusters += "topic" + std::to_string(cl) + " anchor" + std::to_string(cl) + ". ";
    }
    c.emb = matrix_from_rows(rows);
    c.reference = ref_cycle + ref_clusters;
    return c;
}

double rouge_l_f1_of(const Summary& s, const std::string& reference) {
    std::string cand;
    for (const auto& t : s.retained_texts) cand += t + " ";
    if (cand.empty()) return 0.0;
    return rouge_l(cand, reference).f1;
}

} // namespace

int main() {
    std::cout << "acceptance gate: 12 checks" << std::endl;

    criterion(1, "reduction matches the rank oracle on 200 random clouds (< 30 s)",
              [](std::string& why) {
        auto start = std::chrono::steady_clock::now();
        std::mt19937_64 rng(20260821);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 3 + rng() % 6; // 3..8
            auto emb = random_matrix(n, 4, rng());
            auto lms = select_landmarks(emb, 1.0, 42); // every point
            auto filt = build_witness_filtration(emb, lms, 0, 3.0);
            auto got = reduce(filt, lms);

            std::vector<double> dist(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    dist[i * n + j] = semantic_distance(emb.row(i), emb.row(j));
            auto rips = oracles::rips_filtration(dist, n, 3.0);
            auto want = oracles::diagram_by_rank(rips, 1e-9);

            if (!bars_equal(library_bars(got), want, 1e-9, why)) {
                why = "trial " + std::to_string(trial) + ": " + why;
                return false;
            }
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        if (secs >= 30.0) {
            why = "took " + std::to_string(secs) + " s";
            return false;
        }
        return true;
    });

    criterion(2, "unit square yields one loop born 1.0 dying 1.41421",
              [](std::string& why) {
        const double a = 1.0 - std::sqrt(2.0);
        const double b = std::sqrt(1.0 - a * a);
        auto emb = matrix_from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {a, 0, b, 0}, {0, a, 0, b}});
        auto lms = select_landmarks(emb, 1.0, 42);
        auto d = reduce(build_witness_filtration(emb, lms, 0, 3.0), lms);
        if (d.dim1.size() != 1) {
            why = "dim1 count " + std::to_string(d.dim1.size());
            return false;
        }
        double birth = d.dim1[0].birth, death = d.dim1[0].death;
        if (std::abs(birth - 1.0) > 1e-6) { why = "birth " + std::to_string(birth); return false; }
        if (std::abs(death - std::sqrt(2.0)) > 1e-6 || std::abs(death - 1.41421) > 1e-5) {
            why = "death " + std::to_string(death);
            return false;
        }
        return true;
    });

    criterion(3, "edge weights match direct evaluation (1000 tuples + both anchors)",
              [](std::string& why) {
        std::mt19937_64 rng(777);
        std::size_t checked = 0;
        while (checked < 1000) {
            std::size_t n = 6 + rng() % 10;
            auto emb = random_matrix(n, 5, rng());
            std::uniform_real_distribution<double> ua(0.0, 1.0), ut(0.5, 20.0);
            double alpha = ua(rng), tau = ut(rng);
            auto g = build_graph(emb, alpha, tau);
            for (std::size_t i = 0; i < n; ++i) {
                for (auto [j, w] : g.adj[i]) {
                    if (j < i) continue;
                    double dsem = semantic_distance(emb.row(i), emb.row(j));
                    double pos = std::exp(-(static_cast<double>(j - i)) / tau);
                    double want = alpha * dsem + (1.0 - alpha) * pos;
                    if (std::abs(w - want) > 1e-12) {
                        why = "weight off by " + std::to_string(std::abs(w - want));
                        return false;
                    }
                    ++checked;
                }
            }
        }
        // Anchor 1: two identical adjacent sentences.
        auto g2 = build_graph(matrix_from_rows({{1, 0}, {1, 0}}), 0.5, 10.0);
        if (g2.adj[0].empty()) { why = "anchor 1 edge missing"; return false; }
        if (std::abs(g2.adj[0][0].second - 0.452419) > 1e-6) {
            why = "anchor 1 " + std::to_string(g2.adj[0][0].second);
            return false;
        }
        // Anchor 2: orthogonal sentences ten positions apart.
        std::vector<std::vector<double>> rows(11, {-std::sqrt(0.5), -std::sqrt(0.5)});
        rows[0] = {1, 0};
        rows[10] = {0, 1};
        auto g3 = build_graph(matrix_from_rows(rows), 0.5, 10.0);
        double w010 = 0.0;
        bool found = false;
        for (auto [j, w] : g3.adj[0])
            if (j == 10) { w010 = w; found = true; }
        if (!found) { why = "anchor 2 edge missing"; return false; }
        if (std::abs(w010 - 0.683940) > 1e-6) {
            why = "anchor 2 " + std::to_string(w010);
            return false;
        }
        return true;
    });

    criterion(4, "Dijkstra equals Floyd-Warshall on 100 graphs (disconnected included)",
              [](std::string& why) {
        std::mt19937_64 rng(31415);
        std::size_t disconnected_seen = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t n = 2 + rng() % 49; // <= 50
            double p = (trial % 2 == 0) ? 0.06 : 0.25;
            auto g = oracles::random_graph(n, p, rng, trial % 3 == 0 ? 0.1 : 0.0);
            auto fw = oracles::floyd_warshall(g);
            for (std::size_t s = 0; s < n; ++s) {
                if (!g.present[s]) continue;
                auto row = kernels::dijkstra(g, s);
                for (std::size_t t = 0; t < n; ++t) {
                    if (!g.present[t]) continue;
                    bool fin_fw = std::isfinite(fw[s][t]);
                    bool fin_dj = std::isfinite(row[t]);
                    if (fin_fw != fin_dj) {
                        why = "reachability mismatch";
                        return false;
                    }
                    if (!fin_fw) {
                        ++disconnected_seen;
                        continue;
                    }
                    if (std::abs(row[t] - fw[s][t]) > 1e-9) {
                        why = "distance off by " + std::to_string(std::abs(row[t] - fw[s][t]));
                        return false;
                    }
                }
            }
        }
        if (disconnected_seen == 0) {
            why = "no disconnected pair was exercised";
            return false;
        }
        return true;
    });

    criterion(5, "pool kept and budget exact over 500 randomized runs",
              [](std::string& why) {
        std::mt19937_64 rng(999);
        for (int trial = 0; trial < 500; ++trial) {
            std::size_t n = 12 + rng() % 39; // 12..50
            std::size_t dim = 3 + rng() % 6;
            auto emb = random_matrix(n, dim, rng());
            auto sents = plain_sentences(n);
            PipelineConfig pipe;
            pipe.seed = rng();
            CompressionConfig comp;
            std::uniform_real_distribution<double> ur(0.15, 1.0), u01(0.0, 1.0);
            comp.target_ratio = (trial % 4 == 0)
                                    ? static_cast<double>(1 + rng() % n) / static_cast<double>(n)
                                    : ur(rng);
            comp.lambda = u01(rng);
            comp.beta = u01(rng);
            comp.seed = rng();
            switch (rng() % 3) {
                case 0: comp.mode = ScoringMode::topo_task; break;
                case 1: comp.mode = ScoringMode::random; break;
                default: comp.mode = ScoringMode::topo_only; break;
            }
            PipelineConfig tweak = pipe;
            tweak.k_pool = static_cast<int>(rng() % 5);
            tweak.m_pool = static_cast<int>(rng() % 5);
            if (rng() % 3 == 0) comp.query = "item 3 sentence";

            auto topo = run_topology(emb, tweak);
            std::vector<double> qe;
            const std::vector<double>* qptr = nullptr;
            if (!comp.query.empty()) {
                qe = mock_embed_text(comp.query, dim, 7);
                qptr = &qe;
            }
            auto s = compress(sents, emb, topo.graph, topo.pool, comp, qptr);

            std::set<std::size_t> retained(s.retained_indices.begin(),
                                           s.retained_indices.end());
            for (auto p : topo.pool.all) {
                if (retained.count(p) == 0) {
                    why = "trial " + std::to_string(trial) + ": pool member deleted";
                    return false;
                }
            }
            double rn = comp.target_ratio * static_cast<double>(n);
            auto ceil_guarded = static_cast<std::size_t>(std::ceil(rn - 1e-9));
            auto ceil_plain = static_cast<std::size_t>(std::ceil(rn));
            std::size_t want_a = std::max(ceil_guarded, topo.pool.all.size());
            std::size_t want_b = std::max(ceil_plain, topo.pool.all.size());
            if (s.retained_indices.size() != want_a && s.retained_indices.size() != want_b) {
                why = "trial " + std::to_string(trial) + ": retained " +
                      std::to_string(s.retained_indices.size()) + " want " +
                      std::to_string(want_a);
                return false;
            }
            if (s.retained_indices.size() + s.deletion_log.size() != n) {
                why = "trial " + std::to_string(trial) + ": log does not cover deletions";
                return false;
            }
        }
        return true;
    });

    criterion(6, "one reduction per flat run, T+1 per hierarchical run",
              [](std::string& why) {
        auto sents40 = plain_sentences(40);
        auto emb40 = random_matrix(40, 6, 1);
        PipelineConfig pipe;
        CompressionConfig comp;
        comp.target_ratio = 0.4;
        reset_reduce_call_count();
        compress_flat(sents40, emb40, pipe, comp, nullptr, "flat");
        if (reduce_call_count() != 1) {
            why = "flat used " + std::to_string(reduce_call_count());
            return false;
        }
        auto sents150 = plain_sentences(150);
        auto emb150 = random_matrix(150, 6, 2);
        comp.segment_target_count = 3;
        reset_reduce_call_count();
        compress_hierarchical(sents150, emb150, {}, pipe, comp, nullptr, "hier");
        if (reduce_call_count() != 4) {
            why = "3-segment run used " + std::to_string(reduce_call_count());
            return false;
        }
        comp.segment_target_count = 0;
        reset_reduce_call_count();
        compress_hierarchical(sents150, emb150, {0, 75}, pipe, comp, nullptr, "hier2");
        if (reduce_call_count() != 3) {
            why = "2-segment run used " + std::to_string(reduce_call_count());
            return false;
        }
        return true;
    });

    criterion(7, "hierarchical equals flat for 50 short documents",
              [](std::string& why) {
        std::mt19937_64 rng(555);
        for (int trial = 0; trial < 50; ++trial) {
            std::size_t n = 5 + rng() % 115; // < 120 threshold
            auto emb = random_matrix(n, 5, rng());
            auto sents = plain_sentences(n);
            PipelineConfig pipe;
            CompressionConfig comp;
            std::uniform_real_distribution<double> ur(0.2, 0.9);
            comp.target_ratio = ur(rng);
            auto flat = compress_flat(sents, emb, pipe, comp, nullptr, "d");
            auto hier = compress_hierarchical(sents, emb, {}, pipe, comp, nullptr, "d");
            if (flat.retained_indices != hier.retained_indices ||
                flat.protected_indices != hier.protected_indices) {
                why = "trial " + std::to_string(trial) + " diverged";
                return false;
            }
        }
        return true;
    });

    criterion(8, "BM25 anchor scores 0.8026 within 1e-3",
              [](std::string& why) {
        std::vector<std::string> docs = {"cats purr softly",
                                         "dogs bark loudly here today often"};
        auto raw = bm25_raw_scores(docs, "cats", 1.2, 0.75);
        double want = std::log(2.0) * (2.2 / 1.9);
        if (std::abs(raw[0] - 0.8026) > 1e-3 || std::abs(raw[0] - want) > 1e-12) {
            why = "got " + std::to_string(raw[0]);
            return false;
        }
        if (raw[1] != 0.0) {
            why = "absent-term doc scored " + std::to_string(raw[1]);
            return false;
        }
        return true;
    });

    criterion(9, "overlap metrics reproduce hand-worked anchors and bounds",
              [](std::string& why) {
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
        auto r1 = rouge_n("a b c", "a b d", 1);
        if (!close(r1.f1, 2.0 / 3.0)) { why = "unigram anchor"; return false; }
        auto rl = rouge_l("a b c d", "a c b d");
        if (!close(rl.f1, 0.75)) { why = "subsequence anchor"; return false; }
        auto rp = rouge_l("a b c d", "a b");
        if (!close(rp.recall, 1.0) || !close(rp.precision, 0.5)) {
            why = "prefix anchor";
            return false;
        }
        std::mt19937_64 rng(123);
        for (int i = 0; i < 100; ++i) {
            auto word = [&](int v) { return "w" + std::to_string(v); };
            std::string a, b;
            std::size_t la = 1 + rng() % 12, lb = 1 + rng() % 12;
            for (std::size_t t = 0; t < la; ++t) a += word(static_cast<int>(rng() % 8)) + " ";
            for (std::size_t t = 0; t < lb; ++t) b += word(static_cast<int>(rng() % 8)) + " ";
            for (const auto& s : {rouge_n(a, b, 1), rouge_l(a, b)}) {
                if (s.precision < 0 || s.precision > 1 || s.recall < 0 || s.recall > 1 ||
                    s.f1 < 0 || s.f1 > 1) {
                    why = "score out of range";
                    return false;
                }
            }
            if (!close(rouge_l(a, a).f1, 1.0)) { why = "identity bound"; return false; }
            std::string c;
            for (std::size_t t = 0; t < lb; ++t) c += "z" + std::to_string(rng() % 8) + " ";
            if (rouge_n(a, c, 1).f1 != 0.0) { why = "disjoint bound"; return false; }
        }
        return true;
    });

    criterion(10, "byte-identical outputs on repeated runs (random mode included)",
              [](std::string& why) {
        struct Case {
            std::size_t n;
            ScoringMode mode;
            bool hierarchical;
            int k_pool;
            const char* query;
        };
        std::vector<Case> cases = {{40, ScoringMode::topo_task, false, 3, "item 4"},
                                   {30, ScoringMode::random, false, 3, ""},
                                   {150, ScoringMode::topo_task, true, 3, ""},
                                   {25, ScoringMode::topo_only, false, 3, ""},
                                   {20, ScoringMode::topo_task, false, 0, ""}};
        int case_id = 0;
        for (const auto& c : cases) {
            auto once = [&](std::string& summary_json, std::string& log_jsonl) {
                auto sents = plain_sentences(c.n);
                EmbeddingProviderConfig prov;
                prov.mode = EmbedMode::mock;
                prov.mock_dim = 16;
                prov.seed = 42;
                auto emb = embed_sentences(sents, prov);
                PipelineConfig pipe;
                pipe.k_pool = c.k_pool;
                pipe.m_pool = c.k_pool;
                CompressionConfig comp;
                comp.target_ratio = 0.35;
                comp.mode = c.mode;
                comp.query = c.query;
                comp.segment_target_count = 3;
                std::vector<double> qe;
                const std::vector<double>* qptr = nullptr;
                if (!comp.query.empty()) {
                    qe = embed_query(comp.query, c.n, prov);
                    qptr = &qe;
                }
                Summary s = c.hierarchical
                                ? compress_hierarchical(sents, emb, {}, pipe, comp, qptr, "doc")
                                : compress_flat(sents, emb, pipe, comp, qptr, "doc");
                summary_json = summary_to_json(s);
                log_jsonl = deletion_log_jsonl(s);
            };
            std::string j1, l1, j2, l2;
            once(j1, l1);
            once(j2, l2);
            if (j1 != j2 || l1 != l2) {
                why = "case " + std::to_string(case_id) + " not reproducible";
                return false;
            }
            ++case_id;
        }
        return true;
    });

    criterion(11, "planted corpus: full ordering beats pool-less and random (>= 45/50)",
              [](std::string& why) {
        int hold = 0;
        for (std::uint64_t draw = 0; draw < 50; ++draw) {
            auto corpus = make_planted_corpus(1000 + draw);
            PipelineConfig pipe;
            pipe.alpha = 1.0;
            pipe.seed = 42;
            CompressionConfig comp;
            comp.target_ratio = 0.3;
            comp.hierarchy_enabled = false;

            auto full = compress_flat(corpus.sentences, corpus.emb, pipe, comp, nullptr, "p");

            PipelineConfig no_pool_pipe = pipe;
            no_pool_pipe.k_pool = 0;
            no_pool_pipe.m_pool = 0;
            auto no_pool =
                compress_flat(corpus.sentences, corpus.emb, no_pool_pipe, comp, nullptr, "p");

            CompressionConfig rand_comp = comp;
            rand_comp.mode = ScoringMode::random;
            rand_comp.seed = 100 + draw;
            auto randed =
                compress_flat(corpus.sentences, corpus.emb, pipe, rand_comp, nullptr, "p");

            double f_full = rouge_l_f1_of(full, corpus.reference);
            double f_nopool = rouge_l_f1_of(no_pool, corpus.reference);
            double f_rand = rouge_l_f1_of(randed, corpus.reference);
            if (f_full >= f_nopool - 1e-12 && f_full >= f_rand - 1e-12) ++hold;
        }
        if (hold < 45) {
            why = "ordering held on only " + std::to_string(hold) + "/50 draws";
            return false;
        }
        return true;
    });

    criterion(12, "bundled toy document reproduces the committed snapshot",
              [](std::string& why) {
        namespace fs = std::filesystem;
        fs::path data_dir = TOPOSUM_DATA_DIR;
        fs::path doc = data_dir / "toy.txt";
        fs::path snap = data_dir / "toy_summary.json";
        if (!fs::exists(doc) || !fs::exists(snap)) {
            why = "missing bundled files under " + data_dir.string();
            return false;
        }
        auto out_path = fs::temp_directory_path() /
                        ("toposum_accept_" + std::to_string(::getpid()) + ".json");
        auto r = run_cli("summarize --input \"" + doc.string() +
                         "\" --ratio 0.4 --embed-mode mock --seed 42 --out \"" +
                         out_path.string() + "\"");
        if (r.code != 0) {
            why = "summarize exited " + std::to_string(r.code);
            return false;
        }
        std::ifstream got_f(out_path, std::ios::binary), want_f(snap, std::ios::binary);
        std::stringstream got, want;
        got << got_f.rdbuf();
        want << want_f.rdbuf();
        fs::remove(out_path);
        if (got.str() != want.str()) {
            why = "output differs from the committed snapshot";
            return false;
        }
        return true;
    });

    if (g_failures == 0) {
        std::cout << "acceptance: 12/12 passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << (12 - g_failures) << "/12 passed, " << g_failures
              << " failed" << std::endl;
    return 1;
}
