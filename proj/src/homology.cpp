#include "toposum/homology.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>

#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"
#include "toposum/kernels.hpp"

namespace toposum {

namespace {

std::atomic<std::uint64_t> g_reduce_calls{0};

} // namespace

std::uint64_t reduce_call_count() { return g_reduce_calls.load(); }
void reset_reduce_call_count() { g_reduce_calls.store(0); }

LandmarkSet select_landmarks(const EmbeddingMatrix& emb, double proportion,
                             std::uint64_t seed) {
    if (emb.n < 2)
        throw TooFewSentences("landmark selection needs at least 2 sentences, got " +
                              std::to_string(emb.n));
    const std::size_t floor_count = std::min<std::size_t>(emb.n, 10);
    const std::size_t want = std::max<std::size_t>(
        static_cast<std::size_t>(
            std::ceil(proportion * static_cast<double>(emb.n) - 1e-12)),
        floor_count);
    const std::size_t count = std::min(want, emb.n);

    LandmarkSet lm;
    lm.proportion = proportion;
    lm.seed = seed;

    // Seed point: the row closest to the normalized centroid direction.
    std::vector<double> centroid(emb.dim, 0.0);
    for (std::size_t i = 0; i < emb.n; ++i)
        for (std::size_t d = 0; d < emb.dim; ++d) centroid[d] += emb.row(i)[d];
    double cnorm = 0.0;
    for (double x : centroid) cnorm += x * x;
    std::size_t first = 0;
    if (cnorm >= 1e-12 * 1e-12 && std::sqrt(cnorm) >= 1e-12) {
        const double inv = 1.0 / std::sqrt(cnorm);
        for (double& x : centroid) x *= inv;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < emb.n; ++i) {
            const double d = semantic_distance(emb.row(i), centroid);
            if (d < best) {
                best = d;
                first = i;
            }
        }
    }
    lm.indices.push_back(first);

    // Farthest-point iterations: maximize distance to the selected set.
    std::vector<double> min_dist(emb.n);
    for (std::size_t i = 0; i < emb.n; ++i)
        min_dist[i] = semantic_distance(emb.row(i), emb.row(first));
    std::vector<char> chosen(emb.n, 0);
    chosen[first] = 1;
    while (lm.indices.size() < count) {
        std::size_t pick = emb.n;
        double best = -1.0;
        for (std::size_t i = 0; i < emb.n; ++i) {
            if (chosen[i]) continue;
            if (min_dist[i] > best) {
                best = min_dist[i];
                pick = i;
            }
        }
        chosen[pick] = 1;
        lm.indices.push_back(pick);
        for (std::size_t i = 0; i < emb.n; ++i)
            if (!chosen[i])
                min_dist[i] =
                    std::min(min_dist[i], semantic_distance(emb.row(i), emb.row(pick)));
    }
    return lm;
}

Filtration build_witness_filtration(const EmbeddingMatrix& emb,
                                    const LandmarkSet& landmarks, int nu,
                                    double max_value) {
    std::vector<std::size_t> sorted = landmarks.indices;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t L = sorted.size();

    Filtration f;
    f.n_vertices = L;
    f.max_value = max_value;
    for (std::uint32_t v = 0; v < L; ++v)
        f.simplices.push_back({0.0, 0, {v, 0, 0}});

    const auto edge_vals = kernels::witness_edge_values(emb, landmarks.indices, nu);
    // Dense pair-rank lookup for triangle assembly.
    auto pair_rank = [L](std::size_t i, std::size_t j) {
        return i * L - i * (i + 1) / 2 + (j - i) - 1;
    };
    std::vector<char> edge_kept(edge_vals.size(), 0);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) {
            const double val = edge_vals[pair_rank(i, j)];
            if (val <= max_value) {
                edge_kept[pair_rank(i, j)] = 1;
                f.simplices.push_back({val, 1,
                                       {static_cast<std::uint32_t>(i),
                                        static_cast<std::uint32_t>(j), 0}});
            }
        }
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j) {
            if (!edge_kept[pair_rank(i, j)]) continue;
            for (std::size_t k = j + 1; k < L; ++k) {
                if (!edge_kept[pair_rank(i, k)] || !edge_kept[pair_rank(j, k)]) continue;
                const double val =
                    std::max({edge_vals[pair_rank(i, j)], edge_vals[pair_rank(i, k)],
                              edge_vals[pair_rank(j, k)]});
                f.simplices.push_back({val, 2,
                                       {static_cast<std::uint32_t>(i),
                                        static_cast<std::uint32_t>(j),
                                        static_cast<std::uint32_t>(k)}});
            }
        }
    std::sort(f.simplices.begin(), f.simplices.end(),
              [](const Simplex& a, const Simplex& b) {
                  if (a.value != b.value) return a.value < b.value;
                  if (a.dim != b.dim) return a.dim < b.dim;
                  return a.v < b.v;
              });
    return f;
}

namespace {

// Union-find over vertex positions with elder tracking and member lists.
struct Components {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> elder;                 // min vertex id per root
    std::vector<std::vector<std::uint32_t>> members; // vertex ids per root

    explicit Components(std::size_t n) : parent(n), elder(n), members(n) {
        std::iota(parent.begin(), parent.end(), 0);
        std::iota(elder.begin(), elder.end(), 0);
        for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<std::uint32_t>(v)};
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
};

} // namespace

PersistenceDiagram reduce(const Filtration& f, const LandmarkSet& landmarks) {
    g_reduce_calls.fetch_add(1);

    std::vector<std::size_t> sorted = landmarks.indices;
    std::sort(sorted.begin(), sorted.end());
    auto to_sentence = [&](std::uint32_t local) -> std::size_t {
        return local < sorted.size() ? sorted[local] : local;
    };

    const std::size_t S = f.simplices.size();
    // Face positions must exist before their cofaces.
    std::map<std::uint32_t, std::size_t> vertex_pos;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_pos;
    for (std::size_t p = 0; p < S; ++p) {
        const Simplex& s = f.simplices[p];
        if (s.dim == 0) {
            vertex_pos[s.v[0]] = p;
        } else if (s.dim == 1) {
            if (!vertex_pos.count(s.v[0]) || !vertex_pos.count(s.v[1]))
                throw InvalidFiltration("edge at position " + std::to_string(p) +
                                        " precedes one of its vertices");
            edge_pos[{s.v[0], s.v[1]}] = p;
        } else {
            if (!edge_pos.count({s.v[0], s.v[1]}) || !edge_pos.count({s.v[0], s.v[2]}) ||
                !edge_pos.count({s.v[1], s.v[2]}))
                throw InvalidFiltration("triangle at position " + std::to_string(p) +
                                        " precedes one of its edges");
        }
    }

    PersistenceDiagram out;

    // --- H0 by the elder rule -------------------------------------------
    Components comps(f.n_vertices);
    std::vector<std::size_t> creator_edges; // positions of cycle-creating edges
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> forest(
        f.n_vertices); // vertex -> (neighbour, merge-edge position)
    for (std::size_t p = 0; p < S; ++p) {
        const Simplex& s = f.simplices[p];
        if (s.dim != 1) continue;
        const std::size_t ra = comps.find(s.v[0]);
        const std::size_t rb = comps.find(s.v[1]);
        if (ra == rb) {
            creator_edges.push_back(p);
            continue;
        }
        // The component with the larger elder vertex id dies.
        const std::size_t dying = comps.elder[ra] > comps.elder[rb] ? ra : rb;
        const std::size_t living = dying == ra ? rb : ra;
        if (s.value >= k_noise_floor) {
            PersistenceFeature bar;
            bar.dimension = 0;
            bar.birth = 0.0;
            bar.death = s.value;
            for (std::uint32_t v : comps.members[dying])
                bar.members.push_back(to_sentence(v));
            std::sort(bar.members.begin(), bar.members.end());
            out.dim0.push_back(std::move(bar));
        }
        comps.parent[dying] = living;
        comps.elder[living] = std::min(comps.elder[living], comps.elder[dying]);
        auto& dst = comps.members[living];
        auto& src = comps.members[dying];
        dst.insert(dst.end(), src.begin(), src.end());
        src.clear();
        src.shrink_to_fit();
        forest[s.v[0]].emplace_back(s.v[1], p);
        forest[s.v[1]].emplace_back(s.v[0], p);
    }
    // Surviving components become infinite bars.
    for (std::size_t v = 0; v < f.n_vertices; ++v) {
        if (comps.find(v) != v) continue;
        PersistenceFeature bar;
        bar.dimension = 0;
        bar.birth = 0.0;
        bar.death = k_infinite_death;
        for (std::uint32_t m : comps.members[v]) bar.members.push_back(to_sentence(m));
        std::sort(bar.members.begin(), bar.members.end());
        out.dim0.push_back(std::move(bar));
    }

    // --- H1 by column reduction over triangle columns -------------------
    // Lows of triangle columns are edge positions; columns of different
    // dimension can never collide, so reducing triangles alone is the full
    // standard reduction restricted to dimension 2.
    std::map<std::size_t, std::vector<std::size_t>> low_to_col; // low pos -> reduced col
    std::set<std::size_t> paired_edges;
    for (std::size_t p = 0; p < S; ++p) {
        const Simplex& s = f.simplices[p];
        if (s.dim != 2) continue;
        std::vector<std::size_t> col = {edge_pos.at({s.v[0], s.v[1]}),
                                        edge_pos.at({s.v[0], s.v[2]}),
                                        edge_pos.at({s.v[1], s.v[2]})};
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            auto it = low_to_col.find(col.back());
            if (it == low_to_col.end()) break;
            // Symmetric difference with the earlier column sharing this low.
            std::vector<std::size_t> merged;
            std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(),
                                          it->second.end(), std::back_inserter(merged));
            col = std::move(merged);
        }
        if (col.empty()) continue; // creator of a 2-cycle; out of scope here
        const std::size_t low = col.back();
        paired_edges.insert(low);
        const double birth = f.simplices[low].value;
        const double death = s.value;
        if (death - birth >= k_noise_floor) {
            PersistenceFeature bar;
            bar.dimension = 1;
            bar.birth = birth;
            bar.death = death;
            std::set<std::size_t> verts;
            for (std::size_t ep : col) {
                verts.insert(to_sentence(f.simplices[ep].v[0]));
                verts.insert(to_sentence(f.simplices[ep].v[1]));
            }
            bar.members.assign(verts.begin(), verts.end());
            out.dim1.push_back(std::move(bar));
        }
        low_to_col[low] = std::move(col);
    }
    // Unpaired creator edges leave infinite loops; their representative is
    // the tree path between the endpoints (earlier merge edges) plus the
    // edge itself.
    for (std::size_t p : creator_edges) {
        if (paired_edges.count(p)) continue;
        const Simplex& e = f.simplices[p];
        // BFS from one endpoint to the other through merge edges older than p.
        std::vector<std::int64_t> from(f.n_vertices, -1);
        std::vector<std::uint32_t> queue = {e.v[0]};
        from[e.v[0]] = e.v[0];
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::uint32_t u = queue[qi];
            for (const auto& [nb, ep] : forest[u]) {
                if (ep >= p || from[nb] != -1) continue;
                from[nb] = u;
                queue.push_back(nb);
            }
        }
        PersistenceFeature bar;
        bar.dimension = 1;
        bar.birth = e.value;
        bar.death = k_infinite_death;
        std::set<std::size_t> verts = {to_sentence(e.v[0]), to_sentence(e.v[1])};
        for (std::uint32_t walk = e.v[1]; from[walk] != -1 &&
                                          static_cast<std::uint32_t>(from[walk]) != walk;
             walk = static_cast<std::uint32_t>(from[walk]))
            verts.insert(to_sentence(walk));
        bar.members.assign(verts.begin(), verts.end());
        out.dim1.push_back(std::move(bar));
    }

    // Persistence compared in cross-sum form so exact-arithmetic ties stay
    // ties under rounding; matches the protected-pool ranking.
    auto order = [](const PersistenceFeature& a, const PersistenceFeature& b) {
        const bool ia = a.infinite(), ib = b.infinite();
        if (ia != ib) return ia;
        if (!ia && a.death + b.birth != b.death + a.birth)
            return a.death + b.birth > b.death + a.birth;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.members < b.members;
    };
    std::sort(out.dim0.begin(), out.dim0.end(), order);
    std::sort(out.dim1.begin(), out.dim1.end(), order);
    return out;
}

namespace {

// Rank of a Z2 matrix given as columns of row indices.
std::size_t z2_rank_cols(std::vector<std::vector<std::size_t>> cols, std::size_t n_rows) {
    const std::size_t words = (n_rows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis; // reduced pivot columns
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (auto& col : cols) {
        std::vector<std::uint64_t> bits(words, 0);
        for (std::size_t r : col) bits[r / 64] ^= (1ull << (r % 64));
        auto highest = [&]() -> std::ptrdiff_t {
            for (std::ptrdiff_t w = static_cast<std::ptrdiff_t>(words) - 1; w >= 0; --w)
                if (bits[static_cast<std::size_t>(w)])
                    return w * 64 + (63 - __builtin_clzll(bits[static_cast<std::size_t>(w)]));
            return -1;
        };
        std::ptrdiff_t h = highest();
        while (h >= 0) {
            bool reduced = false;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                if (pivots[b] == static_cast<std::size_t>(h)) {
                    for (std::size_t w = 0; w < words; ++w) bits[w] ^= basis[b][w];
                    reduced = true;
                    break;
                }
            }
            if (!reduced) break;
            h = highest();
        }
        if (h >= 0) {
            basis.push_back(bits);
            pivots.push_back(static_cast<std::size_t>(h));
            ++rank;
        }
    }
    return rank;
}

} // namespace

std::pair<std::size_t, std::size_t> betti_numbers_at(const Filtration& f, double t) {
    std::map<std::uint32_t, std::size_t> vid;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> eid;
    std::vector<std::vector<std::size_t>> d1, d2;
    for (const auto& s : f.simplices) {
        if (s.value > t) continue;
        if (s.dim == 0) {
            const std::size_t id = vid.size();
            vid[s.v[0]] = id;
        } else if (s.dim == 1) {
            const std::size_t id = eid.size();
            eid[{s.v[0], s.v[1]}] = id;
            d1.push_back({vid.at(s.v[0]), vid.at(s.v[1])});
        } else {
            d2.push_back({eid.at({s.v[0], s.v[1]}), eid.at({s.v[0], s.v[2]}),
                          eid.at({s.v[1], s.v[2]})});
        }
    }
    const std::size_t rank1 = z2_rank_cols(std::move(d1), vid.size());
    const std::size_t rank2 = z2_rank_cols(std::move(d2), eid.size());
    const std::size_t b0 = vid.size() - rank1;
    const std::size_t b1 = eid.size() - rank1 - rank2;
    return {b0, b1};
}

std::string barcode_to_json(const PersistenceDiagram& diagram,
                            const LandmarkSet& landmarks) {
    nlohmann::json j;
    j["landmarks"] = {{"indices", landmarks.indices},
                      {"proportion", landmarks.proportion},
                      {"seed", landmarks.seed}};
    auto dump_dim = [](const std::vector<PersistenceFeature>& fs) {
        auto arr = nlohmann::json::array();
        for (const auto& b : fs) {
            nlohmann::json e;
            e["birth"] = b.birth;
            if (b.infinite())
                e["death"] = nullptr;
            else
                e["death"] = b.death;
            e["infinite"] = b.infinite();
            e["members"] = b.members;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["dim0"] = dump_dim(diagram.dim0);
    j["dim1"] = dump_dim(diagram.dim1);
    return j.dump();
}

} // namespace toposum
