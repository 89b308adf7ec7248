#include "toposum/pool.hpp"

#include <algorithm>
#include <set>

#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

namespace {

// Infinite bars first, then persistence descending, then earlier birth,
// then lower minimum member. Persistence is compared in the cross-sum form
// a.death + b.birth vs b.death + a.birth so that bars whose lifespans are
// equal in exact arithmetic tie even when the two subtractions round
// differently.
bool rank_before(const PersistenceFeature& a, const PersistenceFeature& b) {
    const bool ia = a.infinite(), ib = b.infinite();
    if (ia != ib) return ia;
    if (!ia && a.death + b.birth != b.death + a.birth)
        return a.death + b.birth > b.death + a.birth;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.members < b.members;
}

} // namespace

ProtectedPool build_pool(const PersistenceDiagram& diagram, int k, int m) {
    ProtectedPool pool;
    pool.k = k;
    pool.m = m;

    auto take = [&pool](std::vector<PersistenceFeature> features, int count,
                        const std::string& tag, std::vector<std::size_t>& members_out) {
        std::sort(features.begin(), features.end(), rank_before);
        std::set<std::size_t> members;
        const std::size_t limit =
            std::min<std::size_t>(features.size(),
                                  count > 0 ? static_cast<std::size_t>(count) : 0);
        for (std::size_t rank = 0; rank < limit; ++rank) {
            const std::string id = tag + ":" + std::to_string(rank);
            for (std::size_t s : features[rank].members) {
                members.insert(s);
                pool.provenance[s].push_back(id);
            }
        }
        members_out.assign(members.begin(), members.end());
    };

    take(diagram.dim0, k, "h0", pool.h0_members);
    take(diagram.dim1, m, "h1", pool.h1_members);

    std::set<std::size_t> all(pool.h0_members.begin(), pool.h0_members.end());
    all.insert(pool.h1_members.begin(), pool.h1_members.end());
    pool.all.assign(all.begin(), all.end());
    return pool;
}

PositionDistribution position_distribution(const ProtectedPool& pool, std::size_t n,
                                           std::pair<double, double> bins) {
    if (pool.all.empty())
        throw EmptyPool("position distribution of an empty protected pool");
    PositionDistribution dist;
    for (std::size_t i : pool.all) {
        const double r = static_cast<double>(i) / static_cast<double>(n);
        if (r < bins.first)
            dist.begin_share += 1.0;
        else if (r < bins.second)
            dist.middle_share += 1.0;
        else
            dist.end_share += 1.0;
    }
    const double total = static_cast<double>(pool.all.size());
    dist.begin_share /= total;
    dist.middle_share /= total;
    dist.end_share /= total;
    return dist;
}

std::string pool_to_json(const ProtectedPool& pool) {
    nlohmann::json j;
    j["k"] = pool.k;
    j["m"] = pool.m;
    j["h0"] = pool.h0_members;
    j["h1"] = pool.h1_members;
    j["union"] = pool.all;
    auto prov = nlohmann::json::object();
    for (const auto& [idx, ids] : pool.provenance) prov[std::to_string(idx)] = ids;
    j["provenance"] = std::move(prov);
    return j.dump();
}

std::string position_report_json(const PositionDistribution& dist,
                                 const ProtectedPool& pool, std::size_t n,
                                 std::pair<double, double> bins) {
    nlohmann::json j;
    j["n_sentences"] = n;
    j["pool_size"] = pool.all.size();
    j["bins"] = {bins.first, bins.second};
    j["begin_share"] = dist.begin_share;
    j["middle_share"] = dist.middle_share;
    j["end_share"] = dist.end_share;
    return j.dump();
}

} // namespace toposum
