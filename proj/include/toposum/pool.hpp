#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toposum/homology.hpp"

namespace toposum {

struct ProtectedPool {
    int k = 0; // dim0 features taken
    int m = 0; // dim1 features taken
    std::vector<std::size_t> h0_members; // ascending
    std::vector<std::size_t> h1_members; // ascending
    std::vector<std::size_t> all;        // union, ascending
    // sentence index -> ids of contributing features ("h0:<rank>" / "h1:<rank>")
    std::map<std::size_t, std::vector<std::string>> provenance;
};

// Features ranked with infinite bars first, then persistence descending,
// ties by earlier birth then lower minimum member index. k = m = 0 yields an
// empty pool (ablation).
ProtectedPool build_pool(const PersistenceDiagram& diagram, int k, int m);

struct PositionDistribution {
    double begin_share = 0.0;  // i/n in [0, bins.first)
    double middle_share = 0.0; // [bins.first, bins.second)
    double end_share = 0.0;    // [bins.second, 1]
};

// Shares of pool members by relative document position. Throws EmptyPool.
PositionDistribution position_distribution(const ProtectedPool& pool, std::size_t n,
                                           std::pair<double, double> bins = {0.1, 0.8});

std::string pool_to_json(const ProtectedPool& pool);
std::string position_report_json(const PositionDistribution& dist,
                                 const ProtectedPool& pool, std::size_t n,
                                 std::pair<double, double> bins = {0.1, 0.8});

} // namespace toposum
