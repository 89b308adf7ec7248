#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "toposum/embeddings.hpp"

namespace toposum {

inline constexpr double k_infinite_death = std::numeric_limits<double>::infinity();
// Pairs with persistence below this are treated as numerical noise and
// dropped from diagrams.
inline constexpr double k_noise_floor = 1e-9;

struct LandmarkSet {
    std::vector<std::size_t> indices; // sentence indices, selection order
    double proportion = 0.2;
    std::uint64_t seed = 42;
};

struct Simplex {
    double value = 0.0;
    int dim = 0;
    std::array<std::uint32_t, 3> v{0, 0, 0}; // landmark-local ids, ascending; v[0..dim]
};

struct Filtration {
    std::size_t n_vertices = 0;
    double max_value = 3.0;
    // Sorted by (value, dim, lexicographic vertex tuple).
    std::vector<Simplex> simplices;
};

struct PersistenceFeature {
    int dimension = 0;
    double birth = 0.0;
    double death = k_infinite_death;
    std::vector<std::size_t> members; // sentence indices, ascending

    bool infinite() const { return std::isinf(death); }
    double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
    std::vector<PersistenceFeature> dim0;
    std::vector<PersistenceFeature> dim1;
};

// Farthest-point (maxmin) selection under semantic_distance; first landmark
// is the row closest to the embedding centroid; ties by lower index.
// Size = max(ceil(proportion*n), min(n, 10)). Throws TooFewSentences for n < 2.
LandmarkSet select_landmarks(const EmbeddingMatrix& emb, double proportion,
                             std::uint64_t seed);

// Lazy witness filtration capped at max_value: vertices at 0, edges at the
// witness value (see kernels::witness_edge_values), triangles at the max of
// their edge values. With nu = 0 and all rows as landmarks the edge value is
// exactly the pairwise semantic distance (Vietoris-Rips 2-skeleton).
Filtration build_witness_filtration(const EmbeddingMatrix& emb,
                                    const LandmarkSet& landmarks, int nu,
                                    double max_value);

// Z2 boundary-matrix column reduction. dim0 members carry the component
// merged away at death (the whole final component for infinite bars); dim1
// members carry the representative cycle at pairing time. Pairs with
// persistence < k_noise_floor are dropped. Throws InvalidFiltration when a
// simplex precedes one of its faces.
PersistenceDiagram reduce(const Filtration& f, const LandmarkSet& landmarks);

// (b0, b1) of the subcomplex at scale t, by matrix rank over Z2
// (rank-nullity), independent of the pairing algorithm.
std::pair<std::size_t, std::size_t> betti_numbers_at(const Filtration& f, double t);

// Process-wide counter of reduce() invocations (one-time-analysis contract).
std::uint64_t reduce_call_count();
void reset_reduce_call_count();

std::string barcode_to_json(const PersistenceDiagram& diagram,
                            const LandmarkSet& landmarks);

} // namespace toposum
