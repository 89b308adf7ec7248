#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/errors.hpp"
#include "toposum/homology.hpp"

using namespace toposum;

namespace {

EmbeddingMatrix rows(std::vector<std::vector<double>> r) {
    EmbeddingMatrix m;
    m.n = r.size();
    m.dim = r[0].size();
    for (auto& v : r) m.data.insert(m.data.end(), v.begin(), v.end());
    return m;
}

// Four unit vectors whose pairwise semantic distances form a unit square:
// adjacent corners at 1, diagonals at sqrt(2).
EmbeddingMatrix unit_square_rows() {
    const double a = 1.0 - std::sqrt(2.0);
    const double b = std::sqrt(1.0 - a * a);
    return rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {a, 0, b, 0}, {0, a, 0, b}});
}

LandmarkSet all_landmarks(std::size_t n) {
    LandmarkSet lm;
    lm.proportion = 1.0;
    lm.seed = 42;
    for (std::size_t i = 0; i < n; ++i) lm.indices.push_back(i);
    return lm;
}

std::vector<oracles::Bar> to_bars(const PersistenceDiagram& d) {
    std::vector<oracles::Bar> bars;
    for (const auto& f : d.dim0) bars.push_back({0, f.birth, f.death});
    for (const auto& f : d.dim1) bars.push_back({1, f.birth, f.death});
    std::sort(bars.begin(), bars.end(), [](const oracles::Bar& a, const oracles::Bar& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return bars;
}

bool bars_match(const std::vector<oracles::Bar>& a, const std::vector<oracles::Bar>& b,
                double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].dim != b[i].dim) return false;
        if (std::abs(a[i].birth - b[i].birth) > tol) return false;
        const bool ia = std::isinf(a[i].death), ib = std::isinf(b[i].death);
        if (ia != ib) return false;
        if (!ia && std::abs(a[i].death - b[i].death) > tol) return false;
    }
    return true;
}

} // namespace

TEST_CASE("landmark count follows the size rule") {
    std::mt19937_64 rng(3);
    auto m10 = oracles::random_unit_rows(10, 4, rng);
    CHECK(select_landmarks(m10, 0.2, 42).indices.size() == 10); // floor min(n,10)
    auto m100 = oracles::random_unit_rows(100, 4, rng);
    CHECK(select_landmarks(m100, 0.2, 42).indices.size() == 20);
    auto m40 = oracles::random_unit_rows(40, 4, rng);
    CHECK(select_landmarks(m40, 0.1, 42).indices.size() == 10);
    auto m2 = oracles::random_unit_rows(2, 4, rng);
    CHECK(select_landmarks(m2, 0.2, 42).indices.size() == 2);
    auto m1 = oracles::random_unit_rows(1, 4, rng);
    CHECK_THROWS_AS(select_landmarks(m1, 0.2, 42), TooFewSentences);
}

TEST_CASE("landmarks are distinct and deterministic") {
    std::mt19937_64 rng(5);
    auto m = oracles::random_unit_rows(60, 6, rng);
    auto a = select_landmarks(m, 0.25, 42);
    auto b = select_landmarks(m, 0.25, 42);
    CHECK(a.indices == b.indices);
    std::set<std::size_t> uniq(a.indices.begin(), a.indices.end());
    CHECK(uniq.size() == a.indices.size());
    for (std::size_t i : a.indices) CHECK(i < 60);
}

TEST_CASE("maxmin starts near the centroid then picks far points") {
    // five directions on a fan: 0, 10, 20, 30, 90 degrees
    auto deg = [](double d) {
        return std::vector<double>{std::cos(d * M_PI / 180.0), std::sin(d * M_PI / 180.0)};
    };
    auto m = rows({deg(0), deg(10), deg(20), deg(30), deg(90)});
    auto lm = select_landmarks(m, 0.2, 42); // size = max(1, 5) = 5, all picked
    REQUIRE(lm.indices.size() == 5);
    CHECK(lm.indices[0] == 3); // nearest the mean direction (~30 deg)
    CHECK(lm.indices[1] == 4); // farthest from 30 deg
    CHECK(lm.indices[2] == 0); // then the other extreme
}

TEST_CASE("rips mode edge values equal pairwise semantic distances") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 10; ++it) {
        auto m = oracles::random_unit_rows(6, 4, rng);
        auto f = build_witness_filtration(m, all_landmarks(6), 0, 3.0);
        std::size_t n_edges = 0;
        for (const auto& s : f.simplices) {
            if (s.dim == 1) {
                const double d = semantic_distance(m.row(s.v[0]), m.row(s.v[1]));
                CHECK(std::abs(s.value - d) <= 1e-12);
                ++n_edges;
            }
        }
        CHECK(n_edges == 15);
    }
}

TEST_CASE("two landmarks at distance 0.8 join at 0.8") {
    const double c = 1.0 - 0.8; // cosine giving semantic distance 0.8
    auto m = rows({{1, 0}, {c, std::sqrt(1 - c * c)}});
    auto f = build_witness_filtration(m, all_landmarks(2), 0, 3.0);
    REQUIRE(f.simplices.size() == 3);
    CHECK(f.simplices[2].dim == 1);
    CHECK(std::abs(f.simplices[2].value - 0.8) <= 1e-12);
}

TEST_CASE("lazy triangles appear at the max of their edges") {
    std::mt19937_64 rng(21);
    auto m = oracles::random_unit_rows(7, 4, rng);
    auto f = build_witness_filtration(m, all_landmarks(7), 0, 3.0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> edge_val;
    for (const auto& s : f.simplices)
        if (s.dim == 1) edge_val[{s.v[0], s.v[1]}] = s.value;
    for (const auto& s : f.simplices)
        if (s.dim == 2) {
            const double expect =
                std::max({edge_val.at({s.v[0], s.v[1]}), edge_val.at({s.v[0], s.v[2]}),
                          edge_val.at({s.v[1], s.v[2]})});
            CHECK(std::abs(s.value - expect) <= 1e-15);
        }
}

TEST_CASE("filtration is sorted with faces before cofaces and capped") {
    std::mt19937_64 rng(23);
    auto m = oracles::random_unit_rows(8, 4, rng);
    auto f = build_witness_filtration(m, all_landmarks(8), 0, 1.1);
    double last = -1.0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen_edges;
    std::set<std::uint32_t> seen_verts;
    for (const auto& s : f.simplices) {
        CHECK(s.value >= last);
        last = s.value;
        CHECK(s.value <= 1.1);
        if (s.dim == 0) seen_verts.insert(s.v[0]);
        if (s.dim == 1) {
            CHECK(s.v[0] < s.v[1]);
            CHECK(seen_verts.count(s.v[0]));
            CHECK(seen_verts.count(s.v[1]));
            seen_edges.insert({s.v[0], s.v[1]});
        }
        if (s.dim == 2) {
            CHECK(seen_edges.count({s.v[0], s.v[1]}));
            CHECK(seen_edges.count({s.v[0], s.v[2]}));
            CHECK(seen_edges.count({s.v[1], s.v[2]}));
        }
    }
}

TEST_CASE("max_value 0 keeps only vertices for distinct points") {
    std::mt19937_64 rng(25);
    auto m = oracles::random_unit_rows(5, 4, rng);
    auto f = build_witness_filtration(m, all_landmarks(5), 0, 0.0);
    CHECK(f.simplices.size() == 5);
    auto d = reduce(f, all_landmarks(5));
    CHECK(d.dim0.size() == 5);
    for (const auto& b : d.dim0) CHECK(b.infinite());
    CHECK(d.dim1.empty());
}

TEST_CASE("unit square: one h1 feature born 1 dead sqrt(2)") {
    auto m = unit_square_rows();
    auto lm = all_landmarks(4);
    auto f = build_witness_filtration(m, lm, 0, 3.0);
    auto d = reduce(f, lm);
    REQUIRE(d.dim1.size() == 1);
    CHECK(std::abs(d.dim1[0].birth - 1.0) <= 1e-6);
    CHECK(std::abs(d.dim1[0].death - std::sqrt(2.0)) <= 1e-6);
    CHECK(d.dim1[0].members == std::vector<std::size_t>{0, 1, 2, 3});
    // dim0: one infinite bar plus three bars dying at 1
    REQUIRE(d.dim0.size() == 4);
    std::size_t inf_bars = 0, at_one = 0;
    for (const auto& b : d.dim0) {
        if (b.infinite()) {
            ++inf_bars;
            CHECK(b.members == std::vector<std::size_t>{0, 1, 2, 3});
        } else if (std::abs(b.death - 1.0) <= 1e-9) {
            ++at_one;
        }
    }
    CHECK(inf_bars == 1);
    CHECK(at_one == 3);
}

TEST_CASE("unit square betti numbers at 1.2 and 1.5") {
    auto m = unit_square_rows();
    auto f = build_witness_filtration(m, all_landmarks(4), 0, 3.0);
    CHECK(betti_numbers_at(f, 1.2) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(betti_numbers_at(f, 1.5) == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(betti_numbers_at(f, 0.5) == std::pair<std::size_t, std::size_t>{4, 0});
}

TEST_CASE("three-point chain: two merge deaths at 1, no h1") {
    // unit circle angles 0, 90, 180: d(0,1) = d(1,2) = 1, d(0,2) = 2
    auto m = rows({{1, 0}, {0, 1}, {-1, 0}});
    auto lm = all_landmarks(3);
    auto d = reduce(build_witness_filtration(m, lm, 0, 3.0), lm);
    REQUIRE(d.dim0.size() == 3);
    std::size_t inf_bars = 0, at_one = 0;
    for (const auto& b : d.dim0) {
        CHECK(b.birth == 0.0);
        if (b.infinite()) ++inf_bars;
        else if (std::abs(b.death - 1.0) <= 1e-12) ++at_one;
    }
    CHECK(inf_bars == 1);
    CHECK(at_one == 2);
    CHECK(d.dim1.empty());
}

TEST_CASE("truncated square leaves an infinite h1 bar") {
    auto m = unit_square_rows();
    auto lm = all_landmarks(4);
    auto d = reduce(build_witness_filtration(m, lm, 0, 1.2), lm);
    REQUIRE(d.dim1.size() == 1);
    CHECK(std::abs(d.dim1[0].birth - 1.0) <= 1e-9);
    CHECK(d.dim1[0].infinite());
    CHECK(d.dim1[0].members == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("reduce matches the rank oracle on random rips clouds") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 25; ++it) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng() % 6);
        auto m = oracles::random_unit_rows(n, 4, rng);
        auto lm = all_landmarks(n);
        auto f = build_witness_filtration(m, lm, 0, 3.0);
        auto got = to_bars(reduce(f, lm));
        auto expect = oracles::diagram_by_rank(f);
        CHECK(bars_match(got, expect, 1e-9));
    }
}

TEST_CASE("betti_numbers_at matches the oracle at every critical value") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 10; ++it) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng() % 4);
        auto m = oracles::random_unit_rows(n, 4, rng);
        auto f = build_witness_filtration(m, all_landmarks(n), 0, 3.0);
        std::set<double> crit;
        for (const auto& s : f.simplices) crit.insert(s.value);
        for (double t : crit) CHECK(betti_numbers_at(f, t) == oracles::betti_at(f, t));
    }
}

TEST_CASE("sparse landmarks map members back to sentence indices") {
    std::mt19937_64 rng(41);
    auto m = oracles::random_unit_rows(30, 6, rng);
    auto lm = select_landmarks(m, 0.2, 42);
    auto f = build_witness_filtration(m, lm, 1, 3.0);
    auto d = reduce(f, lm);
    std::set<std::size_t> lset(lm.indices.begin(), lm.indices.end());
    auto check_members = [&](const std::vector<PersistenceFeature>& fs) {
        for (const auto& b : fs) {
            CHECK(!b.members.empty());
            CHECK(std::is_sorted(b.members.begin(), b.members.end()));
            for (std::size_t s : b.members) CHECK(lset.count(s));
        }
    };
    check_members(d.dim0);
    check_members(d.dim1);
}

TEST_CASE("witness filtration with sparse landmarks stays consistent") {
    std::mt19937_64 rng(43);
    for (int nu = 0; nu <= 2; ++nu) {
        auto m = oracles::random_unit_rows(24, 5, rng);
        auto lm = select_landmarks(m, 0.3, 42);
        auto f = build_witness_filtration(m, lm, nu, 3.0);
        CHECK(f.n_vertices == lm.indices.size());
        auto got = to_bars(reduce(f, lm));
        auto expect = oracles::diagram_by_rank(f);
        CHECK(bars_match(got, expect, 1e-9));
    }
}

TEST_CASE("higher nu never delays edges") {
    std::mt19937_64 rng(47);
    auto m = oracles::random_unit_rows(20, 5, rng);
    auto lm = select_landmarks(m, 0.4, 42);
    auto f0 = build_witness_filtration(m, lm, 0, 3.0);
    auto f2 = build_witness_filtration(m, lm, 2, 3.0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> e0;
    for (const auto& s : f0.simplices)
        if (s.dim == 1) e0[{s.v[0], s.v[1]}] = s.value;
    for (const auto& s : f2.simplices)
        if (s.dim == 1) {
            auto it = e0.find({s.v[0], s.v[1]});
            REQUIRE(it != e0.end());
            CHECK(s.value <= it->second + 1e-12);
        }
}

TEST_CASE("invalid filtrations are rejected") {
    Filtration f;
    f.n_vertices = 2;
    f.max_value = 3.0;
    f.simplices.push_back({0.0, 0, {0, 0, 0}});
    f.simplices.push_back({0.5, 1, {0, 1, 0}}); // vertex 1 never appears
    LandmarkSet lm = all_landmarks(2);
    CHECK_THROWS_AS(reduce(f, lm), InvalidFiltration);

    Filtration g;
    g.n_vertices = 3;
    g.max_value = 3.0;
    for (std::uint32_t v = 0; v < 3; ++v) g.simplices.push_back({0.0, 0, {v, 0, 0}});
    g.simplices.push_back({0.2, 1, {0, 1, 0}});
    g.simplices.push_back({0.2, 1, {0, 2, 0}});
    g.simplices.push_back({0.3, 2, {0, 1, 2}}); // edge (1,2) missing
    CHECK_THROWS_AS(reduce(g, all_landmarks(3)), InvalidFiltration);
}

TEST_CASE("reduce call counter tracks invocations") {
    auto m = unit_square_rows();
    auto lm = all_landmarks(4);
    auto f = build_witness_filtration(m, lm, 0, 3.0);
    reset_reduce_call_count();
    CHECK(reduce_call_count() == 0);
    reduce(f, lm);
    reduce(f, lm);
    CHECK(reduce_call_count() == 2);
    reset_reduce_call_count();
    CHECK(reduce_call_count() == 0);
}

TEST_CASE("barcode json lists landmarks and both dimensions") {
    auto m = unit_square_rows();
    auto lm = all_landmarks(4);
    auto js = barcode_to_json(reduce(build_witness_filtration(m, lm, 0, 3.0), lm), lm);
    CHECK(js.find("\"landmarks\"") != std::string::npos);
    CHECK(js.find("\"dim0\"") != std::string::npos);
    CHECK(js.find("\"dim1\"") != std::string::npos);
    CHECK(js.find("\"members\"") != std::string::npos);
}
