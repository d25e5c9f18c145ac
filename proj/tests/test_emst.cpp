#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <vector>

#include "osn/emst.hpp"
#include "osn/rng.hpp"
#include "tree_oracle.hpp"

using namespace osn;

namespace {

std::vector<Point> random_points(std::size_t k, double L, std::uint64_t seed) {
    Rng g = substream(seed, Stream::deploy);
    std::vector<Point> pts;
    pts.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        pts.push_back({uniform01(g) * L, uniform01(g) * L});
    return pts;
}

bool is_spanning_tree(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                      std::size_t k) {
    if (edges.size() + 1 != k) return false;
    std::vector<std::uint32_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : edges) {
        const std::uint32_t ra = find(a), rb = find(b);
        if (ra == rb) return false;  // cycle
        parent[ra] = rb;
    }
    return true;
}

}  // namespace

TEST_CASE("degenerate inputs") {
    CHECK(emst_prim({}, 5.0).total == 0.0);
    CHECK(emst_prim({}, 5.0).edges.empty());
    CHECK(emst_boruvka({{1.0, 1.0}}, 5.0).total == 0.0);
    CHECK(emst_total({}, 5.0) == 0.0);
    CHECK(emst_total({{1.0, 1.0}}, 5.0) == 0.0);
}

TEST_CASE("matches the exhaustive oracle on small instances") {
    for (int inst = 0; inst < 60; ++inst) {
        const std::size_t k = 2 + inst % 5;
        const double L = (inst % 2 != 0) ? 10.0 : 1.0;
        const auto pts = random_points(k, L, 1000 + inst);
        const auto want = oracle::min_spanning_tree(pts, L);
        REQUIRE(want.unique);

        const EmstResult prim = emst_prim(pts, L);
        const EmstResult boru = emst_boruvka(pts, L);
        CHECK(prim.total == doctest::Approx(want.total).epsilon(1e-12));
        CHECK(prim.edges == want.edges);
        CHECK(boru.edges == want.edges);
        CHECK(boru.total == doctest::Approx(want.total).epsilon(1e-12));
    }
}

TEST_CASE("both routes share one tie-break law") {
    // Two unit pairs joined by two candidate length-4 bridges; the bridge
    // with the lower endpoint pair must win on both routes.
    const std::vector<Point> pts = {{0.5, 5.0}, {9.5, 5.0}, {4.5, 5.0}, {5.5, 5.0}};
    const oracle::Edges want = {{0, 1}, {0, 2}, {2, 3}};

    const EmstResult prim = emst_prim(pts, 10.0);
    CHECK(prim.total == 6.0);
    CHECK(prim.edges == want);

    const EmstResult boru = emst_boruvka(pts, 10.0);
    CHECK(boru.total == 6.0);
    CHECK(boru.edges == want);
}

TEST_CASE("coincident points form a zero-length star") {
    const std::vector<Point> pts(5, Point{2.0, 3.0});
    const oracle::Edges want = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    const EmstResult prim = emst_prim(pts, 8.0);
    CHECK(prim.total == 0.0);
    CHECK(prim.edges == want);
    CHECK(emst_boruvka(pts, 8.0).edges == want);
}

TEST_CASE("regular grid with maximal ties") {
    std::vector<Point> pts;
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
    const EmstResult prim = emst_prim(pts, 4.0);
    const EmstResult boru = emst_boruvka(pts, 4.0);
    CHECK(prim.total == 15.0);
    CHECK(boru.total == 15.0);
    CHECK(prim.edges == boru.edges);
    CHECK(is_spanning_tree(prim.edges, pts.size()));
}

TEST_CASE("routes agree on larger instances") {
    for (std::size_t k : {129, 400, 1000}) {
        const double L = std::sqrt(static_cast<double>(k));
        const auto pts = random_points(k, L, 77 + k);
        const EmstResult prim = emst_prim(pts, L);
        const EmstResult boru = emst_boruvka(pts, L);
        CHECK(prim.edges.size() == k - 1);
        CHECK(prim.edges == boru.edges);
        CHECK(prim.total == doctest::Approx(boru.total).epsilon(1e-12));
        CHECK(is_spanning_tree(boru.edges, k));
    }
}

TEST_CASE("total-only entry point matches both cores") {
    const auto small = random_points(60, 8.0, 5);
    CHECK(emst_total(small, 8.0) == emst_prim(small, 8.0).total);

    const auto large = random_points(300, 18.0, 6);
    CHECK(emst_total(large, 18.0) == emst_boruvka(large, 18.0).total);
}

TEST_CASE("wraparound shortens the tree") {
    // Clusters hugging opposite edges: every cross-edge wraps to length 1,
    // so the in-square length-9 routes never appear. Four unit edges tie;
    // the (distance, endpoints) law keeps exactly {01, 02, 13}.
    const std::vector<Point> pts = {{0.5, 1.0}, {0.5, 2.0}, {9.5, 1.0}, {9.5, 2.0}};
    const oracle::Edges want = {{0, 1}, {0, 2}, {1, 3}};
    const EmstResult prim = emst_prim(pts, 10.0);
    CHECK(prim.total == 3.0);
    CHECK(prim.edges == want);
    CHECK(emst_boruvka(pts, 10.0).edges == want);
}
