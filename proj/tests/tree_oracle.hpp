#pragma once

// Exhaustive spanning-tree oracle. Labeled trees on k vertices are in
// bijection with Prufer sequences of length k-2, so walking the k^(k-2)
// sequences visits every spanning tree exactly once. Only meant for the
// k <= 6 instances the tests use.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "osn/torus.hpp"

namespace oracle {

using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Edges prufer_decode(const std::vector<std::uint32_t>& seq, std::uint32_t k) {
    std::vector<std::uint32_t> deg(k, 1);
    for (std::uint32_t s : seq) ++deg[s];
    Edges edges;
    edges.reserve(k - 1);
    for (std::uint32_t s : seq) {
        std::uint32_t leaf = k;
        for (std::uint32_t v = 0; v < k; ++v) {
            if (deg[v] == 1) {
                leaf = v;
                break;
            }
        }
        edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
        deg[leaf] = 0;
        --deg[s];
    }
    std::uint32_t a = k, b = k;
    for (std::uint32_t v = 0; v < k; ++v) {
        if (deg[v] == 1) {
            (a == k ? a : b) = v;
        }
    }
    edges.emplace_back(a, b);
    return edges;
}

struct MinTree {
    double total = 0.0;
    Edges edges;        // canonical: (low, high) pairs, sorted
    bool unique = true; // no other edge set within relative 1e-9 of the optimum
};

inline MinTree min_spanning_tree(const std::vector<osn::Point>& pts, double L) {
    const std::uint32_t k = static_cast<std::uint32_t>(pts.size());
    MinTree out;
    if (k < 2) return out;

    std::uint64_t count = 1;
    for (std::uint32_t i = 2; i < k; ++i) count *= k;

    std::vector<std::uint32_t> seq(k - 2, 0);
    auto tree_at = [&](std::uint64_t it, double& total) {
        std::uint64_t t = it;
        for (std::uint32_t& d : seq) {
            d = static_cast<std::uint32_t>(t % k);
            t /= k;
        }
        Edges e = prufer_decode(seq, k);
        total = 0.0;
        for (const auto& [a, b] : e) total += osn::torus_distance(pts[a], pts[b], L);
        std::sort(e.begin(), e.end());
        return e;
    };

    out.total = std::numeric_limits<double>::infinity();
    for (std::uint64_t it = 0; it < count; ++it) {
        double total;
        Edges e = tree_at(it, total);
        if (total < out.total) {
            out.total = total;
            out.edges = std::move(e);
        }
    }
    const double margin = out.total * (1.0 + 1e-9) + 1e-12;
    for (std::uint64_t it = 0; it < count && out.unique; ++it) {
        double total;
        Edges e = tree_at(it, total);
        if (total <= margin && e != out.edges) out.unique = false;
    }
    return out;
}

}  // namespace oracle
