#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "osn/torus.hpp"

namespace osn {

struct EmstResult {
    double total = 0.0;
    // Tree edges as (smaller index, larger index) pairs, sorted.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Minimum spanning tree of the complete graph on `pts` under the torus
// metric. Coordinates must lie in [0, L). Ties between equal-length edges
// are broken by the (min index, max index) pair, so the produced tree is
// unique and both algorithms below return the same edge set.

// Dense Prim, O(k^2). Serial reference used for testing and small inputs.
EmstResult emst_prim(const std::vector<Point>& pts, double L);

// Kd-tree Boruvka with per-component subtree pruning. Exact, near-linear
// on large inputs.
EmstResult emst_boruvka(const std::vector<Point>& pts, double L);

// Dispatch: Prim for small inputs, Boruvka above the crossover.
double emst_total(const std::vector<Point>& pts, double L);

}  // namespace osn
