#pragma once

#include <cstdint>
#include <vector>

#include "osn/model.hpp"

namespace osn {

struct DisseminationSession {
    std::uint32_t source = 0;
    std::vector<std::uint32_t> destinations;  // unique node ids
    std::vector<Point> anchor_subset;         // anchors of the chosen destinations
    double rate = 1.0;
};

// One session per node; destinations are the whole friend set, anchors the
// whole anchor set.
std::vector<DisseminationSession> gen_broadcast_sessions(const SocialGraph& graph);

// d in {1..l} from the conditional Zipf law with exponent phi. The table must
// cover at least l.
std::size_t sample_destination_count(std::size_t l, const ZipfTable& table, Rng& g);
std::size_t sample_destination_count(std::size_t l, double phi, Rng& g);

// One session per node: draw the destination count from the conditional Zipf
// law on the node's degree, pick that many anchors uniformly without
// replacement, and take each chosen anchor's nearest node as a destination.
// Per-node RNG substreams keyed by `seed`.
std::vector<DisseminationSession> gen_multicast_sessions(const SocialGraph& graph,
                                                         double phi,
                                                         std::uint64_t seed);

}  // namespace osn
