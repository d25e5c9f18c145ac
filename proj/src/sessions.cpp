#include "osn/sessions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace osn {

std::vector<DisseminationSession> gen_broadcast_sessions(const SocialGraph& graph) {
    const std::size_t n = graph.degrees.size();
    std::vector<DisseminationSession> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k].source = static_cast<std::uint32_t>(k);
        out[k].destinations = graph.friends[k];
        out[k].anchor_subset = graph.anchors[k];
        out[k].rate = 1.0;
    }
    return out;
}

std::size_t sample_destination_count(std::size_t l, const ZipfTable& table, Rng& g) {
    if (l < 1) throw std::invalid_argument("sample_destination_count: l < 1");
    return table.sample_le(l, g);
}

std::size_t sample_destination_count(std::size_t l, double phi, Rng& g) {
    if (l < 1) throw std::invalid_argument("sample_destination_count: l < 1");
    ZipfTable t(l, phi);
    return t.sample(g);
}

std::vector<DisseminationSession> gen_multicast_sessions(const SocialGraph& graph,
                                                         double phi,
                                                         std::uint64_t seed) {
    const std::size_t n = graph.degrees.size();
    if (n < 2) throw std::invalid_argument("gen_multicast_sessions: graph too small");
    ZipfTable count_table(n - 1, phi);
    std::vector<DisseminationSession> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rng g = substream(seed, Stream::multicast, k);
        const std::size_t q = graph.degrees[k];
        const std::size_t d = sample_destination_count(q, count_table, g);
        auto& s = out[k];
        s.source = static_cast<std::uint32_t>(k);
        s.rate = 1.0;
        // Uniform d-subset of the q anchors via a partial Fisher-Yates pass.
        std::vector<std::uint32_t> idx(q);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t j = i + uniform_below(g, q - i);
            std::swap(idx[i], idx[j]);
        }
        s.anchor_subset.reserve(d);
        s.destinations.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            s.anchor_subset.push_back(graph.anchors[k][idx[i]]);
            s.destinations.push_back(graph.anchor_friend[k][idx[i]]);
        }
        std::sort(s.destinations.begin(), s.destinations.end());
        s.destinations.erase(std::unique(s.destinations.begin(), s.destinations.end()),
                             s.destinations.end());
    }
    return out;
}

}  // namespace osn
