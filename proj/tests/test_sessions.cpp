#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "osn/sessions.hpp"

using namespace osn;

namespace {

SocialGraph small_graph(std::size_t n, double gamma, double beta, std::uint64_t seed,
                        TorusDeployment& dep) {
    ModelConfig cfg;
    cfg.n = n;
    cfg.gamma = gamma;
    cfg.beta = beta;
    cfg.seed = seed;
    dep = sample_deployment(n, seed);
    return form_social_graph(dep, cfg);
}

}  // namespace

TEST_CASE("broadcast sessions copy the whole friend structure") {
    TorusDeployment dep;
    const SocialGraph gr = small_graph(200, 1.7, 1.1, 12, dep);
    const auto sessions = gen_broadcast_sessions(gr);
    REQUIRE(sessions.size() == 200);
    for (std::size_t k = 0; k < sessions.size(); ++k) {
        CHECK(sessions[k].source == k);
        CHECK(sessions[k].rate == 1.0);
        CHECK(sessions[k].destinations == gr.friends[k]);
        REQUIRE(sessions[k].anchor_subset.size() == gr.anchors[k].size());
        for (std::size_t i = 0; i < gr.anchors[k].size(); ++i) {
            CHECK(sessions[k].anchor_subset[i].x == gr.anchors[k][i].x);
            CHECK(sessions[k].anchor_subset[i].y == gr.anchors[k][i].y);
        }
    }
}

TEST_CASE("destination count sampling") {
    const ZipfTable table(50, 1.5);
    Rng g = substream(2, Stream::multicast);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t l = 1 + i % 50;
        const std::size_t d = sample_destination_count(l, table, g);
        REQUIRE(d >= 1);
        REQUIRE(d <= l);
    }
    for (int i = 0; i < 50; ++i) CHECK(sample_destination_count(1, table, g) == 1);
    CHECK_THROWS_AS(sample_destination_count(0, table, g), std::invalid_argument);
    CHECK_THROWS_AS(sample_destination_count(0, 1.5, g), std::invalid_argument);

    // the convenience overload is the conditional law on a throwaway table
    Rng g1 = substream(8, Stream::multicast, 5);
    Rng g2 = substream(8, Stream::multicast, 5);
    for (int i = 0; i < 500; ++i) {
        const std::size_t l = 1 + i % 30;
        CHECK(sample_destination_count(l, table, g1) ==
              sample_destination_count(l, 1.5, g2));
    }

    // conditioned below 2 with phi = 1, weights are {1, 1/2}
    Rng g3 = substream(9, Stream::multicast);
    const ZipfTable t1(10, 1.0);
    int ones = 0;
    const int draws = 90000;
    for (int i = 0; i < draws; ++i) ones += sample_destination_count(2, t1, g3) == 1;
    CHECK(static_cast<double>(ones) / draws == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("multicast sessions draw the count first and a uniform subset") {
    TorusDeployment dep;
    const SocialGraph gr = small_graph(150, 1.4, 0.9, 33, dep);
    const double phi = 1.3;
    const auto sessions = gen_multicast_sessions(gr, phi, 77);
    REQUIRE(sessions.size() == 150);

    const ZipfTable count_table(149, phi);
    for (std::size_t k = 0; k < sessions.size(); ++k) {
        const auto& s = sessions[k];
        CHECK(s.source == k);
        CHECK(s.rate == 1.0);

        Rng g = substream(77, Stream::multicast, k);
        const std::size_t q = gr.degrees[k];
        const std::size_t d = count_table.sample_le(q, g);
        REQUIRE(s.anchor_subset.size() == d);

        // replay the partial shuffle on the same stream
        std::vector<std::uint32_t> idx(q);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t j = i + uniform_below(g, q - i);
            std::swap(idx[i], idx[j]);
        }
        std::vector<std::uint32_t> dests;
        for (std::size_t i = 0; i < d; ++i) {
            CHECK(s.anchor_subset[i].x == gr.anchors[k][idx[i]].x);
            CHECK(s.anchor_subset[i].y == gr.anchors[k][idx[i]].y);
            dests.push_back(gr.anchor_friend[k][idx[i]]);
        }
        std::sort(dests.begin(), dests.end());
        dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
        CHECK(s.destinations == dests);

        // destinations live inside the friend set
        CHECK(std::includes(gr.friends[k].begin(), gr.friends[k].end(),
                            s.destinations.begin(), s.destinations.end()));
    }
}

TEST_CASE("multicast generation is seed-deterministic") {
    TorusDeployment dep;
    const SocialGraph gr = small_graph(120, 2.0, 1.5, 5, dep);
    const auto a = gen_multicast_sessions(gr, 1.5, 42);
    const auto b = gen_multicast_sessions(gr, 1.5, 42);
    REQUIRE(a.size() == b.size());
    bool all_same = true;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].destinations == b[k].destinations);
        CHECK(a[k].anchor_subset.size() == b[k].anchor_subset.size());
    }
    const auto c = gen_multicast_sessions(gr, 1.5, 43);
    for (std::size_t k = 0; k < a.size(); ++k)
        all_same = all_same && a[k].anchor_subset.size() == c[k].anchor_subset.size() &&
                   a[k].destinations == c[k].destinations;
    CHECK_FALSE(all_same);

    SocialGraph tiny;
    tiny.degrees = {1};
    CHECK_THROWS_AS(gen_multicast_sessions(tiny, 1.0, 1), std::invalid_argument);
}

TEST_CASE("anchor subsets are marginally uniform") {
    TorusDeployment dep;
    const SocialGraph gr = small_graph(60, 1.2, 1.0, 21, dep);

    // pick a node with a reasonably large degree
    std::size_t node = 0;
    for (std::size_t k = 0; k < gr.degrees.size(); ++k)
        if (gr.degrees[k] > gr.degrees[node]) node = k;
    const std::size_t q = gr.degrees[node];
    REQUIRE(q >= 3);

    std::vector<int> hits(q, 0);
    long total = 0;
    for (std::uint64_t seed = 0; seed < 2500; ++seed) {
        const auto sessions = gen_multicast_sessions(gr, 1.1, seed);
        for (const Point& a : sessions[node].anchor_subset) {
            for (std::size_t i = 0; i < q; ++i) {
                if (a.x == gr.anchors[node][i].x && a.y == gr.anchors[node][i].y) {
                    ++hits[i];
                    ++total;
                    break;
                }
            }
        }
    }
    const double want = static_cast<double>(total) / q;
    for (std::size_t i = 0; i < q; ++i) {
        CHECK(hits[i] > want * 0.8);
        CHECK(hits[i] < want * 1.2);
    }
}
