#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "osn/model.hpp"
#include "osn/stats.hpp"

using namespace osn;

TEST_CASE("config validation") {
    ModelConfig ok{100, 1.5, 1.0, 0.5, 1};
    validate(ok);

    ModelConfig bad = ok;
    bad.n = 1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.gamma = -0.1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.beta = -0.1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.phi = -0.1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("deployment bounds and determinism") {
    const TorusDeployment a = sample_deployment(500, 42);
    CHECK(a.L == std::sqrt(500.0));
    CHECK(a.positions.size() == 500);
    CHECK(a.index.size() == 500);
    for (const Point& p : a.positions) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < a.L);
        CHECK(p.y >= 0.0);
        CHECK(p.y < a.L);
    }

    const TorusDeployment b = sample_deployment(500, 42);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(a.positions[i].x == b.positions[i].x);
        CHECK(a.positions[i].y == b.positions[i].y);
    }

    const TorusDeployment c = sample_deployment(500, 43);
    bool same = true;
    for (std::size_t i = 0; i < 500; ++i)
        same = same && a.positions[i].x == c.positions[i].x;
    CHECK_FALSE(same);

    CHECK_THROWS_AS(sample_deployment(1, 42), std::invalid_argument);
}

TEST_CASE("zipf table pmf") {
    const ZipfTable t(1000, 1.776);
    double sum = 0.0;
    for (std::size_t l = 1; l <= 1000; ++l) sum += t.pmf(l);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.pmf(2) / t.pmf(1) == doctest::Approx(std::pow(2.0, -1.776)).epsilon(1e-12));
    CHECK(t.max_value() == 1000);
    CHECK(zipf_pmf(3, 1001, 1.776) == doctest::Approx(t.pmf(3)).epsilon(1e-12));
}

TEST_CASE("zipf sampling matches the pmf") {
    const ZipfTable t(4, 1.0);
    Rng g = substream(5, Stream::formation);
    std::vector<double> counts(5, 0.0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        const std::size_t v = t.sample(g);
        REQUIRE(v >= 1);
        REQUIRE(v <= 4);
        counts[v] += 1.0;
    }
    // weights 1, 1/2, 1/3, 1/4 over 1..4
    const double z = 1.0 + 0.5 + 1.0 / 3.0 + 0.25;
    for (std::size_t l = 1; l <= 4; ++l)
        CHECK(counts[l] / draws == doctest::Approx((1.0 / l) / z).epsilon(0.02));
}

TEST_CASE("conditional zipf sampling") {
    const ZipfTable t(10, 1.5);
    Rng g = substream(6, Stream::formation);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t l = 1 + i % 10;
        const std::size_t v = t.sample_le(l, g);
        REQUIRE(v >= 1);
        REQUIRE(v <= l);
    }
    for (int i = 0; i < 100; ++i) CHECK(t.sample_le(1, g) == 1);

    // conditioned on <= 2 the law is weights {1, 2^-1.5}
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += t.sample_le(2, g) == 1;
    const double p1 = 1.0 / (1.0 + std::pow(2.0, -1.5));
    CHECK(static_cast<double>(ones) / draws == doctest::Approx(p1).epsilon(0.01));
}

TEST_CASE("anchor radial cdf shape") {
    const double L = 10.0;
    const double rmax = L / std::sqrt(2.0);
    for (double beta : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        CHECK(anchor_radial_cdf(0.0, beta, L) == 0.0);
        CHECK(anchor_radial_cdf(rmax, beta, L) == doctest::Approx(1.0).epsilon(1e-12));
        double prev = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double c = anchor_radial_cdf(i * rmax / 100.0, beta, L);
            CHECK(c >= prev - 1e-15);
            prev = c;
        }
    }
    // beta = 0 is the uniform law on the torus
    for (double r : {1.0, 3.0, 5.0, 6.0}) {
        CHECK(anchor_radial_cdf(r, 0.0, L) ==
              doctest::Approx(ball_area(r, L) / (L * L)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(anchor_radial_cdf(-0.1, 1.0, L), std::invalid_argument);
    CHECK_THROWS_AS(anchor_radial_cdf(L, 1.0, L), std::invalid_argument);
    CHECK_THROWS_AS(anchor_radial_cdf(1.0, -1.0, L), std::invalid_argument);
}

TEST_CASE("normalizer matches the radial quadrature") {
    const double L = 6.0;
    const double rmax = L / std::sqrt(2.0);
    for (double beta : {0.0, 0.5, 1.0, 2.5}) {
        const double z = adaptive_simpson(
            [&](double r) {
                return ball_area_derivative(r, L) *
                       std::pow(ball_area(r, L) + 1.0, -beta);
            },
            0.0, rmax, 1e-12);
        CHECK(normalizer_phi(beta, L) * z == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("anchor radius sampling follows the cdf") {
    const double L = 10.0;
    for (double beta : {0.0, 1.0, 1.7}) {
        Rng g = substream(9, Stream::formation, static_cast<std::uint64_t>(beta * 8));
        std::vector<double> draws;
        for (int i = 0; i < 20000; ++i) draws.push_back(sample_anchor_radius(beta, L, g));
        const double d = ks_statistic(
            std::move(draws), [&](double r) { return anchor_radial_cdf(r, beta, L); });
        CHECK(d < 0.015);
    }
}

TEST_CASE("anchor sampler is the hoisted form of the free functions") {
    const double L = 9.0;
    const double beta = 1.3;
    const AnchorSampler s(beta, L);

    Rng g1 = substream(21, Stream::formation, 1);
    Rng g2 = substream(21, Stream::formation, 1);
    for (int i = 0; i < 200; ++i)
        CHECK(s.radius(g1) == sample_anchor_radius(beta, L, g2));

    const Point src{2.0, 7.5};
    Rng g3 = substream(21, Stream::formation, 2);
    Rng g4 = substream(21, Stream::formation, 2);
    for (int i = 0; i < 200; ++i) {
        double r = 0.0;
        const Point a = s.sample(src, g3, r);
        const Point b = sample_anchor(src, beta, L, g4);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.x >= 0.0);
        CHECK(a.x < L);
        CHECK(torus_distance(src, a, L) == doctest::Approx(r).epsilon(1e-12));
    }

    Rng g5 = substream(21, Stream::formation, 2);
    for (int i = 0; i < 10; ++i) {
        const Point c = s(src, g5);
        CHECK(c.x >= 0.0);
        CHECK(c.y >= 0.0);
    }
    CHECK_THROWS_AS(AnchorSampler(-0.5, L), std::invalid_argument);
    CHECK_THROWS_AS(AnchorSampler(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("social graph invariants") {
    ModelConfig cfg;
    cfg.n = 300;
    cfg.gamma = 1.8;
    cfg.beta = 1.2;
    cfg.seed = 31;
    const TorusDeployment dep = sample_deployment(cfg.n, cfg.seed);
    const SocialGraph gr = form_social_graph(dep, cfg);

    REQUIRE(gr.degrees.size() == cfg.n);
    REQUIRE(gr.friends.size() == cfg.n);
    REQUIRE(gr.anchors.size() == cfg.n);
    REQUIRE(gr.anchor_friend.size() == cfg.n);

    for (std::size_t k = 0; k < cfg.n; ++k) {
        CHECK(gr.degrees[k] >= 1);
        CHECK(gr.degrees[k] <= cfg.n - 1);
        CHECK(gr.anchors[k].size() == gr.degrees[k]);
        CHECK(gr.anchor_friend[k].size() == gr.degrees[k]);

        auto dedup = gr.anchor_friend[k];
        std::sort(dedup.begin(), dedup.end());
        dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
        CHECK(gr.friends[k] == dedup);

        for (std::uint32_t f : gr.friends[k]) {
            CHECK(f != k);
            CHECK(f < cfg.n);
        }
    }
}

TEST_CASE("every anchor maps to its nearest node") {
    ModelConfig cfg;
    cfg.n = 200;
    cfg.gamma = 2.2;
    cfg.beta = 0.8;
    cfg.seed = 17;
    const TorusDeployment dep = sample_deployment(cfg.n, cfg.seed);
    const SocialGraph gr = form_social_graph(dep, cfg);

    for (std::size_t k = 0; k < cfg.n; ++k) {
        for (std::size_t i = 0; i < gr.anchors[k].size(); ++i) {
            const Point& a = gr.anchors[k][i];
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t v = 0; v < cfg.n; ++v)
                best = std::min(best, torus_distance(a, dep.positions[v], dep.L));
            const double got = torus_distance(a, dep.positions[gr.anchor_friend[k][i]], dep.L);
            CHECK(got <= best * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("per-node streams draw the degree first") {
    ModelConfig cfg;
    cfg.n = 250;
    cfg.gamma = 1.6;
    cfg.beta = 1.0;
    cfg.seed = 77;
    const TorusDeployment dep = sample_deployment(cfg.n, cfg.seed);
    const SocialGraph gr = form_social_graph(dep, cfg);

    const ZipfTable degree_table(cfg.n - 1, cfg.gamma);
    const AnchorSampler draw_anchor(cfg.beta, dep.L);
    for (std::size_t k = 0; k < cfg.n; ++k) {
        Rng g = substream(cfg.seed, Stream::formation, k);
        const std::size_t q = degree_table.sample(g);
        REQUIRE(q == gr.degrees[k]);
        for (std::size_t i = 0; i < q; ++i) {
            std::uint32_t f;
            Point a;
            do {
                a = draw_anchor(dep.positions[k], g);
                f = nearest_node(dep.index, a, g);
            } while (f == k);
            CHECK(a.x == gr.anchors[k][i].x);
            CHECK(a.y == gr.anchors[k][i].y);
            CHECK(f == gr.anchor_friend[k][i]);
        }
    }
}
