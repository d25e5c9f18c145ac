#pragma once

#include <cstdint>
#include <vector>

#include "osn/grid_index.hpp"
#include "osn/rng.hpp"
#include "osn/torus.hpp"

namespace osn {

struct ModelConfig {
    std::size_t n = 2;
    double gamma = 0.0;  // friendship-degree exponent
    double beta = 0.0;   // friendship-formation exponent
    double phi = 0.0;    // dissemination-pattern exponent
    std::uint64_t seed = 0;
};

void validate(const ModelConfig& cfg);

struct TorusDeployment {
    double L = 0.0;
    std::vector<Point> positions;
    GridIndex index;  // built over `positions`; moves with the struct
};

// n node positions i.i.d. uniform on [0, sqrt(n))^2, index built.
TorusDeployment sample_deployment(std::size_t n, std::uint64_t seed);

// Zipf law on {1, ..., max_value} with the given exponent. Cumulative sums
// are kept in long double so the conditional law (value <= l) is exact.
class ZipfTable {
public:
    ZipfTable(std::size_t max_value, double exponent);

    double pmf(std::size_t l) const;
    std::size_t max_value() const { return cum_.size() - 1; }

    std::size_t sample(Rng& g) const;
    // Sample conditioned on the value being <= l.
    std::size_t sample_le(std::size_t l, Rng& g) const;

private:
    double exponent_;
    std::vector<long double> cum_;  // cum_[i] = sum_{j=1..i} j^-exponent
};

// Pr(degree = l) on support {1, ..., n-1}. Convenience wrapper; hot paths
// should hold a ZipfTable.
double zipf_pmf(std::size_t l, std::size_t n, double gamma);

std::size_t sample_degree(const ZipfTable& table, Rng& g);

// CDF of the anchor distance r from its source, for the density proportional
// to (area(r)+1)^-beta. Substituting u = ball area turns the radial integral
// into an integral of (u+1)^-beta, so the CDF is closed-form.
double anchor_radial_cdf(double r, double beta, double L);

// Normalizing constant of that density over the whole torus.
double normalizer_phi(double beta, double L);

// Draws from the anchor density around a given source point. Construction
// caches the per-(beta, L) normalizing constants, so hoist one instance out
// of any loop that makes many draws.
class AnchorSampler {
public:
    AnchorSampler(double beta, double L);
    // One draw of the anchor distance r (inverse radial CDF). Consumes
    // exactly one uniform.
    double radius(Rng& g) const;
    // The torus distance from source to the returned point is exactly the
    // drawn radius, which lands in r_out.
    Point sample(const Point& source, Rng& g, double& r_out) const;
    Point operator()(const Point& source, Rng& g) const;

private:
    double beta_;
    double L_;
    double area_;
    double e_;      // 1 - beta
    double scale_;  // expm1(e * log1p(area)), or log1p(area) at beta == 1
};

// One draw of the anchor distance r (inverse radial CDF). Consumes exactly
// one uniform.
double sample_anchor_radius(double beta, double L, Rng& g);

// Exact sample from the anchor density around `source`: invert the radial
// CDF, then draw the angle uniformly, retrying until the planar offset lands
// inside the source-centered L x L square (which makes the torus distance
// exactly r).
Point sample_anchor(const Point& source, double beta, double L, Rng& g);

struct SocialGraph {
    std::vector<std::uint32_t> degrees;                  // q_k = |anchors[k]|
    std::vector<std::vector<std::uint32_t>> friends;     // duplicates collapsed
    std::vector<std::vector<Point>> anchors;             // all q_k anchor points
    std::vector<std::vector<std::uint32_t>> anchor_friend;  // nearest node per anchor
};

// Full Layer-2 construction: per node, draw the degree, then that many
// anchors; each anchor's nearest node becomes a friend (anchors landing
// nearest to the source are redrawn). Parallel over nodes with per-node RNG
// substreams; the degree draw is always first in a node's stream.
SocialGraph form_social_graph(const TorusDeployment& dep, const ModelConfig& cfg);

}  // namespace osn
