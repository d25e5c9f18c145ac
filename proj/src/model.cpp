#include "osn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace osn {

void validate(const ModelConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("ModelConfig: n must be >= 2");
    if (cfg.gamma < 0 || cfg.beta < 0 || cfg.phi < 0)
        throw std::invalid_argument("ModelConfig: exponents must be >= 0");
}

TorusDeployment sample_deployment(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_deployment: n must be >= 2");
    TorusDeployment d;
    d.L = std::sqrt(static_cast<double>(n));
    d.positions.resize(n);
    Rng g = substream(seed, Stream::deploy);
    for (std::size_t i = 0; i < n; ++i) {
        d.positions[i].x = uniform01(g) * d.L;
        d.positions[i].y = uniform01(g) * d.L;
    }
    d.index = GridIndex(d.positions.data(), d.positions.size(), d.L);
    return d;
}

ZipfTable::ZipfTable(std::size_t max_value, double exponent) : exponent_(exponent) {
    if (max_value < 1) throw std::invalid_argument("ZipfTable: empty support");
    cum_.resize(max_value + 1);
    cum_[0] = 0.0L;
    for (std::size_t j = 1; j <= max_value; ++j)
        cum_[j] = cum_[j - 1] + powl(static_cast<long double>(j),
                                     static_cast<long double>(-exponent));
}

double ZipfTable::pmf(std::size_t l) const {
    if (l < 1 || l > max_value())
        throw std::invalid_argument("ZipfTable: value outside support");
    return static_cast<double>((cum_[l] - cum_[l - 1]) / cum_.back());
}

std::size_t ZipfTable::sample(Rng& g) const { return sample_le(max_value(), g); }

std::size_t ZipfTable::sample_le(std::size_t l, Rng& g) const {
    if (l < 1) throw std::invalid_argument("ZipfTable: conditional bound < 1");
    l = std::min(l, max_value());
    const long double target =
        static_cast<long double>(uniform01(g)) * cum_[l];
    // Smallest j with cum_[j] > target.
    const auto it = std::upper_bound(cum_.begin() + 1, cum_.begin() + l + 1, target);
    const std::size_t j = static_cast<std::size_t>(it - cum_.begin());
    return std::min(j, l);
}

double zipf_pmf(std::size_t l, std::size_t n, double gamma) {
    if (n < 2) throw std::invalid_argument("zipf_pmf: n must be >= 2");
    ZipfTable t(n - 1, gamma);
    return t.pmf(l);
}

std::size_t sample_degree(const ZipfTable& table, Rng& g) { return table.sample(g); }

double anchor_radial_cdf(double r, double beta, double L) {
    const double rmax = L / std::sqrt(2.0);
    if (r < 0.0 || r > rmax * (1.0 + 1e-12))
        throw std::invalid_argument("anchor_radial_cdf: r outside [0, L/sqrt(2)]");
    if (beta < 0.0) throw std::invalid_argument("anchor_radial_cdf: beta < 0");
    const double u = ball_area(std::min(r, rmax), L);
    const double A = L * L;
    if (beta == 1.0) return std::log1p(u) / std::log1p(A);
    const double e = 1.0 - beta;
    return std::expm1(e * std::log1p(u)) / std::expm1(e * std::log1p(A));
}

double normalizer_phi(double beta, double L) {
    if (L <= 0.0) throw std::invalid_argument("normalizer_phi: side must be positive");
    if (beta < 0.0) throw std::invalid_argument("normalizer_phi: beta < 0");
    const double A = L * L;
    if (beta == 1.0) return 1.0 / std::log1p(A);
    const double e = 1.0 - beta;
    return e / std::expm1(e * std::log1p(A));
}

AnchorSampler::AnchorSampler(double beta, double L) : beta_(beta), L_(L) {
    if (L <= 0.0) throw std::invalid_argument("AnchorSampler: side must be positive");
    if (beta < 0.0) throw std::invalid_argument("AnchorSampler: beta < 0");
    area_ = L * L;
    e_ = 1.0 - beta;
    scale_ = (beta == 1.0) ? std::log1p(area_) : std::expm1(e_ * std::log1p(area_));
}

double AnchorSampler::radius(Rng& g) const {
    // Invert the radial CDF at a uniform V to get the ball area u, then the
    // radius.
    const double V = uniform01(g);
    double u;
    if (beta_ == 1.0) {
        u = std::expm1(V * scale_);
    } else {
        u = std::expm1(std::log1p(V * scale_) / e_);
    }
    u = std::clamp(u, 0.0, area_);
    return ball_area_inverse(u, L_);
}

double sample_anchor_radius(double beta, double L, Rng& g) {
    return AnchorSampler(beta, L).radius(g);
}

Point AnchorSampler::sample(const Point& source, Rng& g, double& r_out) const {
    const double r = radius(g);
    r_out = r;
    const double L = L_;

    // Uniform angle, conditioned on the offset staying inside the
    // source-centered square; for r <= L/2 every angle is accepted. The
    // acceptance set is nonempty for every r <= L/sqrt(2) but shrinks to the
    // four diagonals at the far end, so after many rejections we place the
    // point on a diagonal picked by the last draw.
    const double half = L / 2.0;
    double dx = 0.0, dy = 0.0;
    bool placed = false;
    double theta = 0.0;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        theta = 2.0 * M_PI * uniform01(g);
        dx = r * std::cos(theta);
        dy = r * std::sin(theta);
        if (std::fabs(dx) <= half && std::fabs(dy) <= half) {
            placed = true;
            break;
        }
    }
    if (!placed) {
        const double s = r / std::sqrt(2.0);
        dx = (std::cos(theta) >= 0.0) ? s : -s;
        dy = (std::sin(theta) >= 0.0) ? s : -s;
    }
    Point p{wrap_coord(source.x + dx, L), wrap_coord(source.y + dy, L)};
    return p;
}

Point AnchorSampler::operator()(const Point& source, Rng& g) const {
    double r;
    return sample(source, g, r);
}

Point sample_anchor(const Point& source, double beta, double L, Rng& g) {
    return AnchorSampler(beta, L)(source, g);
}

SocialGraph form_social_graph(const TorusDeployment& dep, const ModelConfig& cfg) {
    validate(cfg);
    const std::size_t n = dep.positions.size();
    if (n != cfg.n) throw std::invalid_argument("form_social_graph: config/deployment size mismatch");
    ZipfTable degree_table(n - 1, cfg.gamma);
    const AnchorSampler draw_anchor(cfg.beta, dep.L);

    SocialGraph gr;
    gr.degrees.resize(n);
    gr.friends.resize(n);
    gr.anchors.resize(n);
    gr.anchor_friend.resize(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::int64_t ks = 0; ks < static_cast<std::int64_t>(n); ++ks) {
        const std::size_t k = static_cast<std::size_t>(ks);
        Rng g = substream(cfg.seed, Stream::formation, k);
        const std::size_t q = degree_table.sample(g);
        gr.degrees[k] = static_cast<std::uint32_t>(q);
        auto& anchors = gr.anchors[k];
        auto& af = gr.anchor_friend[k];
        anchors.reserve(q);
        af.reserve(q);
        for (std::size_t i = 0; i < q; ++i) {
            std::uint32_t f;
            Point a;
            do {
                a = draw_anchor(dep.positions[k], g);
                f = nearest_node(dep.index, a, g);
            } while (f == k);  // a friend set never contains its own source
            anchors.push_back(a);
            af.push_back(f);
        }
        auto& fr = gr.friends[k];
        fr = af;
        std::sort(fr.begin(), fr.end());
        fr.erase(std::unique(fr.begin(), fr.end()), fr.end());
    }
    return gr;
}

}  // namespace osn
