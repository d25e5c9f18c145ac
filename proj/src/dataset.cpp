#include "osn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "osn/model.hpp"
#include "osn/rng.hpp"
#include "osn/stats.hpp"

namespace osn {

namespace {

[[noreturn]] void line_error(const std::string& path, std::size_t line_no,
                             const char* what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_int(std::string_view s, std::int64_t& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
}

bool parse_double(std::string_view s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
}

std::string_view strip_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

}  // namespace

EdgeList parse_edges(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open edge file: " + path);
    EdgeList edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = strip_cr(line);
        std::size_t i = 0;
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i == s.size()) continue;  // blank line
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        std::size_t k = j;
        while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
        std::size_t l = k;
        while (l < s.size() && s[l] != ' ' && s[l] != '\t') ++l;
        std::size_t rest = l;
        while (rest < s.size() && (s[rest] == ' ' || s[rest] == '\t')) ++rest;
        std::int64_t a = 0, b = 0;
        if (k == j || l == k || rest != s.size() || !parse_int(s.substr(i, j - i), a) ||
            !parse_int(s.substr(k, l - k), b))
            line_error(path, line_no, "expected two integer user ids");
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

CheckinFile parse_checkins(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open check-in file: " + path);
    CheckinFile out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = strip_cr(line);
        if (s.empty()) continue;
        std::string_view f[5];
        std::size_t start = 0;
        int nf = 0;
        for (std::size_t i = 0; i <= s.size(); ++i) {
            if (i == s.size() || s[i] == '\t') {
                if (nf == 5) line_error(path, line_no, "expected 5 tab-separated fields");
                f[nf++] = s.substr(start, i - start);
                start = i + 1;
            }
        }
        if (nf != 5) line_error(path, line_no, "expected 5 tab-separated fields");
        Checkin c;
        if (!parse_int(f[0], c.user)) line_error(path, line_no, "bad user id");
        c.timestamp = std::string(f[1]);
        if (!parse_double(f[2], c.lat) || !parse_double(f[3], c.lon))
            line_error(path, line_no, "bad coordinate");
        c.location_id = std::string(f[4]);
        if (!(c.lat >= -90.0 && c.lat <= 90.0) || !(c.lon >= -180.0 && c.lon <= 180.0)) {
            ++out.skipped;
            continue;
        }
        out.checkins.push_back(std::move(c));
    }
    return out;
}

std::string edges_text(const EdgeList& edges) {
    std::string out;
    char buf[64];
    for (const auto& e : edges) {
        std::snprintf(buf, sizeof(buf), "%lld\t%lld\n",
                      static_cast<long long>(e.first), static_cast<long long>(e.second));
        out += buf;
    }
    return out;
}

std::string checkins_text(const std::vector<Checkin>& checkins) {
    std::string out;
    char buf[96];
    for (const Checkin& c : checkins) {
        out += std::to_string(c.user);
        out += '\t';
        out += c.timestamp;
        std::snprintf(buf, sizeof(buf), "\t%.17g\t%.17g\t", c.lat, c.lon);
        out += buf;
        out += c.location_id;
        out += '\n';
    }
    return out;
}

namespace {

double median_inplace(std::vector<double>& v) {
    const std::size_t m = v.size();
    const std::size_t h = m / 2;
    std::nth_element(v.begin(), v.begin() + h, v.end());
    double upper = v[h];
    if (m % 2 == 1) return upper;
    double lower = *std::max_element(v.begin(), v.begin() + h);
    return (lower + upper) / 2.0;
}

}  // namespace

std::vector<LocatedUser> estimate_user_locations(const std::vector<Checkin>& checkins) {
    std::unordered_map<std::int64_t, std::pair<std::vector<double>, std::vector<double>>> per;
    per.reserve(checkins.size() / 4 + 16);
    for (const Checkin& c : checkins) {
        auto& e = per[c.user];
        e.first.push_back(c.lat);
        e.second.push_back(c.lon);
    }
    std::vector<LocatedUser> out;
    out.reserve(per.size());
    for (auto& [id, latlon] : per)
        out.push_back({id, {median_inplace(latlon.first), median_inplace(latlon.second)}});
    std::sort(out.begin(), out.end(),
              [](const LocatedUser& a, const LocatedUser& b) { return a.id < b.id; });
    return out;
}

GeoDataset build_geo_dataset(const std::vector<LocatedUser>& users, const EdgeList& edges,
                             const BBox& box) {
    GeoDataset data;
    data.box = box;
    for (const LocatedUser& u : users)
        if (box.contains(u.loc)) data.users.push_back({u.id, u.loc, 0});
    data.adj.resize(data.users.size());

    auto index_of = [&](std::int64_t id) -> std::int64_t {
        auto it = std::lower_bound(data.users.begin(), data.users.end(), id,
                                   [](const GeoUser& u, std::int64_t v) { return u.id < v; });
        if (it == data.users.end() || it->id != id) return -1;
        return it - data.users.begin();
    };
    for (const auto& e : edges) {
        const std::int64_t ia = index_of(e.first);
        if (ia < 0) continue;
        const std::int64_t ib = index_of(e.second);
        if (ib < 0 || ia == ib) continue;
        data.adj[ia].push_back(static_cast<std::uint32_t>(ib));
    }
    for (std::size_t i = 0; i < data.adj.size(); ++i) {
        auto& a = data.adj[i];
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        data.users[i].degree = static_cast<std::uint32_t>(a.size());
    }
    return data;
}

namespace {

// Bin index of integer value v on a lg grid with `per_decade` bins per
// factor of 10. Binning integers by their own index keeps the per-bin
// integer counts exactly consistent with the data.
long lg_bin(double v, int per_decade) {
    return static_cast<long>(std::floor(std::log10(v) * per_decade + 1e-12));
}

}  // namespace

std::vector<BinPoint> degree_fit_points(const std::vector<GeoUser>& users) {
    std::uint32_t max_deg = 0;
    for (const GeoUser& u : users) max_deg = std::max(max_deg, u.degree);
    std::vector<BinPoint> bins;
    if (max_deg == 0) return bins;
    const long nbins = lg_bin(static_cast<double>(max_deg), 10) + 1;
    std::vector<double> counts(nbins, 0.0), integers(nbins, 0.0);
    for (const GeoUser& u : users)
        if (u.degree > 0) counts[lg_bin(u.degree, 10)] += 1.0;
    for (std::uint32_t l = 1; l <= max_deg; ++l) integers[lg_bin(l, 10)] += 1.0;
    for (long b = 0; b < nbins; ++b) {
        if (counts[b] <= 0.0) continue;
        BinPoint p;
        p.x = 0.1 * b + 0.05;
        p.num = counts[b];
        p.den = integers[b];
        p.y = std::log10(counts[b] / integers[b]);
        bins.push_back(p);
    }
    return bins;
}

FitResult fit_degree_exponent(const std::vector<GeoUser>& users) {
    std::unordered_set<std::uint32_t> distinct;
    for (const GeoUser& u : users)
        if (u.degree > 0) distinct.insert(u.degree);
    if (distinct.size() < 10)
        throw std::invalid_argument("degree fit needs >= 10 distinct degree values, got " +
                                    std::to_string(distinct.size()));
    const std::vector<BinPoint> bins = degree_fit_points(users);
    if (bins.size() < 10)
        throw std::invalid_argument("degree fit needs >= 10 occupied bins, got " +
                                    std::to_string(bins.size()));
    std::vector<double> x, y;
    for (const BinPoint& p : bins) {
        x.push_back(p.x);
        y.push_back(p.y);
    }
    const LinFit f = ols_fit(x, y);
    return {f.slope, f.intercept, f.r2, bins.size(),
            "lg-degree bins, 0.1 wide, per-integer density"};
}

FormationExperiment population_distance_experiment(const GeoDataset& data,
                                                   const FormationOptions& opts) {
    const std::size_t m = data.users.size();
    if (m < 2) throw std::invalid_argument("population-distance experiment needs >= 2 users");
    if (opts.sample_count == 0) throw std::invalid_argument("sample_count must be positive");
    if (opts.d_f_km <= 0.0) throw std::invalid_argument("d_f_km must be positive");

    std::vector<GeoPoint> locs(m);
    for (std::size_t i = 0; i < m; ++i) locs[i] = data.users[i].loc;
    const GeoKdTree tree(locs);

    // User subsample: a fixed uniform subset, drawn once.
    std::vector<std::uint32_t> sample(m);
    for (std::size_t i = 0; i < m; ++i) sample[i] = static_cast<std::uint32_t>(i);
    if (opts.subsample_users > 0 && opts.subsample_users < m) {
        Rng gs = substream(opts.seed, Stream::dataset, 1);
        for (std::size_t i = 0; i < opts.subsample_users; ++i) {
            const std::size_t j = i + uniform_below(gs, m - i);
            std::swap(sample[i], sample[j]);
        }
        sample.resize(opts.subsample_users);
        std::sort(sample.begin(), sample.end());
    }

    // Uniform positions over the box (coordinate-uniform), filtered to lie
    // within d_f of some user; that nearest user is the position's proxy.
    struct Retained {
        GeoPoint p;
        std::uint32_t v;
    };
    std::vector<Retained> retained;
    Rng gp = substream(opts.seed, Stream::dataset, 0);
    const BBox box = opts.position_box.value_or(data.box);
    for (std::size_t i = 0; i < opts.sample_count; ++i) {
        GeoPoint p;
        p.lat = box.lat_min + uniform01(gp) * (box.lat_max - box.lat_min);
        p.lon = box.lon_min + uniform01(gp) * (box.lon_max - box.lon_min);
        const std::uint32_t v = tree.nearest(p);
        if (haversine_km(p, locs[v]) <= opts.d_f_km) retained.push_back({p, v});
    }
    if (retained.empty())
        throw std::runtime_error("no sampled position lies within the distance filter of a user");

    constexpr int kMaxBins = 64;
    std::vector<std::uint64_t> num(kMaxBins, 0), den(kMaxBins, 0);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::uint64_t> lnum(kMaxBins, 0), lden(kMaxBins, 0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16) nowait
#endif
        for (std::int64_t ri = 0; ri < static_cast<std::int64_t>(retained.size()); ++ri) {
            const Retained& rp = retained[static_cast<std::size_t>(ri)];
            for (const std::uint32_t u : sample) {
                if (u == rp.v) continue;
                const double r = haversine_km(locs[u], rp.p);
                const std::size_t within = tree.count_within_km(locs[u], r);
                if (within < 2) continue;  // only u itself
                const std::size_t n_pop = within - 1;
                const long b = lg_bin(static_cast<double>(n_pop), 5);
                if (b < 0 || b >= kMaxBins) continue;
                lden[b] += 1;
                const auto& a = data.adj[u];
                if (std::binary_search(a.begin(), a.end(), rp.v)) lnum[b] += 1;
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (int b = 0; b < kMaxBins; ++b) {
            num[b] += lnum[b];
            den[b] += lden[b];
        }
    }

    FormationExperiment out;
    out.positions_drawn = opts.sample_count;
    out.positions_retained = retained.size();
    out.users_sampled = sample.size();
    for (int b = 0; b < kMaxBins; ++b) {
        if (den[b] == 0) continue;
        BinPoint p;
        p.x = 0.2 * b + 0.1;
        p.num = static_cast<double>(num[b]);
        p.den = static_cast<double>(den[b]);
        p.y = num[b] > 0 ? std::log10(p.num / p.den)
                         : std::numeric_limits<double>::quiet_NaN();
        out.bins.push_back(p);
    }
    return out;
}

FitResult fit_formation_exponent(const FormationExperiment& exp) {
    std::vector<double> x, y;
    for (const BinPoint& p : exp.bins) {
        if (p.den < 30.0 || p.num < 1.0) continue;
        x.push_back(p.x);
        y.push_back(p.y);
    }
    if (x.size() < 10)
        throw std::invalid_argument("formation fit needs >= 10 populated bins, got " +
                                    std::to_string(x.size()));
    const LinFit f = ols_fit(x, y);
    return {f.slope, f.intercept, f.r2, x.size(),
            "lg-population bins, 0.2 wide, min denominator 30"};
}

GeoFixture gen_synthetic_geo_fixture(const FixtureSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("fixture needs n >= 2");
    if (spec.gamma < 0.0 || spec.beta < 0.0)
        throw std::invalid_argument("fixture exponents must be >= 0");
    if (spec.box_km <= 0.0) throw std::invalid_argument("fixture box must be positive");
    if (spec.max_out_degree < 1)
        throw std::invalid_argument("fixture degree cap must be >= 1");

    const std::size_t n = spec.n;
    const double L = std::sqrt(static_cast<double>(n));
    const TorusDeployment dep = sample_deployment(n, spec.seed);
    const ZipfTable deg_table(n - 1, spec.gamma);
    // Friend choice in rank form: on a finite user set, a density that
    // decays as (population within the distance + 1)^-beta is the same law
    // as picking the j-th nearest user with probability proportional to
    // (j+1)^-beta. Drawing ranks directly keeps the law exact out to the
    // edge of the box, where disk populations stop tracking disk areas.
    // The (j+1) values are handled as a Zipf table over {1..n} with the
    // value 1 rejected.
    const ZipfTable rank_table(n, spec.beta);

    std::vector<std::vector<std::uint32_t>> adj(n);
    std::vector<double> dist2(n);
    std::vector<std::uint32_t> order(n);
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k < n; ++k) {
        Rng g = substream(spec.seed, Stream::formation, k);
        std::size_t q;
        do {
            q = deg_table.sample(g);
        } while (q > spec.max_out_degree);
        ranks.clear();
        for (std::size_t i = 0; i < q; ++i) {
            std::size_t l;
            do {
                l = rank_table.sample(g);
            } while (l < 2);
            ranks.push_back(l - 1);  // rank among the other n-1 users
        }
        if (ranks.empty()) continue;
        // Ranks collide exactly when two anchors pick the same friend, and
        // duplicate friends collapse.
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        const std::size_t max_rank = ranks.back();
        // Plane distances, not torus: the projected data set lives on a
        // plane, and ranks are all that matter.
        for (std::size_t w = 0; w < n; ++w) {
            const double dx = dep.positions[w].x - dep.positions[k].x;
            const double dy = dep.positions[w].y - dep.positions[k].y;
            dist2[w] = dx * dx + dy * dy;
            order[w] = static_cast<std::uint32_t>(w);
        }
        dist2[k] = std::numeric_limits<double>::infinity();  // exclude self
        auto closer = [&](std::uint32_t a, std::uint32_t b) {
            return dist2[a] < dist2[b] || (dist2[a] == dist2[b] && a < b);
        };
        std::nth_element(order.begin(), order.begin() + (max_rank - 1), order.end(),
                         closer);
        std::sort(order.begin(), order.begin() + max_rank, closer);
        auto& out = adj[k];
        out.reserve(ranks.size());
        for (const std::size_t r : ranks) out.push_back(order[r - 1]);
    }

    // Equirectangular mapping centered on spec.center, box_km across.
    const double km_per_unit = spec.box_km / L;
    const double rad = M_PI / 180.0;
    const double km_per_deg_lat = 111.32;
    const double km_per_deg_lon = 111.32 * std::cos(spec.center.lat * rad);
    GeoFixture fx;
    fx.checkins.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x_km = dep.positions[k].x * km_per_unit - spec.box_km / 2.0;
        const double y_km = dep.positions[k].y * km_per_unit - spec.box_km / 2.0;
        Checkin c;
        c.user = static_cast<std::int64_t>(k);
        c.timestamp = "2010-10-19T23:55:27Z";
        c.lat = spec.center.lat + y_km / km_per_deg_lat;
        c.lon = spec.center.lon + x_km / km_per_deg_lon;
        c.location_id = std::to_string(k);
        fx.checkins.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::sort(adj[k].begin(), adj[k].end());
        for (const std::uint32_t w : adj[k])
            fx.edges.emplace_back(static_cast<std::int64_t>(k),
                                  static_cast<std::int64_t>(w));
    }
    const double dlat = spec.box_km / 2.0 / km_per_deg_lat + 0.3;
    const double dlon = spec.box_km / 2.0 / km_per_deg_lon + 0.4;
    fx.box = {spec.center.lat - dlat, spec.center.lat + dlat, spec.center.lon - dlon,
              spec.center.lon + dlon};
    return fx;
}

std::string fit_result_json(const FitResult& fit, const std::string& estimate_name,
                            double estimate) {
    nlohmann::ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r2"] = fit.r2;
    j["points"] = fit.points;
    j["binning"] = fit.binning;
    j[estimate_name] = estimate;
    return j.dump(2) + "\n";
}

std::string bins_csv(const std::vector<BinPoint>& bins) {
    std::string out = "x,y,num,den\n";
    char buf[160];
    for (const BinPoint& p : bins) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", p.x, p.y, p.num,
                      p.den);
        out += buf;
    }
    return out;
}

}  // namespace osn
