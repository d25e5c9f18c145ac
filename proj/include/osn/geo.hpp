#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace osn {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
};

inline double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double rad = M_PI / 180.0;
    const double s1 = std::sin((b.lat - a.lat) * rad / 2.0);
    const double s2 = std::sin((b.lon - a.lon) * rad / 2.0);
    double h = s1 * s1 + std::cos(a.lat * rad) * std::cos(b.lat * rad) * s2 * s2;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

// Nearest-point and ball-count queries over fixed geographic points. Points
// are embedded on the Earth sphere in 3D; the chord length is monotone in
// the great-circle distance, so nearest-by-chord is nearest-by-haversine and
// a haversine ball is exactly a chord ball of radius 2R sin(d / 2R).
class GeoKdTree {
public:
    GeoKdTree() = default;

    explicit GeoKdTree(const std::vector<GeoPoint>& pts) {
        const std::size_t m = pts.size();
        if (m > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("too many points for the geo index");
        x_.resize(m);
        y_.resize(m);
        z_.resize(m);
        perm_.resize(m);
        const double rad = M_PI / 180.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double cl = std::cos(pts[i].lat * rad);
            x_[i] = kEarthRadiusKm * cl * std::cos(pts[i].lon * rad);
            y_[i] = kEarthRadiusKm * cl * std::sin(pts[i].lon * rad);
            z_[i] = kEarthRadiusKm * std::sin(pts[i].lat * rad);
            perm_[i] = static_cast<std::uint32_t>(i);
        }
        if (m != 0) {
            nodes_.reserve(2 * m / kLeaf + 2);
            build(0, m);
        }
    }

    bool empty() const { return perm_.empty(); }
    std::size_t size() const { return perm_.size(); }

    // Index (into the construction vector) of the nearest point; the
    // smallest index wins exact ties.
    std::uint32_t nearest(const GeoPoint& q) const {
        if (empty()) throw std::logic_error("nearest on an empty geo index");
        double qx, qy, qz;
        embed(q, qx, qy, qz);
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_id = 0;
        nearest_rec(0, qx, qy, qz, best, best_id);
        return best_id;
    }

    // Number of points at great-circle distance <= d_km from q.
    std::size_t count_within_km(const GeoPoint& q, double d_km) const {
        if (empty() || d_km < 0.0) return 0;
        double qx, qy, qz;
        embed(q, qx, qy, qz);
        const double half = std::min(d_km, M_PI * kEarthRadiusKm) / (2.0 * kEarthRadiusKm);
        const double chord = 2.0 * kEarthRadiusKm * std::sin(half);
        // Tiny relative slack so a radius computed from one of the stored
        // points still counts that point after the round trip.
        const double c2 = chord * chord * (1.0 + 1e-12) + 1e-30;
        return count_rec(0, qx, qy, qz, c2);
    }

private:
    static constexpr std::size_t kLeaf = 16;

    struct Node {
        double bmin[3], bmax[3];
        std::uint32_t begin = 0, end = 0;
        std::int32_t left = -1, right = -1;
    };

    static void embed(const GeoPoint& p, double& px, double& py, double& pz) {
        const double rad = M_PI / 180.0;
        const double cl = std::cos(p.lat * rad);
        px = kEarthRadiusKm * cl * std::cos(p.lon * rad);
        py = kEarthRadiusKm * cl * std::sin(p.lon * rad);
        pz = kEarthRadiusKm * std::sin(p.lat * rad);
    }

    double coord(std::uint32_t id, int axis) const {
        return axis == 0 ? x_[id] : (axis == 1 ? y_[id] : z_[id]);
    }

    std::int32_t build(std::size_t begin, std::size_t end) {
        const std::int32_t me = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{});
        Node n;
        n.begin = static_cast<std::uint32_t>(begin);
        n.end = static_cast<std::uint32_t>(end);
        for (int a = 0; a < 3; ++a) {
            n.bmin[a] = std::numeric_limits<double>::infinity();
            n.bmax[a] = -std::numeric_limits<double>::infinity();
        }
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t id = perm_[i];
            for (int a = 0; a < 3; ++a) {
                n.bmin[a] = std::min(n.bmin[a], coord(id, a));
                n.bmax[a] = std::max(n.bmax[a], coord(id, a));
            }
        }
        if (end - begin > kLeaf) {
            int axis = 0;
            double w = -1.0;
            for (int a = 0; a < 3; ++a) {
                const double e = n.bmax[a] - n.bmin[a];
                if (e > w) {
                    w = e;
                    axis = a;
                }
            }
            const std::size_t mid = begin + (end - begin) / 2;
            std::nth_element(perm_.begin() + begin, perm_.begin() + mid,
                             perm_.begin() + end,
                             [&](std::uint32_t a, std::uint32_t b) {
                                 const double ca = coord(a, axis), cb = coord(b, axis);
                                 return ca < cb || (ca == cb && a < b);
                             });
            n.left = build(begin, mid);
            n.right = build(mid, end);
        }
        nodes_[me] = n;
        return me;
    }

    static double box_min_d2(const Node& n, double qx, double qy, double qz) {
        const double q[3] = {qx, qy, qz};
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            const double c = std::clamp(q[a], n.bmin[a], n.bmax[a]);
            d2 += (q[a] - c) * (q[a] - c);
        }
        return d2;
    }

    static double box_max_d2(const Node& n, double qx, double qy, double qz) {
        const double q[3] = {qx, qy, qz};
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            const double f = std::max(std::fabs(q[a] - n.bmin[a]), std::fabs(q[a] - n.bmax[a]));
            d2 += f * f;
        }
        return d2;
    }

    void nearest_rec(std::int32_t ni, double qx, double qy, double qz, double& best,
                     std::uint32_t& best_id) const {
        const Node& n = nodes_[ni];
        if (box_min_d2(n, qx, qy, qz) > best) return;
        if (n.left < 0) {
            for (std::uint32_t i = n.begin; i < n.end; ++i) {
                const std::uint32_t id = perm_[i];
                const double dx = x_[id] - qx, dy = y_[id] - qy, dz = z_[id] - qz;
                const double d2 = dx * dx + dy * dy + dz * dz;
                if (d2 < best || (d2 == best && id < best_id)) {
                    best = d2;
                    best_id = id;
                }
            }
            return;
        }
        const double dl = box_min_d2(nodes_[n.left], qx, qy, qz);
        const double dr = box_min_d2(nodes_[n.right], qx, qy, qz);
        if (dl <= dr) {
            nearest_rec(n.left, qx, qy, qz, best, best_id);
            if (dr <= best) nearest_rec(n.right, qx, qy, qz, best, best_id);
        } else {
            nearest_rec(n.right, qx, qy, qz, best, best_id);
            if (dl <= best) nearest_rec(n.left, qx, qy, qz, best, best_id);
        }
    }

    std::size_t count_rec(std::int32_t ni, double qx, double qy, double qz,
                          double c2) const {
        const Node& n = nodes_[ni];
        if (box_min_d2(n, qx, qy, qz) > c2) return 0;
        if (box_max_d2(n, qx, qy, qz) <= c2) return n.end - n.begin;
        if (n.left < 0) {
            std::size_t c = 0;
            for (std::uint32_t i = n.begin; i < n.end; ++i) {
                const std::uint32_t id = perm_[i];
                const double dx = x_[id] - qx, dy = y_[id] - qy, dz = z_[id] - qz;
                if (dx * dx + dy * dy + dz * dz <= c2) ++c;
            }
            return c;
        }
        return count_rec(n.left, qx, qy, qz, c2) + count_rec(n.right, qx, qy, qz, c2);
    }

    std::vector<double> x_, y_, z_;
    std::vector<std::uint32_t> perm_;
    std::vector<Node> nodes_;
};

}  // namespace osn
