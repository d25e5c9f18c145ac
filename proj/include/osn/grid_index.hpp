#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "osn/rng.hpp"
#include "osn/torus.hpp"

namespace osn {

// Uniform bucket grid over the full torus for nearest-point queries.
// Cells are laid out in CSR form so the structure is immutable and cheap to
// share across threads. Holds a pointer to the caller's point buffer; the
// buffer must stay alive (moving the owning vector is fine, reallocating is
// not).
class GridIndex {
public:
    GridIndex() = default;

    GridIndex(const Point* pts, std::size_t count, double L)
        : pts_(pts), count_(count), L_(L) {
        if (L <= 0.0) throw std::invalid_argument("GridIndex: side must be positive");
        m_ = static_cast<int>(std::sqrt(static_cast<double>(std::max<std::size_t>(count, 1))));
        m_ = std::clamp(m_, 1, 1024);
        h_ = L_ / m_;
        cell_start_.assign(static_cast<std::size_t>(m_) * m_ + 1, 0);
        std::vector<int> cell_of(count);
        for (std::size_t i = 0; i < count; ++i) {
            cell_of[i] = cell_id(pts[i]);
            ++cell_start_[static_cast<std::size_t>(cell_of[i]) + 1];
        }
        for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
        ids_.resize(count);
        std::vector<std::size_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
        for (std::size_t i = 0; i < count; ++i)
            ids_[cursor[static_cast<std::size_t>(cell_of[i])]++] = static_cast<std::uint32_t>(i);
        // Cell-ordered copy of the points: scans walk it sequentially
        // instead of chasing ids through the caller's buffer.
        cell_pts_.resize(count);
        for (std::size_t s = 0; s < count; ++s) cell_pts_[s] = pts[ids_[s]];
    }

    GridIndex(const std::vector<Point>& pts, double L)
        : GridIndex(pts.data(), pts.size(), L) {}

    // Index of the point closest to q in the torus metric. Ties go to the
    // smallest index. Throws if the set is empty.
    std::uint32_t nearest(const Point& q) const {
        double best2, second2;
        return nearest_unique(q, 0.0, best2, second2);
    }

    // Same winner as nearest(), plus the squared distances of the best and
    // second-best candidates so the caller can tell whether anything else
    // sits within rel_tol of the minimum. Allocation-free.
    std::uint32_t nearest_unique(const Point& q, double rel_tol, double& best2,
                                 double& second2) const {
        if (count_ == 0) throw std::runtime_error("GridIndex: nearest on empty set");
        const int cx = coord_cell(q.x);
        const int cy = coord_cell(q.y);
        const double slack = (1.0 + rel_tol) * (1.0 + rel_tol);
        best2 = std::numeric_limits<double>::infinity();
        second2 = std::numeric_limits<double>::infinity();
        std::uint32_t best_id = 0;
        // Rings 0 and 1 together are a 3x3 block of three contiguous row
        // spans; most queries never look further.
        for (int dy = -1; dy <= 1; ++dy)
            scan_row(cy + dy, cx - 1, cx + 1, q, best2, second2, best_id);
        if (3 >= m_) return best_id;
        for (int j = 2; j <= m_; ++j) {
            // Any point in a ring-j cell is at least (j-1)*h away; the slack
            // keeps the scan wide enough to certify the absence of ties.
            const double lb = (j - 1) * h_;
            if (lb * lb > best2 * slack) break;
            scan_ring(cx, cy, j, q, best2, second2, best_id);
            if (2 * j + 1 >= m_) break;  // ring already covered the whole grid
        }
        return best_id;
    }

    // All indices whose distance to q is within rel_tol (relative) of the
    // minimum, sorted ascending. Used for randomized tie-breaking.
    std::vector<std::uint32_t> nearest_tied(const Point& q, double rel_tol) const {
        if (count_ == 0) throw std::runtime_error("GridIndex: nearest on empty set");
        const int cx = coord_cell(q.x);
        const int cy = coord_cell(q.y);
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::pair<double, std::uint32_t>> cands;
        for (int j = 0; j <= m_; ++j) {
            if (j > 1 && (j - 1) * h_ > best * (1.0 + rel_tol)) break;
            collect_ring(cx, cy, j, q, rel_tol, best, cands);
            if (2 * j + 1 >= m_) break;
        }
        const double cutoff = best * (1.0 + rel_tol);
        std::vector<std::uint32_t> out;
        for (const auto& [d, id] : cands)
            if (d <= cutoff) out.push_back(id);
        std::sort(out.begin(), out.end());
        // Wrapped rings on tiny grids can visit a cell twice.
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    int cells_per_side() const { return m_; }
    std::size_t size() const { return count_; }

private:
    int cell_id(const Point& p) const { return coord_cell(p.y) * m_ + coord_cell(p.x); }

    int coord_cell(double x) const {
        int c = static_cast<int>(wrap_coord(x, L_) / h_);
        return std::min(c, m_ - 1);  // guards x just below L mapping to m_
    }

    // Squared torus distance for coordinates already in [0, L).
    double dist2(const Point& p, const Point& q) const {
        double dx = std::fabs(p.x - q.x);
        if (dx > L_ - dx) dx = L_ - dx;
        double dy = std::fabs(p.y - q.y);
        if (dy > L_ - dy) dy = L_ - dy;
        return dx * dx + dy * dy;
    }

    // Ring offsets stay within one grid period, so a branch wraps them.
    int wrap_cell(int c) const {
        if (c < 0) return c + m_;
        if (c >= m_) return c - m_;
        return c;
    }

    // Contiguous run of cells within one row. Revisiting a point is
    // harmless: the current best never updates second-best, so wrapped
    // rings cannot manufacture ties.
    void scan_span(std::size_t row, int a, int b, const Point& q, double& best2,
                   double& second2, std::uint32_t& best_id) const {
        const std::size_t end = cell_start_[row + static_cast<std::size_t>(b) + 1];
        for (std::size_t s = cell_start_[row + static_cast<std::size_t>(a)]; s < end; ++s) {
            const double d2 = dist2(cell_pts_[s], q);
            if (d2 > second2) continue;
            const std::uint32_t id = ids_[s];
            if (d2 < best2 || (d2 == best2 && id < best_id)) {
                if (best2 < second2) second2 = best2;
                best2 = d2;
                best_id = id;
            } else if (id != best_id && d2 < second2) {
                second2 = d2;
            }
        }
    }

    void scan_row(int gy, int x_lo, int x_hi, const Point& q, double& best2, double& second2,
                  std::uint32_t& best_id) const {
        const std::size_t row = static_cast<std::size_t>(wrap_cell(gy)) * m_;
        if (x_hi - x_lo + 1 >= m_) {
            scan_span(row, 0, m_ - 1, q, best2, second2, best_id);
            return;
        }
        const int a = wrap_cell(x_lo);
        const int b = wrap_cell(x_hi);
        if (a <= b) {
            scan_span(row, a, b, q, best2, second2, best_id);
        } else {
            scan_span(row, a, m_ - 1, q, best2, second2, best_id);
            scan_span(row, 0, b, q, best2, second2, best_id);
        }
    }

    void scan_ring(int cx, int cy, int j, const Point& q, double& best2, double& second2,
                   std::uint32_t& best_id) const {
        if (j == 0) {
            scan_row(cy, cx, cx, q, best2, second2, best_id);
            return;
        }
        scan_row(cy - j, cx - j, cx + j, q, best2, second2, best_id);
        scan_row(cy + j, cx - j, cx + j, q, best2, second2, best_id);
        for (int dy = -j + 1; dy <= j - 1; ++dy) {
            scan_row(cy + dy, cx - j, cx - j, q, best2, second2, best_id);
            scan_row(cy + dy, cx + j, cx + j, q, best2, second2, best_id);
        }
    }

    void collect_cell(int gx, int gy, const Point& q, double rel_tol, double& best,
                      std::vector<std::pair<double, std::uint32_t>>& cands) const {
        gx = wrap_cell(gx);
        gy = wrap_cell(gy);
        const std::size_t c = static_cast<std::size_t>(gy) * m_ + gx;
        for (std::size_t s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
            const std::uint32_t id = ids_[s];
            const double d = torus_distance(pts_[id], q, L_);
            if (d < best) best = d;
            if (d <= best * (1.0 + rel_tol)) cands.emplace_back(d, id);
        }
    }

    void collect_ring(int cx, int cy, int j, const Point& q, double rel_tol, double& best,
                      std::vector<std::pair<double, std::uint32_t>>& cands) const {
        if (j == 0) {
            collect_cell(cx, cy, q, rel_tol, best, cands);
            return;
        }
        for (int dx = -j; dx <= j; ++dx) {
            collect_cell(cx + dx, cy - j, q, rel_tol, best, cands);
            collect_cell(cx + dx, cy + j, q, rel_tol, best, cands);
        }
        for (int dy = -j + 1; dy <= j - 1; ++dy) {
            collect_cell(cx - j, cy + dy, q, rel_tol, best, cands);
            collect_cell(cx + j, cy + dy, q, rel_tol, best, cands);
        }
    }

    const Point* pts_ = nullptr;
    std::size_t count_ = 0;
    double L_ = 1.0;
    int m_ = 1;
    double h_ = 1.0;
    std::vector<std::size_t> cell_start_;
    std::vector<std::uint32_t> ids_;
    std::vector<Point> cell_pts_;
};

// Nearest node with ties (within relative 1e-12 of the minimum distance)
// broken uniformly at random. The RNG is consumed only when a tie actually
// occurs, so continuous deployments leave the stream untouched.
inline std::uint32_t nearest_node(const GridIndex& index, const Point& q, Rng& g) {
    constexpr double kTol = 1e-12;
    double best2, second2;
    const std::uint32_t id = index.nearest_unique(q, kTol, best2, second2);
    if (second2 > best2 * (1.0 + kTol) * (1.0 + kTol)) return id;
    auto tied = index.nearest_tied(q, kTol);
    if (tied.size() == 1) return tied[0];
    return tied[uniform_below(g, tied.size())];
}

}  // namespace osn
