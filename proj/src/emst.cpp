#include "osn/emst.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace osn {
namespace {

// Edges order by squared length; both algorithms use the same comparison,
// so their tie-breaks agree.
struct Edge {
    double d2;
    std::uint32_t a;  // a < b
    std::uint32_t b;

    bool operator<(const Edge& o) const {
        if (d2 != o.d2) return d2 < o.d2;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

Edge make_edge(double d2, std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return Edge{d2, u, v};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Squared torus distance for coordinates already in [0, L).
double dist2(const Point& p, const Point& q, double L) {
    double dx = std::fabs(p.x - q.x);
    if (dx > L - dx) dx = L - dx;
    double dy = std::fabs(p.y - q.y);
    if (dy > L - dy) dy = L - dy;
    return dx * dx + dy * dy;
}

// Wrapped distance from coordinate x to the interval [lo, hi], all in [0, L).
double axis_gap(double x, double lo, double hi, double L) {
    if (x < lo) {
        const double g = lo - x;
        const double w = x + L - hi;  // reach the interval across the seam
        return g < w ? g : w;
    }
    if (x > hi) {
        const double g = x - hi;
        const double w = lo + L - x;
        return g < w ? g : w;
    }
    return 0.0;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t k) : parent(k) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the smaller index as root
        parent[b] = a;
        return true;
    }
};

// kd-tree over points on the torus. Every node carries a component tag so
// Boruvka queries can skip subtrees that lie entirely in the query point's
// own component.
class KdTree {
public:
    KdTree(const std::vector<Point>& pts, double L) : L_(L) {
        const std::size_t k = pts.size();
        order_.resize(k);
        std::iota(order_.begin(), order_.end(), 0u);
        nodes_.reserve(2 * k / kLeaf + 2);
        root_ = build(pts, 0, k);
        // Slot-ordered copies: leaf scans walk them sequentially instead of
        // chasing ids through the caller's buffer.
        opts_.resize(k);
        for (std::size_t s = 0; s < k; ++s) opts_[s] = pts[order_[s]];
        comp_slot_.resize(k);
    }

    // Refresh the per-slot component ids and the "all points in one
    // component" subtree tags.
    void retag(const std::vector<std::uint32_t>& comp) {
        for (std::size_t s = 0; s < order_.size(); ++s) comp_slot_[s] = comp[order_[s]];
        tag(root_);
    }

    // Best edge from point i to any point outside component ci. `seed` is a
    // known upper bound (the best edge already held by i's component).
    Edge nearest_foreign(std::uint32_t i, const Point& q, std::uint32_t ci,
                         Edge seed) const {
        query(root_, i, q, ci, seed);
        return seed;
    }

private:
    static constexpr std::size_t kLeaf = 12;

    struct Node {
        double lo[2], hi[2];
        std::uint32_t begin, end;
        int left = -1, right = -1;
        std::uint32_t comp_tag = 0;
        bool uniform = false;  // whole subtree in one component
    };

    int build(const std::vector<Point>& pts, std::size_t b, std::size_t e) {
        Node nd;
        nd.begin = static_cast<std::uint32_t>(b);
        nd.end = static_cast<std::uint32_t>(e);
        nd.lo[0] = nd.lo[1] = kInf;
        nd.hi[0] = nd.hi[1] = -kInf;
        for (std::size_t s = b; s < e; ++s) {
            const Point& p = pts[order_[s]];
            nd.lo[0] = std::min(nd.lo[0], p.x);
            nd.hi[0] = std::max(nd.hi[0], p.x);
            nd.lo[1] = std::min(nd.lo[1], p.y);
            nd.hi[1] = std::max(nd.hi[1], p.y);
        }
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(nd);
        if (e - b > kLeaf) {
            const int axis = (nd.hi[0] - nd.lo[0] >= nd.hi[1] - nd.lo[1]) ? 0 : 1;
            const std::size_t mid = (b + e) / 2;
            std::nth_element(order_.begin() + b, order_.begin() + mid, order_.begin() + e,
                             [&](std::uint32_t u, std::uint32_t v) {
                                 const double cu = axis == 0 ? pts[u].x : pts[u].y;
                                 const double cv = axis == 0 ? pts[v].x : pts[v].y;
                                 if (cu != cv) return cu < cv;
                                 return u < v;
                             });
            const int l = build(pts, b, mid);
            const int r = build(pts, mid, e);
            nodes_[id].left = l;
            nodes_[id].right = r;
        }
        return id;
    }

    void tag(int id) {
        Node& nd = nodes_[id];
        if (nd.left < 0) {
            nd.comp_tag = comp_slot_[nd.begin];
            nd.uniform = true;
            for (std::uint32_t s = nd.begin + 1; s < nd.end; ++s) {
                if (comp_slot_[s] != nd.comp_tag) {
                    nd.uniform = false;
                    break;
                }
            }
            return;
        }
        tag(nd.left);
        tag(nd.right);
        const Node& a = nodes_[nd.left];
        const Node& c = nodes_[nd.right];
        nd.uniform = a.uniform && c.uniform && a.comp_tag == c.comp_tag;
        nd.comp_tag = a.comp_tag;
    }

    double box_dist2(const Node& nd, const Point& q) const {
        const double dx = axis_gap(q.x, nd.lo[0], nd.hi[0], L_);
        const double dy = axis_gap(q.y, nd.lo[1], nd.hi[1], L_);
        return dx * dx + dy * dy;
    }

    // Precondition: the node's box is within best.d2 (the caller checked),
    // so entry re-tests only the component tag. A subtree is visited when
    // its box distance equals the bound, which keeps tied edges reachable
    // for the index tie-break.
    void query(int id, std::uint32_t i, const Point& q, std::uint32_t ci,
               Edge& best) const {
        const Node& nd = nodes_[id];
        if (nd.left < 0) {
            for (std::uint32_t s = nd.begin; s < nd.end; ++s) {
                if (comp_slot_[s] == ci) continue;
                const double d2 = dist2(opts_[s], q, L_);
                if (d2 > best.d2) continue;
                const Edge cand = make_edge(d2, i, order_[s]);
                if (cand < best) best = cand;
            }
            return;
        }
        const Node& ln = nodes_[nd.left];
        const Node& rn = nodes_[nd.right];
        const double dl2 = (ln.uniform && ln.comp_tag == ci) ? kInf : box_dist2(ln, q);
        const double dr2 = (rn.uniform && rn.comp_tag == ci) ? kInf : box_dist2(rn, q);
        if (dl2 <= dr2) {
            if (dl2 <= best.d2) query(nd.left, i, q, ci, best);
            if (dr2 <= best.d2) query(nd.right, i, q, ci, best);
        } else {
            if (dr2 <= best.d2) query(nd.right, i, q, ci, best);
            if (dl2 <= best.d2) query(nd.left, i, q, ci, best);
        }
    }

    double L_;
    std::vector<std::uint32_t> order_;
    std::vector<Point> opts_;
    std::vector<std::uint32_t> comp_slot_;
    std::vector<Node> nodes_;
    int root_ = 0;
};

double prim_core(const std::vector<Point>& pts, double L, EmstResult* out) {
    const std::size_t k = pts.size();
    if (k < 2) return 0.0;

    std::vector<char> in_tree(k, 0);
    std::vector<Edge> best(k, Edge{kInf, 0, 0});
    in_tree[0] = 1;
    for (std::uint32_t v = 1; v < k; ++v) {
        best[v] = make_edge(dist2(pts[0], pts[v], L), 0, v);
    }

    long double total = 0.0L;
    for (std::size_t added = 1; added < k; ++added) {
        std::uint32_t pick = 0;
        Edge pick_edge{kInf, 0, 0};
        for (std::uint32_t v = 0; v < k; ++v) {
            if (!in_tree[v] && best[v] < pick_edge) {
                pick_edge = best[v];
                pick = v;
            }
        }
        in_tree[pick] = 1;
        total += std::sqrt(pick_edge.d2);
        if (out) out->edges.emplace_back(pick_edge.a, pick_edge.b);
        for (std::uint32_t v = 0; v < k; ++v) {
            if (in_tree[v]) continue;
            const Edge cand = make_edge(dist2(pts[pick], pts[v], L), pick, v);
            if (cand < best[v]) best[v] = cand;
        }
    }
    return static_cast<double>(total);
}

double boruvka_core(const std::vector<Point>& pts, double L, EmstResult* out) {
    const std::size_t k = pts.size();
    if (k < 2) return 0.0;

    KdTree tree(pts, L);
    UnionFind uf(k);
    std::vector<std::uint32_t> comp(k);
    std::vector<Edge> best;
    long double total = 0.0L;
    std::size_t components = k;

    while (components > 1) {
        for (std::uint32_t v = 0; v < k; ++v) comp[v] = uf.find(v);
        tree.retag(comp);

        // Component roots are the smallest member indices, so scanning points
        // in ascending order lets each query start from its root's running
        // best as the prune bound.
        best.assign(k, Edge{kInf, 0, 0});
        for (std::uint32_t v = 0; v < k; ++v) {
            const std::uint32_t r = comp[v];
            best[r] = tree.nearest_foreign(v, pts[v], r, best[r]);
        }

        bool merged = false;
        for (std::uint32_t r = 0; r < k; ++r) {
            const Edge& e = best[r];
            if (e.d2 == kInf) continue;
            if (uf.unite(e.a, e.b)) {
                total += std::sqrt(e.d2);
                if (out) out->edges.emplace_back(e.a, e.b);
                --components;
                merged = true;
            }
        }
        if (!merged) break;  // unreachable for finite inputs, guards looping
    }
    return static_cast<double>(total);
}

}  // namespace

EmstResult emst_prim(const std::vector<Point>& pts, double L) {
    EmstResult out;
    out.total = prim_core(pts, L, &out);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

EmstResult emst_boruvka(const std::vector<Point>& pts, double L) {
    EmstResult out;
    out.total = boruvka_core(pts, L, &out);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

double emst_total(const std::vector<Point>& pts, double L) {
    if (pts.size() <= 128) return prim_core(pts, L, nullptr);
    return boruvka_core(pts, L, nullptr);
}

}  // namespace osn
