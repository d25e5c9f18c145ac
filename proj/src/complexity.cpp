#include "osn/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "osn/emst.hpp"

namespace osn {

bool same_order(const AsymptoticOrder& a, const AsymptoticOrder& b, double tol) {
    return std::fabs(a.poly - b.poly) <= tol && std::fabs(a.logpow - b.logpow) <= tol;
}

std::string to_string(const AsymptoticOrder& o) {
    char buf[64];
    if (o.logpow == 0.0) {
        std::snprintf(buf, sizeof buf, "n^%.4g", o.poly);
    } else {
        std::snprintf(buf, sizeof buf, "n^%.4g (log n)^%.4g", o.poly, o.logpow);
    }
    return buf;
}

namespace {

void check_exponent(double v, const char* name) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(name) + " must be >= 0");
}

std::vector<Point> session_points(const DisseminationSession& s,
                                  const TorusDeployment& dep) {
    if (s.destinations.empty())
        throw std::invalid_argument("session has no destinations");
    const std::size_t n = dep.positions.size();
    if (s.source >= n) throw std::out_of_range("session source id out of range");
    std::vector<Point> pts;
    pts.reserve(s.destinations.size() + 1);
    pts.push_back(dep.positions[s.source]);
    for (std::uint32_t d : s.destinations) {
        if (d >= n) throw std::out_of_range("session destination id out of range");
        pts.push_back(dep.positions[d]);
    }
    return pts;
}

}  // namespace

SessionLoad session_load(const DisseminationSession& s, const TorusDeployment& dep,
                         std::size_t session_id) {
    const auto pts = session_points(s, dep);
    SessionLoad out;
    out.session_id = session_id;
    out.emst_length = emst_total(pts, dep.L);
    out.load = s.rate * out.emst_length;
    return out;
}

double session_anchor_emst(const DisseminationSession& s, const TorusDeployment& dep) {
    if (s.anchor_subset.empty())
        throw std::invalid_argument("session has no anchors");
    if (s.source >= dep.positions.size())
        throw std::out_of_range("session source id out of range");
    std::vector<Point> pts;
    pts.reserve(s.anchor_subset.size() + 1);
    pts.push_back(dep.positions[s.source]);
    pts.insert(pts.end(), s.anchor_subset.begin(), s.anchor_subset.end());
    return emst_total(pts, dep.L);
}

double session_final_hop_sum(const DisseminationSession& s, const TorusDeployment& dep) {
    double sum = 0.0;
    for (const Point& a : s.anchor_subset) {
        const std::uint32_t id = dep.index.nearest(a);
        sum += torus_distance(a, dep.positions[id], dep.L);
    }
    return sum;
}

double session_tree_load(const DisseminationSession& s, const TorusDeployment& dep) {
    return s.rate * (session_anchor_emst(s, dep) + session_final_hop_sum(s, dep));
}

TotalComplexity total_transport_complexity(const std::vector<DisseminationSession>& sessions,
                                           const TorusDeployment& dep) {
    if (sessions.empty()) throw std::invalid_argument("no sessions");
    const std::size_t m = sessions.size();
    std::vector<double> loads(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
        loads[static_cast<std::size_t>(i)] =
            session_load(sessions[static_cast<std::size_t>(i)], dep,
                         static_cast<std::size_t>(i))
                .load;

    TotalComplexity out;
    for (double l : loads) out.total += l;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sessions[a].destinations.size() < sessions[b].destinations.size();
    });
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t decile = std::min<std::size_t>(9, r * 10 / m);
        out.by_degree_decile[decile] += loads[order[r]];
    }
    return out;
}

AsymptoticOrder predicted_mean_anchor_distance(double beta) {
    check_exponent(beta, "beta");
    if (beta > 1.5) return {0.0, 0.0};
    if (beta == 1.5) return {0.0, 1.0};
    if (beta > 1.0) return {1.5 - beta, 0.0};
    if (beta == 1.0) return {0.5, -1.0};
    return {0.5, 0.0};
}

AsymptoticOrder predicted_session_emst_factor(double beta) {
    check_exponent(beta, "beta");
    if (beta > 2.0) return {0.0, 0.0};
    if (beta == 2.0) return {0.0, 1.0};
    if (beta > 1.0) return {1.0 - beta / 2.0, 0.0};
    if (beta == 1.0) return {0.5, -0.5};
    return {0.5, 0.0};
}

AsymptoticOrder predicted_Q(double gamma) {
    check_exponent(gamma, "gamma");
    if (gamma > 2.0) return {1.0, 0.0};
    if (gamma == 2.0) return {1.0, 1.0};
    if (gamma > 1.0) return {3.0 - gamma, 0.0};
    if (gamma == 1.0) return {2.0, -1.0};
    return {2.0, 0.0};
}

AsymptoticOrder predicted_W(double gamma, double phi) {
    check_exponent(gamma, "gamma");
    check_exponent(phi, "phi");
    if (phi > 2.0) return {1.0, 0.0};
    if (phi == 2.0) {
        if (gamma > 1.0) return {1.0, 0.0};
        return {1.0, 1.0};
    }
    if (phi > 1.0) {
        const double gc = 3.0 - phi;
        if (gamma > gc) return {1.0, 0.0};
        if (gamma == gc) return {1.0, 1.0};
        if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
        if (gamma == 1.0) return {3.0 - phi, -1.0};
        return {3.0 - phi, 0.0};
    }
    if (phi == 1.0) {
        if (gamma >= 2.0) return {1.0, 0.0};
        if (gamma > 1.0) return {3.0 - gamma, -1.0};
        if (gamma == 1.0) return {2.0, -2.0};
        return {2.0, -1.0};
    }
    if (gamma > 2.0) return {1.0, 0.0};
    if (gamma == 2.0) return {1.0, 1.0};
    if (gamma > 1.0) return {3.0 - gamma, 0.0};
    if (gamma == 1.0) return {2.0, -1.0};
    return {2.0, 0.0};
}

AsymptoticOrder predicted_H(double gamma, double beta) {
    check_exponent(gamma, "gamma");
    check_exponent(beta, "beta");
    if (gamma > 2.0) {
        if (beta > 2.0) return {1.0, 0.0};
        if (beta == 2.0) return {1.0, 1.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (gamma == 2.0) {
        if (beta >= 2.0) return {1.0, 1.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (gamma > 1.5) {
        if (beta >= 2.0 * gamma - 2.0) return {3.0 - gamma, 0.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (gamma == 1.5) {
        if (beta > 1.0) return {1.5, 0.0};
        if (beta == 1.0) return {1.5, 0.5};
        return {1.5, 1.0};
    }
    if (gamma > 1.0) return {3.0 - gamma, 0.0};
    if (gamma == 1.0) return {2.0, -1.0};
    return {2.0, 0.0};
}

namespace {

AsymptoticOrder emst_lower_broadcast(double gamma, double beta) {
    if (beta > 2.0) {
        if (gamma > 1.5) return {1.0, 0.0};
        if (gamma == 1.5) return {1.0, 1.0};
        if (gamma > 1.0) return {2.5 - gamma, 0.0};
        if (gamma == 1.0) return {1.5, -1.0};
        return {1.5, 0.0};
    }
    if (beta == 2.0) {
        if (gamma > 1.5) return {1.0, 1.0};
        if (gamma == 1.5) return {1.0, 2.0};
        if (gamma > 1.0) return {2.5 - gamma, 1.0};
        if (gamma == 1.0) return {1.5, 0.0};
        return {1.5, 1.0};
    }
    if (beta > 1.0) {
        if (gamma > 1.5) return {2.0 - beta / 2.0, 0.0};
        if (gamma == 1.5) return {2.0 - beta / 2.0, 1.0};
        if (gamma > 1.0) return {3.5 - gamma - beta / 2.0, 0.0};
        if (gamma == 1.0) return {2.5 - beta / 2.0, -1.0};
        return {2.5 - beta / 2.0, 0.0};
    }
    if (beta == 1.0) {
        if (gamma > 1.5) return {1.5, -0.5};
        if (gamma == 1.5) return {1.5, 0.5};
        if (gamma > 1.0) return {3.0 - gamma, -0.5};
        if (gamma == 1.0) return {2.0, -1.5};
        return {2.0, -0.5};
    }
    if (gamma > 1.5) return {1.5, 0.0};
    if (gamma == 1.5) return {1.5, 1.0};
    if (gamma > 1.0) return {3.0 - gamma, 0.0};
    if (gamma == 1.0) return {2.0, -1.0};
    return {2.0, 0.0};
}

AsymptoticOrder emst_lower_multicast(double gamma, double beta, double phi) {
    if (phi > 1.5) {
        // Destination counts are so light that only the anchor geometry
        // matters; no gamma dependence.
        if (beta > 2.0) return {1.0, 0.0};
        if (beta == 2.0) return {1.0, 1.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (phi == 1.5) {
        const bool heavy = gamma <= 1.0;
        if (beta > 2.0) return heavy ? AsymptoticOrder{1.0, 1.0} : AsymptoticOrder{1.0, 0.0};
        if (beta == 2.0) return heavy ? AsymptoticOrder{1.0, 2.0} : AsymptoticOrder{1.0, 1.0};
        if (beta > 1.0)
            return heavy ? AsymptoticOrder{2.0 - beta / 2.0, 1.0}
                         : AsymptoticOrder{2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return heavy ? AsymptoticOrder{1.5, 0.5} : AsymptoticOrder{1.5, -0.5};
        return heavy ? AsymptoticOrder{1.5, 1.0} : AsymptoticOrder{1.5, 0.0};
    }
    if (phi > 1.0) {
        const double gc = 2.5 - phi;
        if (beta > 2.0) {
            if (gamma > gc) return {1.0, 0.0};
            if (gamma == gc) return {1.0, 1.0};
            if (gamma > 1.0) return {3.5 - gamma - phi, 0.0};
            if (gamma == 1.0) return {2.5 - phi, -1.0};
            return {2.5 - phi, 0.0};
        }
        if (beta == 2.0) {
            if (gamma > gc) return {1.0, 1.0};
            if (gamma == gc) return {1.0, 2.0};
            if (gamma > 1.0) return {3.5 - gamma - phi, 1.0};
            if (gamma == 1.0) return {2.5 - phi, 0.0};
            return {2.5 - phi, 1.0};
        }
        if (beta > 1.0) {
            if (gamma > gc) return {2.0 - beta / 2.0, 0.0};
            if (gamma == gc) return {2.0 - beta / 2.0, 1.0};
            if (gamma > 1.0) return {4.5 - gamma - phi - beta / 2.0, 0.0};
            if (gamma == 1.0) return {3.5 - phi - beta / 2.0, -1.0};
            return {3.5 - phi - beta / 2.0, 0.0};
        }
        if (beta == 1.0) {
            if (gamma > gc) return {1.5, -0.5};
            if (gamma == gc) return {1.5, 0.5};
            if (gamma > 1.0) return {4.0 - gamma - phi, -0.5};
            if (gamma == 1.0) return {3.0 - phi, -1.5};
            return {3.0 - phi, -0.5};
        }
        if (gamma > gc) return {1.5, 0.0};
        if (gamma == gc) return {1.5, 1.0};
        if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
        if (gamma == 1.0) return {3.0 - phi, -1.0};
        return {3.0 - phi, 0.0};
    }
    if (phi == 1.0) {
        if (beta > 2.0) {
            if (gamma >= 1.5) return {1.0, 0.0};
            if (gamma > 1.0) return {2.5 - gamma, -1.0};
            if (gamma == 1.0) return {1.5, -2.0};
            return {1.5, -1.0};
        }
        if (beta == 2.0) {
            if (gamma >= 1.5) return {1.0, 1.0};
            if (gamma > 1.0) return {2.5 - gamma, 0.0};
            if (gamma == 1.0) return {1.5, -1.0};
            return {1.5, 0.0};
        }
        if (beta > 1.0) {
            if (gamma >= 1.5) return {2.0 - beta / 2.0, 0.0};
            if (gamma > 1.0) return {3.5 - gamma - beta / 2.0, -1.0};
            if (gamma == 1.0) return {2.5 - beta / 2.0, -2.0};
            return {2.5 - beta / 2.0, -1.0};
        }
        if (beta == 1.0) {
            if (gamma >= 1.5) return {1.5, -0.5};
            if (gamma > 1.0) return {3.0 - gamma, -1.5};
            if (gamma == 1.0) return {2.0, -2.5};
            return {2.0, -1.5};
        }
        if (gamma >= 1.5) return {1.5, 0.0};
        if (gamma > 1.0) return {3.0 - gamma, -1.0};
        if (gamma == 1.0) return {2.0, -2.0};
        return {2.0, -1.0};
    }
    // phi in [0, 1): destination counts are a constant fraction of the
    // friend sets, so the broadcast bounds apply unchanged.
    return emst_lower_broadcast(gamma, beta);
}

}  // namespace

AsymptoticOrder predicted_emst_sum_lower(double gamma, double beta, Pattern pattern,
                                         double phi) {
    check_exponent(gamma, "gamma");
    check_exponent(beta, "beta");
    if (pattern == Pattern::broadcast) return emst_lower_broadcast(gamma, beta);
    check_exponent(phi, "phi");
    return emst_lower_multicast(gamma, beta, phi);
}

AsymptoticOrder predicted_G(double beta, double gamma, double phi) {
    check_exponent(beta, "beta");
    check_exponent(gamma, "gamma");
    check_exponent(phi, "phi");
    if (phi > 2.0) {
        if (beta > 2.0) return {1.0, 0.0};
        if (beta == 2.0) return {1.0, 1.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (phi == 2.0) {
        if (beta > 2.0) {
            if (gamma > 1.0) return {1.0, 0.0};
            return {1.0, 1.0};
        }
        if (beta == 2.0) return {1.0, 1.0};
        if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
        // Published with a positive half log power here, unlike the
        // neighboring rows; encoded as printed.
        if (beta == 1.0) return {1.5, 0.5};
        return {1.5, 0.0};
    }
    if (phi > 1.5) {
        const double gc = 3.0 - phi;
        if (beta > 2.0) {
            if (gamma > gc) return {1.0, 0.0};
            if (gamma == gc) return {1.0, 1.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (beta == 2.0) {
            if (gamma >= gc) return {1.0, 1.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (beta > 1.0) {
            if (gamma >= gc) return {2.0 - beta / 2.0, 0.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            // Published cell repeats the gamma-free exponent; encoded as
            // printed.
            if (gamma == 1.0) return {2.0 - beta / 2.0, 0.0};
            return {3.0 - phi, 0.0};
        }
        if (beta == 1.0) return {1.5, -0.5};
        return {1.5, 0.0};
    }
    if (phi == 1.5) {
        if (beta > 2.0) {
            if (gamma > 1.5) return {1.0, 0.0};
            if (gamma == 1.5) return {1.0, 1.0};
            if (gamma > 1.0) return {2.5 - gamma, 0.0};
            if (gamma == 1.0) return {1.5, -1.0};
            return {1.5, 0.0};
        }
        if (beta == 2.0) {
            if (gamma >= 1.5) return {1.0, 1.0};
            if (gamma > 1.0) return {2.5 - gamma, 0.0};
            if (gamma == 1.0) return {1.5, -1.0};
            return {1.5, 0.0};
        }
        if (beta > 1.0) {
            if (gamma >= 1.5) return {2.0 - beta / 2.0, 0.0};
            if (gamma > 1.0) return {2.5 - gamma, 0.0};
            if (gamma == 1.0) return {1.5, -1.0};
            return {1.5, 0.0};
        }
        if (beta == 1.0) {
            if (gamma > 1.0) return {1.5, -0.5};
            return {1.5, 0.5};
        }
        if (gamma > 1.0) return {1.5, 0.0};
        return {1.5, 1.0};
    }
    if (phi > 1.0) {
        const double gc = 3.0 - phi;   // boundary for beta >= 1+
        const double gb = 2.5 - phi;   // boundary for the beta <= 1 columns
        if (beta > 2.0) {
            if (gamma > gc) return {1.0, 0.0};
            if (gamma == gc) return {1.0, 1.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (beta == 2.0) {
            if (gamma >= gc) return {1.0, 1.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (beta > 1.0) {
            if (gamma >= gc) return {2.0 - beta / 2.0, 0.0};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (beta == 1.0) {
            if (gamma > gb) return {1.5, -0.5};
            if (gamma == gb) return {1.5, 0.5};
            if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
            if (gamma == 1.0) return {3.0 - phi, -1.0};
            return {3.0 - phi, 0.0};
        }
        if (gamma > gb) return {1.5, 0.0};
        if (gamma == gb) return {1.5, 1.0};
        if (gamma > 1.0) return {4.0 - gamma - phi, 0.0};
        if (gamma == 1.0) return {3.0 - phi, -1.0};
        return {3.0 - phi, 0.0};
    }
    if (phi == 1.0) {
        if (gamma >= 2.0) {
            if (beta > 2.0) return {1.0, 0.0};
            if (beta == 2.0) return {1.0, 1.0};
            if (beta > 1.0) return {2.0 - beta / 2.0, 0.0};
            if (beta == 1.0) return {1.5, -0.5};
            return {1.5, 0.0};
        }
        if (gamma > 1.0) return {3.0 - gamma, -1.0};
        if (gamma == 1.0) return {2.0, -2.0};
        return {2.0, -1.0};
    }
    // 0 <= phi < 1
    if (beta > 2.0) {
        if (gamma > 2.0) return {1.0, 0.0};
        if (gamma == 2.0) return {1.0, 1.0};
        if (gamma > 1.0) return {3.0 - gamma, 0.0};
        if (gamma == 1.0) return {2.0, -1.0};
        return {2.0, 0.0};
    }
    if (beta == 2.0) {
        if (gamma >= 2.0) return {1.0, 1.0};
        if (gamma > 1.0) return {3.0 - gamma, 0.0};
        if (gamma == 1.0) return {2.0, -1.0};
        return {2.0, 0.0};
    }
    if (beta > 1.0) {
        // Published without the n^ base on this cell; the exponent is the
        // same gamma-free one as the rows above.
        if (gamma >= 2.0) return {2.0 - beta / 2.0, 0.0};
        if (gamma > 1.0) return {3.0 - gamma, 0.0};
        if (gamma == 1.0) return {2.0, -1.0};
        return {2.0, 0.0};
    }
    if (beta == 1.0) {
        if (gamma > 1.5) return {1.5, -0.5};
        if (gamma == 1.5) return {1.5, 0.5};
        if (gamma > 1.0) return {3.0 - gamma, 0.0};
        if (gamma == 1.0) return {2.0, -1.0};
        return {2.0, 0.0};
    }
    if (gamma > 1.5) return {1.5, 0.0};
    if (gamma == 1.5) return {1.5, 1.0};
    if (gamma > 1.0) return {3.0 - gamma, 0.0};
    if (gamma == 1.0) return {2.0, -1.0};
    return {2.0, 0.0};
}

}  // namespace osn
