#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "osn/model.hpp"
#include "osn/sessions.hpp"

namespace osn {

// Theta(n^poly * (log n)^logpow); compared lexicographically.
struct AsymptoticOrder {
    double poly = 0.0;
    double logpow = 0.0;
};

inline bool operator==(const AsymptoticOrder& a, const AsymptoticOrder& b) {
    return a.poly == b.poly && a.logpow == b.logpow;
}
inline bool operator!=(const AsymptoticOrder& a, const AsymptoticOrder& b) { return !(a == b); }
inline bool operator<(const AsymptoticOrder& a, const AsymptoticOrder& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.logpow < b.logpow;
}
inline AsymptoticOrder max_order(const AsymptoticOrder& a, const AsymptoticOrder& b) {
    return (a < b) ? b : a;
}
bool same_order(const AsymptoticOrder& a, const AsymptoticOrder& b, double tol = 1e-9);
std::string to_string(const AsymptoticOrder& o);

enum class Pattern { broadcast, multicast };

struct SessionLoad {
    std::size_t session_id = 0;
    double emst_length = 0.0;
    double load = 0.0;  // rate * emst_length
};

// Conjectured worst-case EMST/Steiner-tree length ratio in the plane; any
// Steiner lower bound reported from an EMST divides by this.
inline constexpr double kSteinerRatioBound = 1.1547005383792515;  // 2/sqrt(3)

// EMST over the source position and the destination positions.
SessionLoad session_load(const DisseminationSession& s, const TorusDeployment& dep,
                         std::size_t session_id = 0);

// EMST over the source position and the session's anchor points.
double session_anchor_emst(const DisseminationSession& s, const TorusDeployment& dep);

// Sum over the session's anchors of the distance from the anchor to its
// nearest node (the final hop from the anchor tree to the actual member).
double session_final_hop_sum(const DisseminationSession& s, const TorusDeployment& dep);

// Anchor-tree cost plus final hops, scaled by the session rate. This is the
// dissemination-tree cost the sweep measurement "total-load" accumulates.
double session_tree_load(const DisseminationSession& s, const TorusDeployment& dep);

struct TotalComplexity {
    double total = 0.0;
    // Load summed within deciles of the per-session destination count
    // (decile 0 = fewest destinations).
    std::array<double, 10> by_degree_decile{};
};

TotalComplexity total_transport_complexity(const std::vector<DisseminationSession>& sessions,
                                           const TorusDeployment& dep);

// Closed-form asymptotic predictors. Exponents out of range throw
// std::invalid_argument; every branch below is total over gamma, beta,
// phi >= 0.

// Mean source-to-anchor distance as a function of the formation exponent.
AsymptoticOrder predicted_mean_anchor_distance(double beta);

// Per-session anchor-EMST scale factor in n; the caller multiplies by the
// square root of the session's anchor count.
AsymptoticOrder predicted_session_emst_factor(double beta);

// Sum of friend counts over all nodes.
AsymptoticOrder predicted_Q(double gamma);

// Sum of multicast destination counts over all nodes.
AsymptoticOrder predicted_W(double gamma, double phi);

// Broadcast transport complexity.
AsymptoticOrder predicted_H(double gamma, double beta);

// Multicast transport complexity.
AsymptoticOrder predicted_G(double beta, double gamma, double phi);

// Lower bound on the summed anchor-EMST length for either pattern
// (phi ignored for broadcast).
AsymptoticOrder predicted_emst_sum_lower(double gamma, double beta, Pattern pattern,
                                         double phi = 0.0);

}  // namespace osn
