#include "osn/torus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace osn {

double wrap_coord(double x, double L) {
    // One period off in either direction covers every caller on the hot
    // path; fmod only runs for far-out inputs.
    if (x >= 0.0 && x < L) return x;
    if (x >= L && x < 2.0 * L) return x - L;
    if (x < 0.0 && x >= -L) {
        const double y = x + L;
        return (y >= L) ? 0.0 : y;  // x just below zero can round up to L
    }
    double y = std::fmod(x, L);
    if (y < 0.0) y += L;
    if (y >= L) y = 0.0;  // fmod can land exactly on L after the add
    return y;
}

double torus_delta(double a, double b, double L) {
    double d = std::fabs(a - b);
    if (d > L) d = std::fmod(d, L);  // never taken for coords in [0, L)
    if (d > L / 2.0) d = L - d;
    return d;
}

double torus_distance(const Point& a, const Point& b, double L) {
    const double dx = torus_delta(a.x, b.x, L);
    const double dy = torus_delta(a.y, b.y, L);
    // Coordinates are bounded by the torus side, so plain sqrt is safe from
    // the overflow hypot guards against, and much cheaper.
    return std::sqrt(dx * dx + dy * dy);
}

double ball_area(double r, double L) {
    if (L <= 0.0) throw std::invalid_argument("ball_area: side must be positive");
    if (r < 0.0) throw std::invalid_argument("ball_area: negative radius");
    const double half = L / 2.0;
    if (r <= half) return M_PI * r * r;
    const double full = L / std::sqrt(2.0);
    if (r >= full) return L * L;
    // One cap: circular segment of the radius-r disk cut by a chord at
    // distance L/2 from the center.
    const double cap = r * r * std::acos(half / r) - half * std::sqrt(r * r - half * half);
    return M_PI * r * r - 4.0 * cap;
}

double ball_area_derivative(double r, double L) {
    if (L <= 0.0) throw std::invalid_argument("ball_area_derivative: side must be positive");
    if (r < 0.0) throw std::invalid_argument("ball_area_derivative: negative radius");
    const double half = L / 2.0;
    if (r <= half) return 2.0 * M_PI * r;
    const double full = L / std::sqrt(2.0);
    if (r >= full) return 0.0;
    // The square-root terms of the cap area cancel on differentiation,
    // leaving d(cap)/dr = 2 r acos(L / (2r)) per cap.
    return 2.0 * M_PI * r - 8.0 * r * std::acos(half / r);
}

double ball_area_inverse(double u, double L) {
    if (L <= 0.0) throw std::invalid_argument("ball_area_inverse: side must be positive");
    const double A = L * L;
    if (u < 0.0 || u > A) throw std::invalid_argument("ball_area_inverse: target outside [0, L^2]");
    const double disk_max = M_PI * L * L / 4.0;  // area at r = L/2
    if (u <= disk_max) return std::sqrt(u / M_PI);
    double lo = L / 2.0;
    double hi = L / std::sqrt(2.0);
    if (u >= A) return hi;
    // ball_area is strictly increasing on [L/2, L/sqrt(2)]. Newton with a
    // bisection safeguard: the derivative vanishes at L/sqrt(2), so steps
    // that leave the bracket fall back to its midpoint.
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = ball_area(r, L) - u;
        if (f < 0.0) {
            lo = r;
        } else {
            hi = r;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
        const double d = ball_area_derivative(r, L);
        double next = (d > 0.0) ? r - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == r) break;
        r = next;
    }
    return r;
}

}  // namespace osn
