#pragma once

#include <cstddef>
#include <vector>

namespace osn {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Wrap a coordinate into [0, L).
double wrap_coord(double x, double L);

// Shortest per-axis displacement on the torus, in [-L/2, L/2].
double torus_delta(double a, double b, double L);

// Euclidean distance under wraparound.
double torus_distance(const Point& a, const Point& b, double L);

// Area of the metric ball of radius r on an L x L flat torus.
//
// For r <= L/2 the ball is an ordinary disk. For L/2 < r <= L/sqrt(2) the
// four circle caps sticking out of the fundamental square overlap the
// opposite sides, so the covered area is pi r^2 minus the four cap areas.
// Beyond L/sqrt(2) the ball is the whole torus, area L^2.
double ball_area(double r, double L);

// d(ball_area)/dr; zero for r >= L/sqrt(2).
double ball_area_derivative(double r, double L);

// Inverse of ball_area on [0, L^2]: smallest r with ball_area(r) = u.
// Closed form while the ball is a disk, bisection in the cap regime.
double ball_area_inverse(double u, double L);

}  // namespace osn
