#include "osn/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace osn {

LinFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("ols_fit: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("ols_fit: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0) throw std::invalid_argument("ols_fit: degenerate x values");
    LinFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        rss += r * r;
    }
    f.r2 = (syy > 0) ? 1.0 - rss / syy : 1.0;
    if (n > 2) f.slope_stderr = std::sqrt(rss / double(n - 2) / sxx);
    return f;
}

PlaneFit ols_fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                  const std::vector<double>& y) {
    if (x1.size() != x2.size() || x1.size() != y.size())
        throw std::invalid_argument("ols_fit2: size mismatch");
    const std::size_t n = x1.size();
    if (n < 4) throw std::invalid_argument("ols_fit2: need at least 4 points");
    // Normal equations for [a b c] with design columns (x1, x2, 1).
    double s11 = 0, s12 = 0, s1 = 0, s22 = 0, s2 = 0, s1y = 0, s2y = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s11 += x1[i] * x1[i];
        s12 += x1[i] * x2[i];
        s1 += x1[i];
        s22 += x2[i] * x2[i];
        s2 += x2[i];
        s1y += x1[i] * y[i];
        s2y += x2[i] * y[i];
        sy += y[i];
    }
    double m[3][4] = {
        {s11, s12, s1, s1y},
        {s12, s22, s2, s2y},
        {s1, s2, double(n), sy},
    };
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12)
            throw std::invalid_argument("ols_fit2: singular design matrix");
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    PlaneFit p;
    p.points = n;
    p.a = m[0][3] / m[0][0];
    p.b = m[1][3] / m[1][1];
    p.c = m[2][3] / m[2][2];
    double rss = 0, syy = 0;
    const double my = sy / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (p.a * x1[i] + p.b * x2[i] + p.c);
        rss += r * r;
        syy += (y[i] - my) * (y[i] - my);
    }
    p.r2 = (syy > 0) ? 1.0 - rss / syy : 1.0;
    if (n > 3) {
        // Var(a) = sigma^2 * [ (X^T X)^{-1} ]_{00}; recompute the inverse
        // entry from the 3x3 via cofactors.
        const double det = s11 * (s22 * double(n) - s2 * s2) -
                           s12 * (s12 * double(n) - s2 * s1) +
                           s1 * (s12 * s2 - s22 * s1);
        if (std::fabs(det) > 1e-12) {
            const double inv00 = (s22 * double(n) - s2 * s2) / det;
            p.a_stderr = std::sqrt(std::max(0.0, rss / double(n - 3) * inv00));
        }
    }
    return p;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty");
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample_stddev: need >= 2");
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / double(v.size() - 1));
}

double t_quantile_975(int df) {
    static const std::array<double, 30> table = {
        12.706, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469, 2.3646, 2.3060,
        2.2622, 2.2281, 2.2010, 2.1788, 2.1604, 2.1448, 2.1314, 2.1199,
        2.1098, 2.1009, 2.0930, 2.0860, 2.0796, 2.0739, 2.0687, 2.0639,
        2.0595, 2.0555, 2.0518, 2.0484, 2.0452, 2.0423};
    if (df < 1) throw std::invalid_argument("t_quantile_975: df < 1");
    if (df <= 30) return table[std::size_t(df - 1)];
    return 1.96;
}

double chi_square_critical(int df, double z) {
    if (df < 1) throw std::invalid_argument("chi_square_critical: df < 1");
    const double d = double(df);
    const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

double chi_square_stat(const std::vector<double>& observed,
                       const std::vector<double>& expected) {
    if (observed.size() != expected.size())
        throw std::invalid_argument("chi_square_stat: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0)
            throw std::invalid_argument("chi_square_stat: nonpositive expected count");
        const double d = observed[i] - expected[i];
        s += d * d / expected[i];
    }
    return s;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(double(i + 1) / n - f));
        d = std::max(d, std::fabs(f - double(i) / n));
    }
    return d;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) throw std::invalid_argument("adaptive_simpson: empty interval");
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace osn
