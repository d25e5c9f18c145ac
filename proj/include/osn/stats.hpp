#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace osn {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept.
LinFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least squares y = a*x1 + b*x2 + c. Used for the two-term log fit
// (x1 = log n, x2 = log log n).
struct PlaneFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double a_stderr = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};
PlaneFit ols_fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                  const std::vector<double>& y);

double mean(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

// Two-sided 95% Student-t quantile (t_{0.975,df}); normal limit above df 30.
double t_quantile_975(int df);

// Upper critical value of the chi-square distribution via the
// Wilson-Hilferty cube approximation. `z` is the standard-normal quantile
// for the target level, e.g. 2.326348 for alpha = 0.01.
double chi_square_critical(int df, double z);
constexpr double kZ99 = 2.326348;

// Pearson chi-square statistic for observed counts vs expected counts.
double chi_square_stat(const std::vector<double>& observed,
                       const std::vector<double>& expected);

// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
// Sorts a copy of the samples.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

}  // namespace osn
