#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "osn/rng.hpp"
#include "osn/stats.hpp"

using namespace osn;

TEST_CASE("ols on an exact line") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {3, 5, 7, 9, 11};
    const LinFit fit = ols_fit(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.slope_stderr == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(fit.points == 5);
}

TEST_CASE("ols residual case by hand") {
    const std::vector<double> x = {0, 1, 2};
    const std::vector<double> y = {0, 0, 3};
    const LinFit fit = ols_fit(x, y);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fit.slope_stderr == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
}

TEST_CASE("ols input validation") {
    CHECK_THROWS_AS(ols_fit({1, 2}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ols_fit({1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(ols_fit({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("two-regressor ols recovers an exact plane") {
    std::vector<double> x1, x2, y;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            x1.push_back(i);
            x2.push_back(j * j);
            y.push_back(2.0 * i - 3.0 * j * j + 4.0);
        }
    const PlaneFit fit = ols_fit2(x1, x2, y);
    CHECK(fit.a == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.b == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(fit.c == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(ols_fit2({1, 2, 3}, {1, 2, 3}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ols_fit2({1, 1, 1, 1}, {2, 2, 2, 2}, {1, 2, 3, 4}),
                    std::invalid_argument);
}

TEST_CASE("mean and sample stddev") {
    const std::vector<double> v = {1, 2, 3, 4};
    CHECK(mean(v) == 2.5);
    CHECK(sample_stddev(v) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mean({}), std::invalid_argument);
    CHECK_THROWS_AS(sample_stddev({1.0}), std::invalid_argument);
}

TEST_CASE("student t quantiles") {
    CHECK(t_quantile_975(1) == doctest::Approx(12.706).epsilon(1e-3));
    CHECK(t_quantile_975(5) == doctest::Approx(2.571).epsilon(1e-3));
    CHECK(t_quantile_975(10) == doctest::Approx(2.228).epsilon(1e-3));
    CHECK(t_quantile_975(30) == doctest::Approx(2.042).epsilon(1e-3));
    CHECK(t_quantile_975(1000) == doctest::Approx(1.96).epsilon(1e-3));
    CHECK_THROWS_AS(t_quantile_975(0), std::invalid_argument);
    // quantiles decrease toward the normal limit
    for (int df = 1; df < 40; ++df)
        CHECK(t_quantile_975(df) >= t_quantile_975(df + 1) - 1e-12);
}

TEST_CASE("chi-square critical values at the 1% level") {
    CHECK(chi_square_critical(10, kZ99) == doctest::Approx(23.209).epsilon(5e-3));
    CHECK(chi_square_critical(50, kZ99) == doctest::Approx(76.154).epsilon(5e-3));
    CHECK(chi_square_critical(200, kZ99) == doctest::Approx(249.45).epsilon(5e-3));
    CHECK_THROWS_AS(chi_square_critical(0, kZ99), std::invalid_argument);
}

TEST_CASE("chi-square statistic") {
    CHECK(chi_square_stat({10, 20, 30}, {15, 15, 30}) ==
          doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(chi_square_stat({5, 5}, {5, 5}) == 0.0);
    CHECK_THROWS_AS(chi_square_stat({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_stat({1, 2}, {1, 0}), std::invalid_argument);
}

TEST_CASE("kolmogorov-smirnov statistic") {
    const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_statistic({0.5}, uniform_cdf) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ks_statistic({0.25, 0.75}, uniform_cdf) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(ks_statistic({}, uniform_cdf), std::invalid_argument);

    Rng g = substream(11, Stream::trial);
    std::vector<double> draws;
    for (int i = 0; i < 20000; ++i) draws.push_back(uniform01(g));
    CHECK(ks_statistic(std::move(draws), uniform_cdf) < 0.02);
}

TEST_CASE("adaptive simpson quadrature") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-11));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));
    CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0, 1e-6),
                    std::invalid_argument);
}
