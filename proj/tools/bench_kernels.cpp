#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "osn/emst.hpp"
#include "osn/experiments.hpp"
#include "osn/model.hpp"
#include "osn/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_emst(std::uint64_t seed) {
    std::printf("%-10s %12s %12s %10s %s\n", "points", "prim s", "boruvka s", "speedup",
                "totals");
    for (const std::size_t k : {64u, 256u, 1024u, 4096u, 16384u}) {
        const double L = std::sqrt(static_cast<double>(k));
        osn::Rng g = osn::substream(seed, osn::Stream::deploy, k);
        std::vector<osn::Point> pts(k);
        for (auto& p : pts) {
            p.x = osn::uniform01(g) * L;
            p.y = osn::uniform01(g) * L;
        }
        double tp = 0.0, tb = 0.0;
        osn::EmstResult rp, rb;
        tp = time_of([&] { rp = osn::emst_prim(pts, L); });
        tb = time_of([&] { rb = osn::emst_boruvka(pts, L); });
        std::printf("%-10zu %12.4f %12.4f %9.1fx %s (%.6f vs %.6f)\n", k, tp, tb, tp / tb,
                    std::fabs(rp.total - rb.total) < 1e-6 * rp.total ? "equal" : "DIFFER",
                    rp.total, rb.total);
    }
}

void bench_trial(std::size_t n, double gamma, double beta, std::uint64_t seed) {
    osn::ModelConfig cfg{n, gamma, beta, 0.0, seed};
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    osn::TrialRecord serial;
    const double ts = time_of([&] { serial = osn::run_trial(cfg, osn::Pattern::broadcast); });

#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    osn::TrialRecord parallel;
    const double tpar =
        time_of([&] { parallel = osn::run_trial(cfg, osn::Pattern::broadcast); });

    const bool equal = serial.total_load == parallel.total_load &&
                       serial.degree_sum == parallel.degree_sum &&
                       serial.node_emst_sum == parallel.node_emst_sum;
    std::printf("trial n=%zu gamma=%.2f beta=%.2f: 1 thread %.3f s, %d threads %.3f s "
                "(%.1fx), results %s\n",
                n, gamma, beta, ts, max_threads, tpar, ts / tpar,
                equal ? "identical" : "DIFFER");
    std::printf("  total load %.6f vs %.6f\n", serial.total_load, parallel.total_load);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compare the parallel kernels against their serial references"};
    std::size_t n = 4096;
    double gamma = 3.0;
    double beta = 1.5;
    std::uint64_t seed = 1;
    app.add_option("--n", n, "node count for the trial benchmark");
    app.add_option("--gamma", gamma, "friendship-degree exponent");
    app.add_option("--beta", beta, "friendship-formation exponent");
    app.add_option("--seed", seed, "RNG seed");
    CLI11_PARSE(app, argc, argv);

    bench_emst(seed);
    bench_trial(n, gamma, beta, seed);
    return 0;
}
