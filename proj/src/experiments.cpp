#include "osn/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "osn/emst.hpp"
#include "osn/serialize.hpp"

namespace osn {

const char* to_string(Measurement m) {
    switch (m) {
        case Measurement::total_load: return "total-load";
        case Measurement::anchor_emst_sum: return "anchor-emst-sum";
        case Measurement::node_emst_sum: return "node-emst-sum";
        case Measurement::degree_sum: return "degree-sum";
        case Measurement::destination_sum: return "destination-sum";
        case Measurement::mean_anchor_distance: return "mean-anchor-distance";
    }
    return "?";
}

Measurement measurement_from_string(const std::string& s) {
    if (s == "total-load") return Measurement::total_load;
    if (s == "anchor-emst-sum") return Measurement::anchor_emst_sum;
    if (s == "node-emst-sum") return Measurement::node_emst_sum;
    if (s == "degree-sum") return Measurement::degree_sum;
    if (s == "destination-sum") return Measurement::destination_sum;
    if (s == "mean-anchor-distance") return Measurement::mean_anchor_distance;
    throw std::invalid_argument("unknown measurement: " + s);
}

const char* to_string(Pattern p) {
    return p == Pattern::broadcast ? "broadcast" : "multicast";
}

Pattern pattern_from_string(const std::string& s) {
    if (s == "broadcast") return Pattern::broadcast;
    if (s == "multicast") return Pattern::multicast;
    throw std::invalid_argument("unknown pattern: " + s);
}

double measurement_value(const TrialRecord& r, Measurement m) {
    switch (m) {
        case Measurement::total_load: return r.total_load;
        case Measurement::anchor_emst_sum: return r.anchor_emst_sum;
        case Measurement::node_emst_sum: return r.node_emst_sum;
        case Measurement::degree_sum: return r.degree_sum;
        case Measurement::destination_sum: return r.destination_sum;
        case Measurement::mean_anchor_distance: return r.mean_anchor_distance;
    }
    return 0.0;
}

TrialRecord run_trial(const ModelConfig& cfg, Pattern pattern,
                      std::optional<Measurement> only) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = cfg.n;

    // What this trial has to compute.
    const bool need_geometry =
        !only || *only == Measurement::total_load ||
        *only == Measurement::anchor_emst_sum || *only == Measurement::node_emst_sum ||
        *only == Measurement::mean_anchor_distance;
    const bool need_trees =
        !only || *only == Measurement::total_load ||
        *only == Measurement::anchor_emst_sum || *only == Measurement::node_emst_sum;
    const bool need_node_tree = !only || *only == Measurement::node_emst_sum;
    const bool need_multicast_draw =
        pattern == Pattern::multicast &&
        (need_geometry || !only || *only == Measurement::destination_sum);

    TorusDeployment dep;
    if (need_geometry) dep = sample_deployment(n, cfg.seed);
    ZipfTable degree_table(n - 1, cfg.gamma);
    ZipfTable dest_table = (pattern == Pattern::multicast && need_multicast_draw)
                               ? ZipfTable(n - 1, cfg.phi)
                               : ZipfTable(1, 0.0);
    // Only consulted when geometry is needed; the dummy side keeps the
    // constructor happy on measurement-only passes.
    const AnchorSampler draw_anchor(cfg.beta, need_geometry ? dep.L : 1.0);

    // Per-node accumulator slots; reduced serially afterwards so results are
    // independent of the thread count.
    std::vector<double> acc_anchor_emst(need_trees ? n : 0, 0.0);
    std::vector<double> acc_hops(need_trees ? n : 0, 0.0);
    std::vector<double> acc_node_emst(need_node_tree ? n : 0, 0.0);
    std::vector<double> acc_anchor_dist(need_geometry ? n : 0, 0.0);
    std::vector<double> acc_degree(n, 0.0);
    std::vector<double> acc_dest(need_multicast_draw ? n : 0, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::int64_t ks = 0; ks < static_cast<std::int64_t>(n); ++ks) {
        const std::size_t k = static_cast<std::size_t>(ks);
        Rng g = substream(cfg.seed, Stream::formation, k);
        const std::size_t q = degree_table.sample(g);
        acc_degree[k] = static_cast<double>(q);

        // How many anchors feed the session, and from which stream they
        // come. Broadcast walks the formation stream through all q draws.
        // Multicast needs only its d_k chosen anchors: a uniform d-subset
        // of i.i.d. draws has the same law as d fresh draws, so the trial
        // draws them directly from the multicast substream instead of
        // materializing all q and discarding most. Realizations therefore
        // match gen_multicast_sessions only in distribution; counts (q, d)
        // still match it exactly.
        std::size_t session_draws = q;
        Rng* stream = &g;
        std::optional<Rng> gm;
        if (need_multicast_draw) {
            gm.emplace(substream(cfg.seed, Stream::multicast, k));
            const std::size_t d = dest_table.sample_le(q, *gm);
            acc_dest[k] = static_cast<double>(d);
            session_draws = d;
            stream = &*gm;
        }
        if (!need_geometry) continue;

        thread_local std::vector<Point> anchors;
        thread_local std::vector<std::uint32_t> anchor_friend;
        anchors.clear();
        anchor_friend.clear();
        for (std::size_t i = 0; i < session_draws; ++i) {
            std::uint32_t f;
            Point a;
            double r;
            do {
                a = draw_anchor.sample(dep.positions[k], *stream, r);
                f = nearest_node(dep.index, a, *stream);
            } while (f == k);
            acc_anchor_dist[k] += r;
            anchors.push_back(a);
            anchor_friend.push_back(f);
        }
        if (!need_trees) continue;

        thread_local std::vector<Point> pts;
        pts.clear();
        pts.push_back(dep.positions[k]);
        pts.insert(pts.end(), anchors.begin(), anchors.end());
        acc_anchor_emst[k] = emst_total(pts, dep.L);
        for (std::size_t i = 0; i < anchors.size(); ++i)
            acc_hops[k] += torus_distance(anchors[i], dep.positions[anchor_friend[i]],
                                          dep.L);
        if (need_node_tree) {
            thread_local std::vector<std::uint32_t> dests;
            dests = anchor_friend;
            std::sort(dests.begin(), dests.end());
            dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
            pts.clear();
            pts.push_back(dep.positions[k]);
            for (std::uint32_t f : dests) pts.push_back(dep.positions[f]);
            acc_node_emst[k] = emst_total(pts, dep.L);
        }
    }

    TrialRecord rec;
    rec.n = n;
    rec.seed = cfg.seed;
    for (double v : acc_degree) rec.degree_sum += v;
    for (double v : acc_dest) rec.destination_sum += v;
    for (double v : acc_anchor_emst) rec.anchor_emst_sum += v;
    for (double v : acc_hops) rec.final_hop_sum += v;
    for (double v : acc_node_emst) rec.node_emst_sum += v;
    double anchor_dist_total = 0.0;
    for (double v : acc_anchor_dist) anchor_dist_total += v;
    // Mean over the anchors the trial actually drew: all q per node for
    // broadcast, the d chosen per node for multicast.
    const double drawn = (pattern == Pattern::multicast) ? rec.destination_sum : rec.degree_sum;
    if (need_geometry && drawn > 0) rec.mean_anchor_distance = anchor_dist_total / drawn;
    rec.total_load = rec.anchor_emst_sum + rec.final_hop_sum;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

void validate(const SweepPlan& plan) {
    if (plan.n_ladder.size() < 4)
        throw std::invalid_argument("SweepPlan: ladder needs at least 4 points");
    for (std::size_t i = 1; i < plan.n_ladder.size(); ++i)
        if (plan.n_ladder[i] <= plan.n_ladder[i - 1])
            throw std::invalid_argument("SweepPlan: ladder must be strictly increasing");
    if (plan.n_ladder.front() < 2)
        throw std::invalid_argument("SweepPlan: n must be >= 2");
    if (plan.replicates < 3)
        throw std::invalid_argument("SweepPlan: need at least 3 replicates");
    if (plan.gamma < 0 || plan.beta < 0 || plan.phi < 0)
        throw std::invalid_argument("SweepPlan: exponents must be >= 0");
    if (plan.tolerance <= 0)
        throw std::invalid_argument("SweepPlan: tolerance must be positive");
}

ScalingFitReport fit_scaling_exponent(const std::vector<std::pair<double, double>>& points,
                                      bool fit_log_term) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_scaling_exponent: need at least 4 points");
    std::vector<double> lx, ly, llx;
    lx.reserve(points.size());
    ly.reserve(points.size());
    for (const auto& [n, y] : points) {
        if (!(y > 0.0))
            throw std::invalid_argument("fit_scaling_exponent: values must be positive");
        if (!(n > 1.0))
            throw std::invalid_argument("fit_scaling_exponent: n must exceed 1");
        lx.push_back(std::log(n));
        ly.push_back(std::log(y));
        llx.push_back(std::log(std::log(n)));
    }
    ScalingFitReport rep;
    rep.with_log_term = fit_log_term;
    if (fit_log_term) {
        const PlaneFit f = ols_fit2(lx, llx, ly);
        rep.a_hat = f.a;
        rep.b_hat = f.b;
        rep.c_hat = f.c;
        rep.r2 = f.r2;
        rep.a_ci_half = t_quantile_975(static_cast<int>(points.size()) - 3) * f.a_stderr;
    } else {
        const LinFit f = ols_fit(lx, ly);
        rep.a_hat = f.slope;
        rep.c_hat = f.intercept;
        rep.r2 = f.r2;
        rep.a_ci_half = t_quantile_975(static_cast<int>(points.size()) - 2) * f.slope_stderr;
    }
    return rep;
}

AsymptoticOrder predicted_order(const SweepPlan& plan) {
    switch (plan.measurement) {
        case Measurement::total_load:
        case Measurement::node_emst_sum:
            return plan.pattern == Pattern::broadcast
                       ? predicted_H(plan.gamma, plan.beta)
                       : predicted_G(plan.beta, plan.gamma, plan.phi);
        case Measurement::anchor_emst_sum:
            return predicted_emst_sum_lower(plan.gamma, plan.beta, plan.pattern, plan.phi);
        case Measurement::degree_sum:
            return predicted_Q(plan.gamma);
        case Measurement::destination_sum:
            return predicted_W(plan.gamma, plan.phi);
        case Measurement::mean_anchor_distance:
            return predicted_mean_anchor_distance(plan.beta);
    }
    throw std::logic_error("predicted_order: unhandled measurement");
}

SweepResult run_sweep(const SweepPlan& plan, const std::string& csv_path,
                      const std::string& json_path) {
    validate(plan);
    SweepResult res;
    res.plan = plan;

    for (std::size_t n : plan.n_ladder) {
        for (std::size_t r = 0; r < plan.replicates; ++r) {
            ModelConfig cfg;
            cfg.n = n;
            cfg.gamma = plan.gamma;
            cfg.beta = plan.beta;
            cfg.phi = plan.phi;
            cfg.seed = mix64(mix64(plan.base_seed, static_cast<std::uint64_t>(n)),
                             static_cast<std::uint64_t>(r));
            try {
                res.trials.push_back(run_trial(cfg, plan.pattern, plan.measurement));
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep trial failed at n=" + std::to_string(n) +
                                         ", seed=" + std::to_string(cfg.seed) + ": " +
                                         e.what());
            }
        }
    }

    std::vector<std::pair<double, double>> fit_points;
    std::size_t t = 0;
    for (std::size_t n : plan.n_ladder) {
        std::vector<double> vals;
        vals.reserve(plan.replicates);
        for (std::size_t r = 0; r < plan.replicates; ++r, ++t)
            vals.push_back(measurement_value(res.trials[t], plan.measurement));
        ScalingPoint p;
        p.n = n;
        p.replicates = vals.size();
        p.mean = mean(vals);
        p.stderr_mean = (vals.size() >= 2)
                            ? sample_stddev(vals) / std::sqrt(double(vals.size()))
                            : 0.0;
        res.fit.points.push_back(p);
        fit_points.emplace_back(static_cast<double>(n), p.mean);
    }

    const ScalingFitReport base = fit_scaling_exponent(fit_points, plan.fit_log_term);
    res.fit.a_hat = base.a_hat;
    res.fit.a_ci_half = base.a_ci_half;
    res.fit.c_hat = base.c_hat;
    res.fit.with_log_term = base.with_log_term;
    res.fit.b_hat = base.b_hat;
    res.fit.r2 = base.r2;
    res.fit.has_prediction = true;
    res.fit.predicted = predicted_order(plan);
    res.fit.tolerance = plan.tolerance;
    res.fit.verdict = std::fabs(res.fit.a_hat - res.fit.predicted.poly) <= plan.tolerance;

    if (!csv_path.empty()) write_sweep_csv(res, csv_path);
    if (!json_path.empty()) write_sweep_json(res, json_path);
    return res;
}

}  // namespace osn
