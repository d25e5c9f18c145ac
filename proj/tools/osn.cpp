#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "osn/complexity.hpp"
#include "osn/dataset.hpp"
#include "osn/experiments.hpp"
#include "osn/model.hpp"
#include "osn/serialize.hpp"
#include "osn/sessions.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

struct SimulateArgs {
    std::size_t n = 1024;
    double gamma = 0.0;
    double beta = 0.0;
    double phi = 0.0;
    std::string pattern = "broadcast";
    std::uint64_t seed = 1;
    std::string out = "measurements.json";
    std::string dump_graph;
    bool phi_given = false;
};

int run_simulate(const SimulateArgs& a) {
    const osn::Pattern pattern = osn::pattern_from_string(a.pattern);
    if (pattern == osn::Pattern::multicast && !a.phi_given)
        throw CLI::ValidationError("--phi is required when --pattern multicast");
    osn::ModelConfig cfg{a.n, a.gamma, a.beta, a.phi, a.seed};
    osn::validate(cfg);

    const auto t0 = Clock::now();
    const osn::TrialRecord rec = osn::run_trial(cfg, pattern);
    osn::write_text_file(a.out, osn::simulation_report_json(cfg, pattern, rec));
    std::fprintf(stderr, "simulate: n=%zu wrote %s in %.2f s\n", a.n, a.out.c_str(),
                 seconds_since(t0));

    if (!a.dump_graph.empty()) {
        const osn::TorusDeployment dep = osn::sample_deployment(cfg.n, cfg.seed);
        const osn::SocialGraph graph = osn::form_social_graph(dep, cfg);
        osn::write_text_file(a.dump_graph, osn::social_graph_json(dep, graph));
        std::fprintf(stderr, "simulate: wrote %s\n", a.dump_graph.c_str());
    }
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct PredictArgs {
    double gamma = 0.0;
    double beta = 0.0;
    double phi = 0.0;
    std::string pattern = "broadcast";
    std::string quantity = "load";
    std::string out;
    bool phi_given = false;
    bool gamma_given = false;
    bool beta_given = false;
};

int run_predict(const PredictArgs& a) {
    const osn::Pattern pattern = osn::pattern_from_string(a.pattern);
    auto need_phi = [&]() {
        if (!a.phi_given)
            throw CLI::ValidationError("--phi is required for this prediction");
    };
    auto need_gamma = [&]() {
        if (!a.gamma_given) throw CLI::ValidationError("--gamma is required");
    };
    auto need_beta = [&]() {
        if (!a.beta_given) throw CLI::ValidationError("--beta is required");
    };

    osn::AsymptoticOrder order;
    std::string source;
    bool used_phi = false;
    if (a.quantity == "load") {
        if (pattern == osn::Pattern::broadcast) {
            need_gamma();
            need_beta();
            order = osn::predicted_H(a.gamma, a.beta);
            source = "broadcast-load";
        } else {
            need_gamma();
            need_beta();
            need_phi();
            order = osn::predicted_G(a.beta, a.gamma, a.phi);
            source = "multicast-load";
            used_phi = true;
        }
    } else if (a.quantity == "degree-sum") {
        need_gamma();
        order = osn::predicted_Q(a.gamma);
        source = "degree-sum";
    } else if (a.quantity == "destination-sum") {
        need_gamma();
        need_phi();
        order = osn::predicted_W(a.gamma, a.phi);
        source = "destination-sum";
        used_phi = true;
    } else if (a.quantity == "anchor-emst-lower") {
        need_gamma();
        need_beta();
        if (pattern == osn::Pattern::multicast) need_phi();
        order = osn::predicted_emst_sum_lower(a.gamma, a.beta, pattern, a.phi);
        source = "anchor-emst-sum-lower";
        used_phi = pattern == osn::Pattern::multicast;
    } else if (a.quantity == "mean-anchor-distance") {
        need_beta();
        order = osn::predicted_mean_anchor_distance(a.beta);
        source = "mean-anchor-distance";
    } else if (a.quantity == "session-emst-factor") {
        need_beta();
        order = osn::predicted_session_emst_factor(a.beta);
        source = "session-emst-factor";
    } else {
        throw CLI::ValidationError("unknown --quantity: " + a.quantity);
    }

    nlohmann::ordered_json j;
    j["quantity"] = a.quantity;
    j["pattern"] = a.pattern;
    if (a.gamma_given) j["gamma"] = a.gamma;
    if (a.beta_given) j["beta"] = a.beta;
    if (used_phi) j["phi"] = a.phi;
    j["poly"] = order.poly;
    j["logpow"] = order.logpow;
    j["order"] = osn::to_string(order);
    j["source"] = source;
    const std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!a.out.empty()) osn::write_text_file(a.out, text);
    return 0;
}

struct SweepArgs {
    std::string plan_path;
    std::string trials_csv = "sweep-trials.csv";
    std::string points_csv = "sweep-points.csv";
    std::string report = "sweep-report.json";
};

std::string read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::string out;
    char buf[1 << 16];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, got);
    std::fclose(f);
    return out;
}

int run_sweep_cmd(const SweepArgs& a) {
    const osn::SweepPlan plan = osn::sweep_plan_from_json(read_file(a.plan_path));
    const auto t0 = Clock::now();
    const osn::SweepResult res = osn::run_sweep(plan, a.trials_csv, a.report);
    osn::write_text_file(a.points_csv, osn::sweep_points_csv(res));
    std::fprintf(stderr, "sweep: %zu trials in %.2f s\n", res.trials.size(),
                 seconds_since(t0));
    if (res.fit.has_prediction)
        std::printf("fitted exponent %.4f (+/- %.4f), predicted %.4f, %s\n", res.fit.a_hat,
                    res.fit.a_ci_half, res.fit.predicted.poly,
                    res.fit.verdict ? "within tolerance" : "outside tolerance");
    else
        std::printf("fitted exponent %.4f (+/- %.4f)\n", res.fit.a_hat, res.fit.a_ci_half);
    std::printf("wrote %s %s %s\n", a.trials_csv.c_str(), a.points_csv.c_str(),
                a.report.c_str());
    return 0;
}

struct DatasetArgs {
    std::string edges_path;
    std::string checkins_path;
    osn::BBox box;
    double d_f_km = 200.0;
    std::size_t sample_count = 20000;
    std::size_t subsample_users = 3000;
    std::uint64_t seed = 7;
    std::string out_prefix = "dataset";
};

int run_validate_dataset(const DatasetArgs& a) {
    if (a.subsample_users == 0)
        throw CLI::ValidationError("--subsample-users must be positive");
    const auto t0 = Clock::now();
    const osn::EdgeList edges = osn::parse_edges(a.edges_path);
    const osn::CheckinFile ck = osn::parse_checkins(a.checkins_path);
    std::fprintf(stderr, "validate-dataset: %zu edges, %zu check-ins (%zu skipped)\n",
                 edges.size(), ck.checkins.size(), ck.skipped);
    const std::vector<osn::LocatedUser> located = osn::estimate_user_locations(ck.checkins);
    const osn::GeoDataset data = osn::build_geo_dataset(located, edges, a.box);
    std::fprintf(stderr, "validate-dataset: %zu users located, %zu inside the box\n",
                 located.size(), data.users.size());

    const osn::FitResult dfit = osn::fit_degree_exponent(data.users);
    osn::write_text_file(a.out_prefix + "-degree-fit.json",
                         osn::fit_result_json(dfit, "gamma_hat", -dfit.slope));
    osn::write_text_file(a.out_prefix + "-degree-bins.csv",
                         osn::bins_csv(osn::degree_fit_points(data.users)));

    osn::FormationOptions opts;
    opts.sample_count = a.sample_count;
    opts.subsample_users = a.subsample_users;
    opts.d_f_km = a.d_f_km;
    opts.seed = a.seed;
    const osn::FormationExperiment exp = osn::population_distance_experiment(data, opts);
    std::fprintf(stderr,
                 "validate-dataset: %zu/%zu positions retained, %zu users sampled\n",
                 exp.positions_retained, exp.positions_drawn, exp.users_sampled);
    const osn::FitResult ffit = osn::fit_formation_exponent(exp);
    osn::write_text_file(a.out_prefix + "-formation-fit.json",
                         osn::fit_result_json(ffit, "beta_hat", -ffit.slope));
    osn::write_text_file(a.out_prefix + "-formation-bins.csv", osn::bins_csv(exp.bins));

    std::printf("users %zu, gamma_hat %.4f, beta_hat %.4f\n", data.users.size(),
                -dfit.slope, -ffit.slope);
    std::printf("wrote %s-{degree,formation}-{fit.json,bins.csv}\n", a.out_prefix.c_str());
    std::fprintf(stderr, "validate-dataset: %.2f s\n", seconds_since(t0));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Monte-Carlo simulator and scaling-law toolkit for layered "
        "social-network transport models"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads, count (0 = all available)")
        ->envname("OSN_THREADS");

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "run one seeded trial end to end");
    c_sim->add_option("--n", sim.n, "node count")->required();
    c_sim->add_option("--gamma", sim.gamma, "friendship-degree exponent, dimensionless")
        ->required();
    c_sim->add_option("--beta", sim.beta, "friendship-formation exponent, dimensionless")
        ->required();
    CLI::Option* sim_phi =
        c_sim->add_option("--phi", sim.phi, "dissemination-pattern exponent, dimensionless");
    c_sim->add_option("--pattern", sim.pattern, "broadcast or multicast")
        ->check(CLI::IsMember({"broadcast", "multicast"}));
    c_sim->add_option("--seed", sim.seed, "RNG seed, 64-bit");
    c_sim->add_option("--out", sim.out, "measurements JSON output path");
    c_sim->add_option("--dump-graph", sim.dump_graph,
                      "also write the full social graph JSON to this path");

    PredictArgs pre;
    CLI::App* c_pre = app.add_subcommand("predict", "closed-form scaling prediction");
    CLI::Option* pre_gamma =
        c_pre->add_option("--gamma", pre.gamma, "friendship-degree exponent, dimensionless");
    CLI::Option* pre_beta =
        c_pre->add_option("--beta", pre.beta, "friendship-formation exponent, dimensionless");
    CLI::Option* pre_phi =
        c_pre->add_option("--phi", pre.phi, "dissemination-pattern exponent, dimensionless");
    c_pre->add_option("--pattern", pre.pattern, "broadcast or multicast")
        ->check(CLI::IsMember({"broadcast", "multicast"}));
    c_pre->add_option("--quantity", pre.quantity,
                      "load, degree-sum, destination-sum, anchor-emst-lower, "
                      "mean-anchor-distance, or session-emst-factor")
        ->check(CLI::IsMember({"load", "degree-sum", "destination-sum", "anchor-emst-lower",
                               "mean-anchor-distance", "session-emst-factor"}));
    c_pre->add_option("--out", pre.out, "also write the JSON to this path");

    SweepArgs swp;
    CLI::App* c_swp = app.add_subcommand("sweep", "run a ladder of trials and fit the slope");
    c_swp->add_option("--plan", swp.plan_path, "sweep plan JSON path")->required();
    c_swp->add_option("--trials-csv", swp.trials_csv, "per-trial CSV output path");
    c_swp->add_option("--points-csv", swp.points_csv, "per-size mean CSV output path");
    c_swp->add_option("--report", swp.report, "fit report JSON output path");

    DatasetArgs ds;
    CLI::App* c_ds = app.add_subcommand(
        "validate-dataset", "fit degree and formation exponents on check-in data");
    c_ds->add_option("--edges", ds.edges_path, "edge list path (two ids per line)")
        ->required();
    c_ds->add_option("--checkins", ds.checkins_path,
                     "check-in file path (user, time, lat, lon, location per line)")
        ->required();
    c_ds->add_option("--lat-min", ds.box.lat_min, "bounding box south edge, degrees");
    c_ds->add_option("--lat-max", ds.box.lat_max, "bounding box north edge, degrees");
    c_ds->add_option("--lon-min", ds.box.lon_min, "bounding box west edge, degrees");
    c_ds->add_option("--lon-max", ds.box.lon_max, "bounding box east edge, degrees");
    c_ds->add_option("--d-f-km", ds.d_f_km,
                     "max distance from a sampled position to its nearest user, km");
    c_ds->add_option("--sample-count", ds.sample_count,
                     "positions sampled over the box, count");
    c_ds->add_option("--subsample-users", ds.subsample_users,
                     "users in the probability estimate, count (must be positive)");
    c_ds->add_option("--seed", ds.seed, "RNG seed, 64-bit");
    c_ds->add_option("--out-prefix", ds.out_prefix, "output path prefix");

    CLI11_PARSE(app, argc, argv);
    apply_threads(threads);
    sim.phi_given = sim_phi->count() > 0;
    pre.phi_given = pre_phi->count() > 0;
    pre.gamma_given = pre_gamma->count() > 0;
    pre.beta_given = pre_beta->count() > 0;

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_pre->parsed()) return run_predict(pre);
        if (c_swp->parsed()) return run_sweep_cmd(swp);
        if (c_ds->parsed()) return run_validate_dataset(ds);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
