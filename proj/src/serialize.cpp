#include "osn/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace osn {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json plan_json(const SweepPlan& plan) {
    ordered_json j;
    j["pattern"] = to_string(plan.pattern);
    j["measurement"] = to_string(plan.measurement);
    j["gamma"] = plan.gamma;
    j["beta"] = plan.beta;
    j["phi"] = plan.phi;
    j["n_ladder"] = plan.n_ladder;
    j["replicates"] = plan.replicates;
    j["base_seed"] = plan.base_seed;
    j["tolerance"] = plan.tolerance;
    j["fit_log_term"] = plan.fit_log_term;
    return j;
}

ordered_json fit_json(const ScalingFitReport& fit) {
    ordered_json j;
    j["a_hat"] = fit.a_hat;
    j["a_ci_half"] = fit.a_ci_half;
    j["c_hat"] = fit.c_hat;
    j["with_log_term"] = fit.with_log_term;
    if (fit.with_log_term) j["b_hat"] = fit.b_hat;
    j["r2"] = fit.r2;
    return j;
}

}  // namespace

std::string sweep_csv(const SweepResult& res) {
    std::string out = "n,replicate,seed,measurement,value,seconds\n";
    const char* name = to_string(res.plan.measurement);
    const std::size_t reps = res.plan.replicates;
    char line[256];
    for (std::size_t i = 0; i < res.trials.size(); ++i) {
        const TrialRecord& t = res.trials[i];
        std::snprintf(line, sizeof(line), "%zu,%zu,%llu,%s,%.17g,%.3f\n", t.n,
                      reps ? i % reps : i, static_cast<unsigned long long>(t.seed),
                      name, measurement_value(t, res.plan.measurement), t.seconds);
        out += line;
    }
    return out;
}

std::string sweep_points_csv(const SweepResult& res) {
    std::string out = "n,mean,stderr,replicates\n";
    char line[160];
    for (const ScalingPoint& p : res.fit.points) {
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%zu\n", p.n, p.mean,
                      p.stderr_mean, p.replicates);
        out += line;
    }
    return out;
}

SweepPlan sweep_plan_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("sweep plan is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("sweep plan: top level must be an object");

    static const char* known[] = {"pattern",    "measurement", "gamma",     "beta",
                                  "phi",        "n_ladder",    "replicates", "base_seed",
                                  "tolerance",  "fit_log_term"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw std::runtime_error("sweep plan: unknown key \"" + item.key() + "\"");
    }
    auto require = [&](const char* key) -> const ordered_json& {
        auto it = j.find(key);
        if (it == j.end())
            throw std::runtime_error(std::string("sweep plan: missing key \"") + key + "\"");
        return *it;
    };
    auto as_double = [&](const char* key, bool required, double dflt) -> double {
        auto it = j.find(key);
        if (it == j.end()) {
            if (required) require(key);
            return dflt;
        }
        if (!it->is_number())
            throw std::runtime_error(std::string("sweep plan: \"") + key +
                                     "\" must be a number");
        return it->get<double>();
    };

    SweepPlan plan;
    {
        const ordered_json& p = require("pattern");
        if (!p.is_string())
            throw std::runtime_error("sweep plan: \"pattern\" must be a string");
        plan.pattern = pattern_from_string(p.get<std::string>());
    }
    {
        const ordered_json& m = require("measurement");
        if (!m.is_string())
            throw std::runtime_error("sweep plan: \"measurement\" must be a string");
        plan.measurement = measurement_from_string(m.get<std::string>());
    }
    plan.gamma = as_double("gamma", true, 0.0);
    plan.beta = as_double("beta", true, 0.0);
    plan.phi = as_double("phi", false, 0.0);
    {
        const ordered_json& l = require("n_ladder");
        if (!l.is_array() || l.empty())
            throw std::runtime_error("sweep plan: \"n_ladder\" must be a nonempty array");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_number_unsigned())
                throw std::runtime_error("sweep plan: \"n_ladder[" + std::to_string(i) +
                                         "]\" must be a nonnegative integer");
            plan.n_ladder.push_back(l[i].get<std::size_t>());
        }
    }
    {
        auto it = j.find("replicates");
        if (it != j.end()) {
            if (!it->is_number_unsigned())
                throw std::runtime_error(
                    "sweep plan: \"replicates\" must be a nonnegative integer");
            plan.replicates = it->get<std::size_t>();
        }
    }
    {
        auto it = j.find("base_seed");
        if (it != j.end()) {
            if (!it->is_number_unsigned())
                throw std::runtime_error(
                    "sweep plan: \"base_seed\" must be a nonnegative integer");
            plan.base_seed = it->get<std::uint64_t>();
        }
    }
    plan.tolerance = as_double("tolerance", false, plan.tolerance);
    {
        auto it = j.find("fit_log_term");
        if (it != j.end()) {
            if (!it->is_boolean())
                throw std::runtime_error("sweep plan: \"fit_log_term\" must be a boolean");
            plan.fit_log_term = it->get<bool>();
        }
    }
    validate(plan);
    return plan;
}

std::string sweep_report_json(const SweepResult& res) {
    ordered_json j;
    j["plan"] = plan_json(res.plan);
    ordered_json pts = ordered_json::array();
    for (const ScalingPoint& p : res.fit.points) {
        ordered_json pj;
        pj["n"] = p.n;
        pj["mean"] = p.mean;
        pj["stderr_mean"] = p.stderr_mean;
        pj["replicates"] = p.replicates;
        pts.push_back(pj);
    }
    j["points"] = pts;
    j["fit"] = fit_json(res.fit);
    if (res.fit.has_prediction) {
        ordered_json pred;
        pred["poly"] = res.fit.predicted.poly;
        pred["logpow"] = res.fit.predicted.logpow;
        pred["order"] = to_string(res.fit.predicted);
        j["prediction"] = pred;
        j["verdict"] = res.fit.verdict ? "within-tolerance" : "outside-tolerance";
    } else {
        j["prediction"] = nullptr;
        j["verdict"] = "unchecked";
    }
    return j.dump(2) + "\n";
}

std::string simulation_report_json(const ModelConfig& cfg, Pattern pattern,
                                   const TrialRecord& rec) {
    ordered_json j;
    ordered_json c;
    c["n"] = cfg.n;
    c["gamma"] = cfg.gamma;
    c["beta"] = cfg.beta;
    c["phi"] = cfg.phi;
    c["seed"] = cfg.seed;
    c["pattern"] = to_string(pattern);
    j["config"] = c;
    ordered_json m;
    m["total_load"] = rec.total_load;
    m["anchor_emst_sum"] = rec.anchor_emst_sum;
    m["final_hop_sum"] = rec.final_hop_sum;
    m["node_emst_sum"] = rec.node_emst_sum;
    m["degree_sum"] = rec.degree_sum;
    if (pattern == Pattern::multicast) m["destination_sum"] = rec.destination_sum;
    m["mean_anchor_distance"] = rec.mean_anchor_distance;
    j["measurements"] = m;
    return j.dump(2) + "\n";
}

std::string social_graph_json(const TorusDeployment& dep, const SocialGraph& graph) {
    ordered_json j;
    j["L"] = dep.L;
    ordered_json pos = ordered_json::array();
    for (const Point& p : dep.positions) pos.push_back({p.x, p.y});
    j["positions"] = pos;
    j["degrees"] = graph.degrees;
    ordered_json fr = ordered_json::array();
    for (const auto& f : graph.friends) fr.push_back(f);
    j["friends"] = fr;
    ordered_json an = ordered_json::array();
    for (const auto& a : graph.anchors) {
        ordered_json row = ordered_json::array();
        for (const Point& p : a) row.push_back({p.x, p.y});
        an.push_back(row);
    }
    j["anchors"] = an;
    ordered_json af = ordered_json::array();
    for (const auto& f : graph.anchor_friend) af.push_back(f);
    j["anchor_friend"] = af;
    return j.dump() + "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sweep_csv(const SweepResult& res, const std::string& path) {
    write_text_file(path, sweep_csv(res));
}

void write_sweep_json(const SweepResult& res, const std::string& path) {
    write_text_file(path, sweep_report_json(res));
}

}  // namespace osn
