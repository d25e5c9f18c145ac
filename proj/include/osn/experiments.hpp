#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osn/complexity.hpp"
#include "osn/model.hpp"
#include "osn/stats.hpp"

namespace osn {

enum class Measurement {
    total_load,            // anchor trees plus final hops, all sessions
    anchor_emst_sum,       // sum of EMST(source + anchors)
    node_emst_sum,         // sum of EMST(source + destination nodes)
    degree_sum,            // sum of friend counts
    destination_sum,       // sum of multicast destination counts
    mean_anchor_distance,  // mean source-to-anchor distance
};

const char* to_string(Measurement m);
Measurement measurement_from_string(const std::string& s);
const char* to_string(Pattern p);
Pattern pattern_from_string(const std::string& s);

struct TrialRecord {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double total_load = 0.0;
    double anchor_emst_sum = 0.0;
    double final_hop_sum = 0.0;
    double node_emst_sum = 0.0;
    double degree_sum = 0.0;
    double destination_sum = 0.0;  // 0 for broadcast runs
    double mean_anchor_distance = 0.0;
    double seconds = 0.0;  // wall time; never serialized into result files
};

// One end-to-end run: deployment, graph formation, sessions, measurements.
// Work is streamed per node so the full graph is never materialized; the RNG
// substream layout is identical to form_social_graph + gen_*_sessions, so
// the numbers match a run over materialized structures exactly.
// `only` restricts the work to what one measurement needs (degree sums skip
// the geometry entirely); nullopt computes everything.
TrialRecord run_trial(const ModelConfig& cfg, Pattern pattern,
                      std::optional<Measurement> only = std::nullopt);

struct SweepPlan {
    std::vector<std::size_t> n_ladder;  // strictly increasing, >= 4 entries
    std::size_t replicates = 3;         // >= 3
    double gamma = 0.0;
    double beta = 0.0;
    double phi = 0.0;
    Pattern pattern = Pattern::broadcast;
    Measurement measurement = Measurement::total_load;
    std::uint64_t base_seed = 0;
    double tolerance = 0.15;   // |fitted poly - predicted poly| allowed
    bool fit_log_term = false;
};

void validate(const SweepPlan& plan);

struct ScalingPoint {
    std::size_t n = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
    std::size_t replicates = 0;
};

struct ScalingFitReport {
    std::vector<ScalingPoint> points;
    double a_hat = 0.0;       // fitted poly exponent
    double a_ci_half = 0.0;   // 95% half-width
    double c_hat = 0.0;       // fitted log-intercept
    bool with_log_term = false;
    double b_hat = 0.0;       // fitted log-log term when enabled
    double r2 = 0.0;
    bool has_prediction = false;
    AsymptoticOrder predicted{};
    double tolerance = 0.15;
    bool verdict = false;  // |a_hat - predicted.poly| <= tolerance
};

// Log-log least squares over (n, y). Requires >= 4 points, y > 0.
ScalingFitReport fit_scaling_exponent(const std::vector<std::pair<double, double>>& points,
                                      bool fit_log_term);

// The predictor a sweep's measurement is compared against.
AsymptoticOrder predicted_order(const SweepPlan& plan);

struct SweepResult {
    SweepPlan plan;
    std::vector<TrialRecord> trials;  // ladder-major, replicate-minor order
    ScalingFitReport fit;
};

// Runs the full ladder; trial (n, replicate) seeds derive from the base
// seed. csv_path/json_path empty = don't write that file.
SweepResult run_sweep(const SweepPlan& plan, const std::string& csv_path = "",
                      const std::string& json_path = "");

double measurement_value(const TrialRecord& r, Measurement m);

}  // namespace osn
