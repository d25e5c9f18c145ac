#pragma once

#include <string>

#include "osn/experiments.hpp"
#include "osn/model.hpp"

namespace osn {

// Result files must be byte-identical across reruns and thread counts, so
// the JSON payloads carry no wall-clock fields. The sweep CSV keeps a
// seconds column for eyeballing cost; comparisons should ignore it.

std::string sweep_csv(const SweepResult& res);
std::string sweep_points_csv(const SweepResult& res);
std::string sweep_report_json(const SweepResult& res);

// Parses the sweep-plan schema written by sweep_report_json's "plan" object.
// Unknown keys are rejected; missing or mistyped keys name the offending
// JSON path. `text` is the raw JSON document.
SweepPlan sweep_plan_from_json(const std::string& text);
std::string simulation_report_json(const ModelConfig& cfg, Pattern pattern,
                                   const TrialRecord& rec);
std::string social_graph_json(const TorusDeployment& dep, const SocialGraph& graph);

void write_text_file(const std::string& path, const std::string& body);
void write_sweep_csv(const SweepResult& res, const std::string& path);
void write_sweep_json(const SweepResult& res, const std::string& path);

}  // namespace osn
