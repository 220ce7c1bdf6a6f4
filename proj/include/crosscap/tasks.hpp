#pragma once
#include <string>
#include <vector>

#include "crosscap/config.hpp"

namespace crosscap {

// One artifact produced by a task; empty path means stdout.
struct TaskOutput {
    std::string path;
    std::string content;
};

std::vector<TaskOutput> run_analyze_task(const Config& cfg, const Task& task);
std::vector<TaskOutput> run_curve_task(const Config& cfg, const Task& task);
std::vector<TaskOutput> run_gauss_bonnet_task(const Config& cfg, const Task& task);

// Writes outputs to their paths (or stdout) as-is.
void emit_outputs(const std::vector<TaskOutput>& outputs);

} // namespace crosscap
