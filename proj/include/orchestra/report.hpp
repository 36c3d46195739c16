#pragma once

#include <span>
#include <string>
#include <vector>

#include "orchestra/rewards.hpp"
#include "orchestra/trajectory.hpp"

namespace orchestra {

struct TrajectoryLog {
    std::string label;
    std::vector<Trajectory> trajectories;
};

TrajectoryLog read_trajectory_log(const std::filesystem::path& path);

struct ToolUsageRow {
    std::string tool;
    std::int64_t calls = 0;
    double mean_calls = 0.0;  // per trajectory
};

// Tools in order of first appearance across the logs' catalogs.
std::vector<ToolUsageRow> tool_usage(std::span<const TrajectoryLog> logs);

struct CostCurvePoint {
    std::string label;
    int max_turns = 0;
    double budget_cents = 0.0;
    double solve_rate = 0.0;  // share of trajectories solved at cost <= budget
};

// Per log, one point per distinct trajectory cost, budgets ascending.
// Logs are ordered by max_turns, then label.
std::vector<CostCurvePoint> cost_curve(std::span<const TrajectoryLog> logs);

// "task_id#rollout_index"
std::string example_id(const Trajectory& trajectory);

// Trajectories need a stored outcome and preference vector.
std::vector<EvalExample> eval_examples(const TrajectoryLog& log);
BaselineStore baseline_from_log(const TrajectoryLog& log, std::string_view benchmark, std::string_view label);

std::string tool_usage_csv(const std::vector<ToolUsageRow>& rows);
std::string cost_curve_csv(const std::vector<CostCurvePoint>& points);

struct PreferenceScoreRow {
    std::string label;
    PreferenceScore score;
};

std::string preference_scores_csv(const std::vector<PreferenceScoreRow>& rows);

}  // namespace orchestra
