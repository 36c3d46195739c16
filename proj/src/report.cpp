#include "orchestra/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "orchestra/executors.hpp"

namespace orchestra {

namespace {

bool solved(const Trajectory& t)
{
    return t.outcome.value_or(false);
}

}  // namespace

TrajectoryLog read_trajectory_log(const std::filesystem::path& path)
{
    TrajectoryLog log;
    log.label = path.parent_path().filename().string();
    if (log.label.empty())
        log.label = path.stem().string();
    for (const auto& line : read_jsonl_file(path))
        log.trajectories.push_back(trajectory_from_json(line));
    return log;
}

std::vector<ToolUsageRow> tool_usage(std::span<const TrajectoryLog> logs)
{
    std::vector<ToolUsageRow> rows;
    std::map<std::string, std::size_t> index;
    std::size_t n = 0;
    for (const auto& log : logs)
        for (const auto& t : log.trajectories) {
            ++n;
            for (std::size_t i = 0; i < t.catalog.size(); ++i) {
                auto [it, inserted] = index.emplace(t.catalog[i], rows.size());
                if (inserted)
                    rows.push_back({t.catalog[i], 0, 0.0});
                if (i < t.tool_counts.size())
                    rows[it->second].calls += t.tool_counts[i];
            }
        }
    if (n == 0)
        throw PreconditionError("no trajectories to report on");
    for (auto& r : rows)
        r.mean_calls = static_cast<double>(r.calls) / static_cast<double>(n);
    return rows;
}

std::vector<CostCurvePoint> cost_curve(std::span<const TrajectoryLog> logs)
{
    std::vector<const TrajectoryLog*> ordered;
    for (const auto& log : logs) {
        if (log.trajectories.empty())
            throw PreconditionError("log " + log.label + " is empty");
        ordered.push_back(&log);
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](const TrajectoryLog* a, const TrajectoryLog* b) {
        int ma = a->trajectories.front().max_turns, mb = b->trajectories.front().max_turns;
        return ma != mb ? ma < mb : a->label < b->label;
    });
    std::vector<CostCurvePoint> points;
    for (const auto* log : ordered) {
        std::set<double> budgets;
        for (const auto& t : log->trajectories)
            budgets.insert(t.total_cost * 100.0);
        const double n = static_cast<double>(log->trajectories.size());
        for (double b : budgets) {
            std::size_t ok = 0;
            for (const auto& t : log->trajectories)
                ok += solved(t) && t.total_cost * 100.0 <= b;
            points.push_back({log->label, log->trajectories.front().max_turns, b, static_cast<double>(ok) / n});
        }
    }
    return points;
}

std::string example_id(const Trajectory& trajectory)
{
    return trajectory.task_id + "#" + std::to_string(trajectory.rollout_index);
}

std::vector<EvalExample> eval_examples(const TrajectoryLog& log)
{
    std::vector<EvalExample> out;
    for (const auto& t : log.trajectories) {
        if (!t.preference)
            throw PreconditionError("trajectory " + example_id(t) + " has no preference vector");
        out.push_back({example_id(t), eval_metric_vector(t, solved(t)), *t.preference, solved(t)});
    }
    return out;
}

BaselineStore baseline_from_log(const TrajectoryLog& log, std::string_view benchmark, std::string_view label)
{
    BaselineStore store;
    for (const auto& t : log.trajectories)
        store.put({std::string(benchmark), example_id(t), std::string(label), eval_metric_vector(t, solved(t))});
    return store;
}

std::string tool_usage_csv(const std::vector<ToolUsageRow>& rows)
{
    std::string out = "tool,calls,mean_calls_per_task\n";
    for (const auto& r : rows)
        out += r.tool + "," + std::to_string(r.calls) + "," + format_number(r.mean_calls) + "\n";
    return out;
}

std::string cost_curve_csv(const std::vector<CostCurvePoint>& points)
{
    std::string out = "label,max_turns,budget_cents,solve_rate\n";
    for (const auto& p : points)
        out += p.label + "," + std::to_string(p.max_turns) + "," + format_number(p.budget_cents) + "," +
               format_number(p.solve_rate) + "\n";
    return out;
}

std::string preference_scores_csv(const std::vector<PreferenceScoreRow>& rows)
{
    std::string out = "label,examples,score_sum,score_mean\n";
    for (const auto& r : rows)
        out += r.label + "," + std::to_string(r.score.examples) + "," + format_number(r.score.sum) + "," +
               format_number(r.score.mean) + "\n";
    return out;
}

}  // namespace orchestra
