#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orchestra/tool_registry.hpp"

namespace orchestra {

enum class TerminationReason { none, env_signal, max_turns, answer_emitted, format_violation };

std::string_view to_string(TerminationReason reason);
TerminationReason parse_termination_reason(std::string_view text);

// One reasoning-action-observation step. A well-formed turn carries exactly
// one of {action, final_answer}, with an observation iff it has an action.
// A turn whose policy output did not parse carries neither and records the
// raw text in format_violation instead.
struct Turn {
    std::string reasoning;
    std::optional<ToolCall> action;
    std::optional<ToolResult> observation;
    std::optional<std::string> final_answer;
    std::optional<std::string> format_violation;

    bool operator==(const Turn&) const = default;
};

struct Trajectory {
    std::string task_id;
    std::vector<Turn> turns;
    double total_cost = 0.0;
    double total_latency = 0.0;
    // Aligned with catalog (the full catalog, not the task's subset).
    std::vector<std::int64_t> tool_counts;
    std::vector<std::string> catalog;
    double preference_alignment = 0.0;
    std::optional<bool> outcome;
    TerminationReason termination = TerminationReason::none;
    double policy_cost = 0.0;
    double policy_latency = 0.0;
    int max_turns = 50;
    int rollout_index = 0;
    std::string policy;
    std::optional<std::vector<double>> preference;

    std::size_t action_turns() const;
    bool has_format_violation() const;
    std::optional<std::string> final_answer() const;
    // Non-empty final answer present.
    bool has_valid_output() const;
    // What the agent communicated; reasoning is private and excluded.
    std::string agent_visible_output() const;

    bool operator==(const Trajectory&) const = default;
};

json to_json(const Turn& turn);
json to_json(const Trajectory& trajectory);
Turn turn_from_json(const json& value);
Trajectory trajectory_from_json(const json& value);

}  // namespace orchestra
