#include "orchestra/trajectory.hpp"

namespace orchestra {

std::string_view to_string(TerminationReason reason)
{
    switch (reason) {
    case TerminationReason::none: return "none";
    case TerminationReason::env_signal: return "env_signal";
    case TerminationReason::max_turns: return "max_turns";
    case TerminationReason::answer_emitted: return "answer_emitted";
    case TerminationReason::format_violation: return "format_violation";
    }
    return "none";
}

TerminationReason parse_termination_reason(std::string_view text)
{
    if (text == "env_signal") return TerminationReason::env_signal;
    if (text == "max_turns") return TerminationReason::max_turns;
    if (text == "answer_emitted") return TerminationReason::answer_emitted;
    if (text == "format_violation") return TerminationReason::format_violation;
    if (text == "none") return TerminationReason::none;
    throw ConfigError("unknown termination reason: " + std::string(text));
}

std::size_t Trajectory::action_turns() const
{
    std::size_t n = 0;
    for (const auto& t : turns)
        n += t.action.has_value();
    return n;
}

bool Trajectory::has_format_violation() const
{
    for (const auto& t : turns)
        if (t.format_violation)
            return true;
    return false;
}

std::optional<std::string> Trajectory::final_answer() const
{
    for (auto it = turns.rbegin(); it != turns.rend(); ++it)
        if (it->final_answer)
            return it->final_answer;
    return std::nullopt;
}

bool Trajectory::has_valid_output() const
{
    auto answer = final_answer();
    return answer && !normalize_text(*answer).empty();
}

std::string Trajectory::agent_visible_output() const
{
    std::string out;
    for (const auto& t : turns) {
        if (!t.final_answer)
            continue;
        if (!out.empty())
            out += "\n";
        out += *t.final_answer;
    }
    return out;
}

json to_json(const Turn& turn)
{
    json out = {{"reasoning", turn.reasoning},
                {"action", turn.action ? to_json(*turn.action) : json(nullptr)},
                {"observation", turn.observation ? to_json(*turn.observation) : json(nullptr)},
                {"final_answer", turn.final_answer ? json(*turn.final_answer) : json(nullptr)}};
    if (turn.format_violation)
        out["format_violation"] = *turn.format_violation;
    return out;
}

json to_json(const Trajectory& trajectory)
{
    json turns = json::array();
    for (const auto& t : trajectory.turns)
        turns.push_back(to_json(t));
    json counts = json::object();
    for (std::size_t i = 0; i < trajectory.tool_counts.size() && i < trajectory.catalog.size(); ++i)
        counts[trajectory.catalog[i]] = trajectory.tool_counts[i];
    json out = {{"task_id", trajectory.task_id},
                {"turns", turns},
                {"totals",
                 {{"cost", trajectory.total_cost},
                  {"latency", trajectory.total_latency},
                  {"tool_counts", counts},
                  {"policy_cost", trajectory.policy_cost},
                  {"policy_latency", trajectory.policy_latency},
                  {"preference_alignment", trajectory.preference_alignment}}},
                {"termination_reason", to_string(trajectory.termination)},
                {"catalog", trajectory.catalog},
                {"outcome", trajectory.outcome ? json(*trajectory.outcome ? 1 : 0) : json(nullptr)},
                {"max_turns", trajectory.max_turns},
                {"rollout_index", trajectory.rollout_index},
                {"policy", trajectory.policy}};
    if (trajectory.preference)
        out["preference"] = *trajectory.preference;
    return out;
}

Turn turn_from_json(const json& value)
{
    Turn t;
    t.reasoning = value.value("reasoning", "");
    if (value.contains("action") && !value["action"].is_null())
        t.action = tool_call_from_json(value["action"]);
    if (value.contains("observation") && !value["observation"].is_null())
        t.observation = tool_result_from_json(value["observation"]);
    if (value.contains("final_answer") && value["final_answer"].is_string())
        t.final_answer = value["final_answer"].get<std::string>();
    if (value.contains("format_violation") && value["format_violation"].is_string())
        t.format_violation = value["format_violation"].get<std::string>();
    return t;
}

Trajectory trajectory_from_json(const json& value)
{
    try {
        Trajectory tr;
        tr.task_id = value.at("task_id").get<std::string>();
        for (const auto& t : value.at("turns"))
            tr.turns.push_back(turn_from_json(t));
        const auto& totals = value.at("totals");
        tr.total_cost = totals.value("cost", 0.0);
        tr.total_latency = totals.value("latency", 0.0);
        tr.policy_cost = totals.value("policy_cost", 0.0);
        tr.policy_latency = totals.value("policy_latency", 0.0);
        tr.preference_alignment = totals.value("preference_alignment", 0.0);
        const json counts = totals.value("tool_counts", json::object());
        if (value.contains("catalog")) {
            tr.catalog = value["catalog"].get<std::vector<std::string>>();
        } else {
            for (const auto& [name, _] : counts.items())
                tr.catalog.push_back(name);
        }
        for (const auto& name : tr.catalog)
            tr.tool_counts.push_back(counts.value(name, std::int64_t{0}));
        tr.termination = parse_termination_reason(value.value("termination_reason", "none"));
        if (value.contains("outcome") && !value["outcome"].is_null())
            tr.outcome = value["outcome"].get<int>() != 0;
        tr.max_turns = value.value("max_turns", 50);
        tr.rollout_index = value.value("rollout_index", 0);
        tr.policy = value.value("policy", "");
        if (value.contains("preference") && value["preference"].is_array())
            tr.preference = value["preference"].get<std::vector<double>>();
        return tr;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed trajectory: ") + e.what());
    }
}

}  // namespace orchestra
