#include "orchestra/model_description.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace orchestra {

std::vector<DomainTally> tally_by_domain(std::span<const TaskSpec> tasks, std::span<const Trajectory> trajectories,
                                         const std::vector<bool>& outcomes)
{
    if (tasks.empty())
        throw PreconditionError("model description needs at least one task");
    if (tasks.size() != trajectories.size() || tasks.size() != outcomes.size())
        throw PreconditionError("tasks, trajectories and outcomes must have the same length");

    struct Acc {
        DomainTally tally;
        std::size_t turns = 0;
        std::map<std::string, std::int64_t> calls;
    };
    std::map<std::string, Acc> by_domain;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto& acc = by_domain[tasks[i].domain];
        acc.tally.domain = tasks[i].domain;
        acc.tally.attempted += 1;
        acc.tally.solved += outcomes[i] ? 1 : 0;
        acc.turns += trajectories[i].action_turns();
        for (const auto& turn : trajectories[i].turns)
            if (turn.action)
                acc.calls[turn.action->tool] += 1;
    }

    std::vector<DomainTally> out;
    for (auto& [_, acc] : by_domain) {
        acc.tally.mean_action_turns = static_cast<double>(acc.turns) / acc.tally.attempted;
        acc.tally.top_tools.assign(acc.calls.begin(), acc.calls.end());
        std::stable_sort(acc.tally.top_tools.begin(), acc.tally.top_tools.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        if (acc.tally.top_tools.size() > 3)
            acc.tally.top_tools.resize(3);
        out.push_back(std::move(acc.tally));
    }
    return out;
}

std::string build_model_description(std::string_view model_name, std::span<const TaskSpec> tasks,
                                     std::span<const Trajectory> trajectories, const std::vector<bool>& outcomes,
                                     const DescriptionRewriter& rewriter)
{
    auto tallies = tally_by_domain(tasks, trajectories, outcomes);
    int attempted = 0;
    int solved = 0;
    for (const auto& t : tallies) {
        attempted += t.attempted;
        solved += t.solved;
    }

    std::string text = "Model: " + std::string(model_name) + "\n";
    text += "Overall solved/attempted = " + std::to_string(solved) + "/" + std::to_string(attempted) + "\n";
    text += "Per domain:\n";
    for (const auto& t : tallies) {
        char turns[32];
        std::snprintf(turns, sizeof turns, "%.2f", t.mean_action_turns);
        text += "- " + t.domain + ": solved/attempted = " + std::to_string(t.solved) + "/" +
                std::to_string(t.attempted) + ", mean tool calls " + turns;
        if (!t.top_tools.empty()) {
            text += ", most used:";
            for (const auto& [name, n] : t.top_tools)
                text += " " + name + " (" + std::to_string(n) + ")";
        }
        text += "\n";
    }

    std::vector<const DomainTally*> weak;
    for (const auto& t : tallies)
        if (static_cast<double>(t.solved) <= kWeaknessRate * t.attempted)
            weak.push_back(&t);
    if (!weak.empty()) {
        text += "Weaknesses:\n";
        for (const auto* t : weak)
            text += "- " + t->domain + " (" + std::to_string(t->attempted - t->solved) + " of " +
                    std::to_string(t->attempted) + " failed)\n";
    }
    return rewriter ? rewriter(text) : text;
}

}  // namespace orchestra
