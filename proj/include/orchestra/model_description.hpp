#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "orchestra/env_sim.hpp"
#include "orchestra/trajectory.hpp"

namespace orchestra {

struct DomainTally {
    std::string domain;
    int attempted = 0;
    int solved = 0;
    double mean_action_turns = 0.0;
    std::vector<std::pair<std::string, std::int64_t>> top_tools;  // most called first
};

// Domains solved at or below this rate are listed as weaknesses.
inline constexpr double kWeaknessRate = 0.5;

std::vector<DomainTally> tally_by_domain(std::span<const TaskSpec> tasks, std::span<const Trajectory> trajectories,
                                         const std::vector<bool>& outcomes);

// Optional rewriter for the structured summary (e.g. an LLM endpoint).
using DescriptionRewriter = std::function<std::string(const std::string&)>;

// Structured capability description of a model from a sample of its
// trajectories. Throws PreconditionError on empty or mismatched inputs.
std::string build_model_description(std::string_view model_name, std::span<const TaskSpec> tasks,
                                    std::span<const Trajectory> trajectories, const std::vector<bool>& outcomes,
                                    const DescriptionRewriter& rewriter = {});

}  // namespace orchestra
