#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orchestra/env_sim.hpp"
#include "orchestra/trajectory.hpp"

namespace orchestra {

struct Message {
    std::string role;
    std::string content;

    bool operator==(const Message&) const = default;
};

struct PolicyInput {
    const TaskSpec& task;
    const ToolCatalog& catalog;
    // System prompt, user turn, then one assistant and one observation
    // message per completed turn.
    std::span<const Message> history;
    std::span<const Turn> turns;
    int turn = 0;
    std::uint64_t seed = 0;
    int episode_index = 0;
};

struct PolicyOutput {
    std::string reasoning;
    // <tool_call>{"name": ..., "arguments": {...}}</tool_call> or <answer>...</answer>
    std::string action_text;
    std::int64_t tokens_in = 0;
    std::int64_t tokens_out = 0;
};

// act() must be safe to call concurrently; all randomness comes from input.seed.
class Policy {
public:
    virtual ~Policy() = default;
    virtual std::string name() const = 0;
    virtual PolicyOutput act(const PolicyInput& input) const = 0;
};

struct ParsedAnswer {
    std::string text;
};

struct ParsedViolation {
    std::string raw;
    std::string reason;
};

using ParsedAction = std::variant<ToolCall, ParsedAnswer, ParsedViolation>;

ParsedAction parse_action(std::string_view text);
std::string format_tool_call(const ToolCall& call);
std::string format_answer(std::string_view text);

struct RolloutConfig {
    int max_turns = 50;
    std::uint64_t seed = 0;
    double temperature = 1.0;
    bool record_transcript = true;
    std::string observation_role = "environment";
    // Set when the policy is itself a priced model.
    std::optional<PricingEntry> policy_pricing;
    double policy_turn_latency = 0.0;
    int workers = 1;

    void validate() const;
};

std::string system_prompt(const TaskSpec& task);
std::string user_prompt(const TaskSpec& task);

// Tools named in task.available_tools must exist in catalog; counts and
// preference alignment are indexed by catalog.
Trajectory run_episode(const Policy& policy, const TaskSpec& task, const ToolCatalog& catalog,
                       const RolloutConfig& cfg, int episode_index = 0);

// Episode i runs with seed mix_seed(cfg.seed, i) on its own fork.
std::vector<Trajectory> run_group(const Policy& policy, const TaskSpec& task, const ToolCatalog& catalog,
                                  const RolloutConfig& cfg, int group_size);

}  // namespace orchestra
