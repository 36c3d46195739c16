#pragma once

#include <string>
#include <vector>

#include "orchestra/rollout.hpp"

namespace orchestra {

// Plausible arguments for a tool: required strings get the instruction,
// enums their first value, numbers 1, booleans false.
json default_arguments(const ToolSpec& spec, const TaskSpec& task);

// Replays the golden calls, then answers with the gold answer or required info.
class GoldenReplayPolicy final : public Policy {
public:
    std::string name() const override { return "golden"; }
    PolicyOutput act(const PolicyInput& input) const override;
};

// Answers immediately, restating the instruction.
class NeverActPolicy final : public Policy {
public:
    std::string name() const override { return "never_act"; }
    PolicyOutput act(const PolicyInput& input) const override;
};

// Calls tools forever; cycles through the task's tools.
class NeverAnswerPolicy final : public Policy {
public:
    std::string name() const override { return "never_answer"; }
    PolicyOutput act(const PolicyInput& input) const override;
};

// Solvability probe for task filtering. Episode 0 replays the golden calls;
// later episodes drop or repeat one call. The answer is assembled from the
// observations it received, never from the task's required info.
class ProbePolicy final : public Policy {
public:
    std::string name() const override { return "probe"; }
    PolicyOutput act(const PolicyInput& input) const override;

    static std::vector<ToolCall> plan(const TaskSpec& task, int episode_index);
};

// Emits a fixed list of raw action texts, then answers "done".
class ScriptedPolicy final : public Policy {
public:
    explicit ScriptedPolicy(std::vector<std::string> actions, std::string label = "scripted");
    std::string name() const override { return label_; }
    PolicyOutput act(const PolicyInput& input) const override;

private:
    std::vector<std::string> actions_;
    std::string label_;
};

// Uniformly random over the task's tools and answering; answers with the
// latest observation.
class RandomPolicy final : public Policy {
public:
    explicit RandomPolicy(double answer_probability = 0.3) : answer_probability_(answer_probability) {}
    std::string name() const override { return "random"; }
    PolicyOutput act(const PolicyInput& input) const override;

private:
    double answer_probability_;
};

}  // namespace orchestra
