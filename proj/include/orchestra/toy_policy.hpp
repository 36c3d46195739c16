#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orchestra/grpo.hpp"
#include "orchestra/rollout.hpp"

namespace orchestra {

// One decision of the toy policy: features seen and the action taken.
struct DecisionStep {
    std::vector<double> features;
    std::vector<bool> allowed;
    std::size_t action = 0;
};

// Linear softmax policy over {catalog tools..., ANSWER}. Features: bias,
// the task's preference vector, a one-hot turn bucket and a hashed domain
// bucket. Tools outside the task's subset are masked out, and so is ANSWER
// until some tool has been called: the policy answers with the latest
// observation, so with none it could only answer with nothing.
class ToyPolicy final : public Policy {
public:
    ToyPolicy(std::vector<std::string> catalog, double temperature = 1.0, int turn_buckets = 8,
              int domain_buckets = 4);

    std::string name() const override { return "toy"; }
    PolicyOutput act(const PolicyInput& input) const override;

    std::size_t action_count() const { return catalog_.size() + 1; }
    std::size_t answer_action() const { return catalog_.size(); }
    std::size_t feature_count() const;
    const std::vector<std::string>& catalog() const { return catalog_; }
    double temperature() const { return temperature_; }

    std::vector<double>& weights() { return weights_; }
    const std::vector<double>& weights() const { return weights_; }

    std::vector<double> features(const TaskSpec& task, int turn) const;
    std::vector<bool> allowed(const TaskSpec& task, bool has_observation) const;
    std::vector<double> probabilities(std::span<const double> features, const std::vector<bool>& allowed) const;
    // Distribution over action names ("ANSWER" for answering), assuming
    // every earlier turn called a tool.
    std::map<std::string, double> action_distribution(const TaskSpec& task, int turn = 0) const;

    // Decisions behind a trajectory this policy produced for the task.
    std::vector<DecisionStep> decision_steps(const TaskSpec& task, const Trajectory& trajectory) const;
    // Sum of per-decision log-probabilities.
    double log_prob(std::span<const DecisionStep> steps) const;
    // grad += scale * d log_prob / d weights
    void accumulate_log_prob_gradient(std::span<const DecisionStep> steps, double scale,
                                      std::vector<double>& grad) const;

    json to_json() const;
    static ToyPolicy from_json(const json& value);

private:
    std::vector<std::string> catalog_;
    double temperature_;
    int turn_buckets_;
    int domain_buckets_;
    std::vector<double> weights_;  // action-major: weights_[a * F + f]
};

struct PolicySample {
    std::vector<DecisionStep> steps;
    double old_log_prob = 0.0;
    double advantage = 0.0;
};

struct ObjectiveGradient {
    ClippedObjective objective;
    std::vector<double> gradient;
};

// Clipped GRPO objective at the policy's current weights and its analytic gradient.
ObjectiveGradient objective_and_gradient(const ToyPolicy& policy, std::span<const PolicySample> samples,
                                         double epsilon);

// Max over coordinates of |analytic - numeric| / max(|analytic|, |numeric|, 1e-6),
// numeric by central differences with step h.
double gradient_check(const ToyPolicy& policy, std::span<const PolicySample> samples, double epsilon,
                      double h = 1e-5);

struct TrainConfig {
    int group_size = 8;
    int steps = 100;
    double learning_rate = 1e-2;
    double epsilon = 0.2;
    double std_threshold = 0.1;
    std::uint64_t seed = 0;
    int tasks_per_step = 4;
    int update_epochs = 2;
    int max_turns = 50;
    int workers = 1;
    // Consecutive fully filtered steps tolerated before training stops.
    int patience = 50;

    void validate() const;
};

struct UpdateReport {
    int step = 0;
    double objective_value = 0.0;
    double clip_fraction = 0.0;
    double ratio_min = 1.0;
    double ratio_mean = 1.0;
    double ratio_max = 1.0;
    double grad_norm = 0.0;
    bool step_accepted = false;
    double mean_reward = 0.0;
    int groups = 0;
    int filtered_groups = 0;
    int samples = 0;
    std::map<std::string, double> action_distribution;
};

json to_json(const UpdateReport& report);

struct TrainResult {
    std::vector<UpdateReport> reports;
    bool stalled = false;
};

// GRPO on the toy policy. Step s (counted from first_step) draws its tasks
// and seeds from (cfg.seed, s), so resuming at a later step is deterministic.
TrainResult train_toy_policy(ToyPolicy& policy, std::span<const TaskSpec> tasks, const ToolCatalog& catalog,
                             const TrainConfig& cfg, int first_step = 0);

// Tasks without a preference train on outcome only.
std::vector<double> training_preference(const TaskSpec& task, std::size_t catalog_size);

}  // namespace orchestra
