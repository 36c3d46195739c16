#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "orchestra/env_sim.hpp"
#include "orchestra/preference.hpp"
#include "orchestra/trajectory.hpp"

namespace orchestra {

// [m_1 .. m_n, r_outcome, r_compute, r_latency]
using MetricVector = std::vector<double>;

// Training vector: r_compute = -total cost (dollars), r_latency = -total latency (seconds).
// Throws DimensionError if the trajectory was not counted against this catalog.
MetricVector metric_vector(const Trajectory& trajectory, const ToolCatalog& catalog, bool outcome);

struct NormalizedBatch {
    std::vector<MetricVector> vectors;
    std::vector<double> min;
    std::vector<double> max;
};

// Per-coordinate min-max over the batch; constant coordinates become 0.
NormalizedBatch normalize_batch(std::span<const MetricVector> batch);

// normalized . P when outcome, else 0.
double final_reward(std::span<const double> normalized, std::span<const double> preference, bool outcome);

using AnswerJudge = std::function<bool(std::string_view predicted, std::string_view gold)>;

// Casefold, drop punctuation and the articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view text);
bool normalized_exact_match(std::string_view predicted, std::string_view gold);

struct OutcomeResult {
    bool outcome = false;
    bool invalid_output = false;
    std::optional<VerificationReport> report;
};

// Environment tasks: verify(...).solved. Answer-keyed tasks: judge verdict on
// the final answer; a missing answer is 0 with invalid_output set.
OutcomeResult outcome_reward(const TaskSpec& task, const Trajectory& trajectory,
                             const AnswerJudge& judge = normalized_exact_match);

struct RewardBreakdown {
    std::string task_id;
    MetricVector raw;
    MetricVector normalized;
    double final = 0.0;
    std::optional<double> advantage;
};

struct BatchRewards {
    std::vector<RewardBreakdown> rewards;
    std::vector<double> min;
    std::vector<double> max;
};

BatchRewards compute_batch_rewards(std::span<const Trajectory> trajectories, const std::vector<bool>& outcomes,
                                   const ToolCatalog& catalog, std::span<const double> preference);

json to_json(const RewardBreakdown& reward);
json to_json(const BatchRewards& batch);

// Evaluation vector: counts, outcome, cost in US cents, latency in seconds
// (positive magnitudes).
MetricVector eval_metric_vector(const Trajectory& trajectory, bool outcome);

// k <= n+1: current / max(1, baseline); cost and latency: baseline / max(1, current).
MetricVector eval_normalize(std::span<const double> current, std::span<const double> baseline);
double eval_reward(std::span<const double> current, std::span<const double> baseline,
                   std::span<const double> preference, bool outcome);

struct BaselineEntry {
    std::string benchmark;
    std::string example_id;
    std::string policy_label;
    MetricVector vector;
};

class BaselineStore {
public:
    void put(BaselineEntry entry);
    const BaselineEntry* find(std::string_view benchmark, std::string_view example_id,
                              std::string_view policy_label) const;
    std::size_t size() const { return entries_.size(); }

    std::vector<json> to_jsonl() const;
    static BaselineStore from_jsonl(const std::vector<json>& lines);

private:
    std::map<std::tuple<std::string, std::string, std::string>, BaselineEntry> entries_;
};

struct PreferenceScore {
    double sum = 0.0;
    double mean = 0.0;
    std::size_t examples = 0;
};

struct EvalExample {
    std::string example_id;
    MetricVector current;
    std::vector<double> preference;
    bool outcome = false;
};

// Sum (canonical) and mean of per-example eval rewards against the store.
// Throws PreconditionError when an example has no baseline entry.
PreferenceScore preference_score(std::span<const EvalExample> examples, const BaselineStore& store,
                                 std::string_view benchmark, std::string_view baseline_label);

}  // namespace orchestra
