#pragma once

#include <string>
#include <vector>

#include "orchestra/synth.hpp"

namespace orchestra {

// Answer-keyed toy worlds where every tool is a simulated answering model
// (oracle_answer executor). Catalogs are built through pricing/latency refs
// so bundles round-trip.
struct Scenario {
    std::string name;
    ToolCatalog catalog;
    PricingTable pricing;
    LatencyTable latency;
    std::vector<TaskSpec> tasks;
    std::vector<TaskSpec> eval_tasks;
    std::vector<PreferencePair> pairs;
};

// cheap_model (accuracy cheap_accuracy) and expensive_model (accuracy 1.0),
// the latter 50x the price and 4x the base latency.
json bandit_tools(double cheap_accuracy);
PricingTable bandit_pricing();
LatencyTable bandit_latency();

// Every task carries `preference` (catalog size 2, so 5 entries).
Scenario bandit_scenario(const std::vector<double>& preference, double cheap_accuracy, int task_count,
                         std::uint64_t seed);

// web_search, local_search, qwen3_235b, llama_3_3_70b, o3_mini, o3.
json preference_tools();
PricingTable preference_pricing();
LatencyTable preference_latency();

// Questions paired with generated preference pairs: train tasks use the
// train split, eval tasks the eval split.
Scenario preference_scenario(int train_tasks, int eval_tasks, int pair_count, std::uint64_t seed);

// Plain answer-keyed questions over a catalog, no preference attached.
std::vector<TaskSpec> question_tasks(const ToolCatalog& catalog, const std::string& domain, int count,
                                     std::uint64_t seed);

}  // namespace orchestra
