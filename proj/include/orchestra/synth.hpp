#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orchestra/env_sim.hpp"
#include "orchestra/preference.hpp"
#include "orchestra/rollout.hpp"

namespace orchestra {

// Data-driven domain description.
//
// tables: [{name, key, prefix, size, fields: [{name, type, enum?, ref?, required?, gen}]}]
//   gen: {"pool": [...]}, {"int": [lo, hi]}, {"real": [lo, hi]}, {"bool": p},
//        {"date": ["YYYY-MM-DD", span_days]}, {"ref": true},
//        {"pattern": "text {pool_name} {#}", "pools": {pool_name: [...]}}  ({#} is the row number)
//   Tables are generated in order; a ref field may only point at an earlier table.
// tools: catalog tool objects; domain functions carry a "db" executor binding.
// intents: [{id, bind, calls, instruction, required_info, complications?}]
//   bind: [{var, table, where?: {field: [values]}, where_gte?: {field: n},
//           where_ref?: {field: var}, ref_of?: "var.field"} | {var, value: gen}]
//   A record binding never reuses a record already bound in the same task.
//   {"frac_of": "var.field", "range": [lo, hi]} draws a fraction of a bound number.
//   calls: [{tool, args: {param: literal | "{var.field}" | "{var}"}}]
//   instruction / required_info placeholders: {var.field}, {var} for values,
//   {var'.field} for the record after the golden calls, {new.field} for the
//   record created by the last create call.
//   complications: [{bind?, calls, instruction, required_info?}] applied in order.
struct DomainTemplate {
    std::string name;
    json tables = json::array();
    json tools = json::array();
    json intents = json::array();
    PricingTable pricing;
    LatencyTable latency;

    std::map<std::string, int> default_sizes() const;
    const json* intent(std::string_view id) const;
};

// Throws ConfigError when a skeleton names an unknown tool, a ref points at a
// later or unknown table, or a placeholder names an unbound variable.
void validate_template(const DomainTemplate& tmpl);

struct Environment {
    std::string domain;
    std::shared_ptr<const DomainDB> db;
    ToolCatalog catalog;
};

// Sizes missing from the map use the template defaults.
Environment generate_environment(const DomainTemplate& tmpl, const std::map<std::string, int>& sizes,
                                 std::uint64_t seed);

struct TaskOptions {
    double keep_tool_probability = 0.7;
};

std::vector<TaskSpec> generate_tasks(const Environment& env, const DomainTemplate& tmpl, int count,
                                     std::uint64_t seed, const TaskOptions& options = {});

struct ComplicationResult {
    TaskSpec task;
    bool complicated = false;  // false: no complication left, task returned unchanged
};

ComplicationResult complicate_task(const TaskSpec& task, const Environment& env, const DomainTemplate& tmpl,
                                   std::uint64_t seed);

enum class DropReason { none, exec_error, pass_at_k, no_action };

std::string_view to_string(DropReason reason);

struct SynthReport {
    int generated = 0;
    int dropped_exec_error = 0;
    int dropped_pass_at_k = 0;
    int dropped_no_action = 0;
    std::vector<std::string> surviving;
    std::map<std::string, DropReason> dropped;
};

json to_json(const SynthReport& report);

struct FilterResult {
    std::vector<TaskSpec> surviving;
    SynthReport report;
};

// Filters: golden calls error; no probe rollout out of k verifies solved;
// an action-free trajectory already verifies solved.
FilterResult filter_tasks(const std::vector<TaskSpec>& tasks, const Policy& probe, int k = 8,
                          std::uint64_t seed = 0);

// Same target table, different record: the next key in sorted order.
// Returns nullopt when the call has no target or the table has one record.
std::optional<ToolCall> mutate_call_target(const TaskSpec& task, std::size_t call_index);

struct PreferencePair {
    std::string pair_id;
    std::string persona;
    std::string instruction;
    std::vector<double> vector;
    std::string rationale;
    std::vector<std::string> preferred;
    std::vector<std::string> avoided;
    std::string split;  // "train" or "eval"
    std::string catalog_ref;

    PreferenceProfile profile() const;
};

json to_json(const PreferencePair& pair);
PreferencePair preference_pair_from_json(const json& value);

// Empty when consistent; otherwise one message per problem.
std::vector<std::string> validate_preference_pair(const PreferencePair& pair, const ToolCatalog& catalog);

// Personas: privacy, budget, latency, quality, brand, avoid. A seeded 20% go to eval.
std::vector<PreferencePair> generate_preference_pairs(const ToolCatalog& catalog, int count, std::uint64_t seed,
                                                      double eval_fraction = 0.2,
                                                      std::string_view catalog_ref = "catalog");

// Every entry scaled by its own factor, log-uniform in [0.25, 4].
PricingTable randomize_pricing(const PricingTable& table, std::uint64_t seed);

// Golden-call tools always kept; others independently with keep_probability.
ToolCatalog sample_tool_subset(const ToolCatalog& catalog, const std::vector<ToolCall>& golden,
                               double keep_probability, std::uint64_t seed);

}  // namespace orchestra
