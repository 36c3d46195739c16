#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orchestra/common.hpp"

namespace orchestra {

struct EpisodeState;

class ToolError : public Error {
public:
    using Error::Error;
};

class DuplicateToolError : public ToolError {
public:
    explicit DuplicateToolError(std::string name);
    const std::string& tool_name() const { return name_; }

private:
    std::string name_;
};

// Argument or parameter-schema validation failure; names every offending param.
class SchemaError : public ToolError {
public:
    SchemaError(std::string tool, std::vector<std::string> params, std::string detail);
    const std::vector<std::string>& params() const { return params_; }

private:
    std::vector<std::string> params_;
};

// The call names a tool that is not available in this catalog.
class RoutingError : public ToolError {
public:
    explicit RoutingError(std::string tool);
};

enum class ParamType { string, number, boolean, enumeration, object };
enum class ToolKind { domain_function, search, code_interpreter, model_endpoint };

std::string_view to_string(ParamType type);
std::string_view to_string(ToolKind kind);
std::optional<ParamType> parse_param_type(std::string_view text);
std::optional<ToolKind> parse_tool_kind(std::string_view text);

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::string;
    std::string description;
    bool required = true;
    std::vector<std::string> enum_values;
};

// Prices are in US dollars; token prices per million tokens.
struct PricingEntry {
    double input_per_m = 0.0;
    double output_per_m = 0.0;
    double flat_per_call = 0.0;

    bool is_flat() const { return flat_per_call > 0.0; }
    PricingEntry scaled(double factor) const;
    void validate() const;

    bool operator==(const PricingEntry&) const = default;
};

double price_call(const PricingEntry& pricing, std::int64_t tokens_in, std::int64_t tokens_out);

enum class JitterPolicy { deterministic, seeded_random };

struct LatencyModel {
    double base_seconds = 0.0;
    double per_output_token_seconds = 0.0;
    JitterPolicy jitter = JitterPolicy::deterministic;
    // Upper bound of the uniform jitter added under seeded_random.
    double jitter_seconds = 0.0;

    void validate() const;
    bool operator==(const LatencyModel&) const = default;
};

double model_latency(const LatencyModel& model, std::int64_t tokens_out, std::uint64_t jitter_seed);

using PricingTable = std::map<std::string, PricingEntry>;
using LatencyTable = std::map<std::string, LatencyModel>;

struct ToolSpec {
    std::string name;
    std::string description;
    std::vector<ParamSpec> params;
    ToolKind kind = ToolKind::domain_function;
    std::string pricing_ref;
    PricingEntry pricing;
    std::string latency_ref;
    LatencyModel latency;
    // Executor binding, e.g. {"type": "db", "op": "read", ...}.
    json executor = json::object();
    // Free-form attributes such as "local", "open_weights", "proprietary", "web".
    std::vector<std::string> tags;

    const ParamSpec* param(std::string_view name) const;
    bool has_tag(std::string_view tag) const;
};

// Throws SchemaError listing malformed params (empty/duplicate names, enums without values).
void validate_tool_spec(const ToolSpec& spec);

struct ToolCall {
    std::string tool;
    json arguments = json::object();
    int turn = 0;

    bool operator==(const ToolCall&) const = default;
};

struct ToolResult {
    std::string payload;
    std::int64_t tokens_in = 0;
    std::int64_t tokens_out = 0;
    double cost = 0.0;
    double latency = 0.0;
    bool is_error = false;
    std::optional<std::string> error_detail;

    bool operator==(const ToolResult&) const = default;
};

// Ordered tool set; position i (0-based) is coordinate i of M and P.
class ToolCatalog {
public:
    ToolCatalog() = default;

    std::size_t size() const { return tools_.size(); }
    bool empty() const { return tools_.empty(); }
    const ToolSpec& at(std::size_t index) const { return tools_.at(index); }
    std::span<const ToolSpec> tools() const { return tools_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    const ToolSpec* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    std::vector<std::string> names() const;

    // Appends at the next index; throws DuplicateToolError or SchemaError.
    void add(ToolSpec spec);

    // Keeps catalog order; unknown names raise RoutingError.
    ToolCatalog subset(std::span<const std::string> names) const;
    ToolCatalog with_pricing(const PricingTable& table) const;

private:
    std::vector<ToolSpec> tools_;
    std::unordered_map<std::string, std::size_t> index_;
};

ToolCatalog register_tool(ToolCatalog catalog, ToolSpec spec);

// Throws SchemaError naming every offending param.
void validate_arguments(const ToolSpec& spec, const json& arguments);

// Whitespace-delimited pieces times a fixed factor, rounded up.
std::int64_t estimate_tokens(std::string_view text, double tokens_per_piece = 1.3);

struct ExecutionContext {
    std::uint64_t seed = 0;
    int turn = 0;
    std::string task_id;
    std::string instruction;
    std::string gold_answer;
    EpisodeState* episode = nullptr;
    double tokens_per_piece = 1.3;
};

struct ExecOutcome {
    std::string payload;
    bool is_error = false;
    std::string error_detail;
    // Provider-reported usage; estimated from text when absent.
    std::optional<std::int64_t> tokens_in;
    std::optional<std::int64_t> tokens_out;
};

class Executor {
public:
    virtual ~Executor() = default;
    virtual ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext& ctx) const = 0;
};

class ExecutorRegistry {
public:
    void add(std::string type, std::shared_ptr<const Executor> executor);
    const Executor* find(std::string_view type) const;

    // calculator, scripted, search, oracle_answer, http_chat and db.
    static const ExecutorRegistry& builtin();

private:
    std::map<std::string, std::shared_ptr<const Executor>, std::less<>> executors_;
};

// Routes, validates and runs the call, then fills token, cost and latency
// accounting. RoutingError and SchemaError propagate; executor failures come
// back as a ToolResult with is_error set.
ToolResult execute(const ToolCatalog& catalog, const ToolCall& call, ExecutionContext& ctx,
                   const ExecutorRegistry& registry = ExecutorRegistry::builtin());

// Same, but routing and schema failures are folded into an error result too.
ToolResult execute_as_observation(const ToolCatalog& catalog, const ToolCall& call, ExecutionContext& ctx,
                                  const ExecutorRegistry& registry = ExecutorRegistry::builtin());

json to_json(const ParamSpec& param);
json to_json(const ToolSpec& spec);
json to_json(const ToolCall& call);
json to_json(const ToolResult& result);
json catalog_to_json(const ToolCatalog& catalog);
json pricing_to_json(const PricingTable& table);
json latency_to_json(const LatencyTable& table);

ToolSpec tool_spec_from_json(const json& value, const PricingTable& pricing, const LatencyTable& latency);
ToolCall tool_call_from_json(const json& value);
ToolResult tool_result_from_json(const json& value);
ToolCatalog catalog_from_json(const json& value, const PricingTable& pricing, const LatencyTable& latency);
PricingTable pricing_from_json(const json& value);
LatencyTable latency_from_json(const json& value);

}  // namespace orchestra
