#include "orchestra/tool_registry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace orchestra {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty())
            out += ", ";
        out += item;
    }
    return out;
}

}  // namespace

DuplicateToolError::DuplicateToolError(std::string name)
    : ToolError("duplicate tool name: " + name), name_(std::move(name))
{
}

SchemaError::SchemaError(std::string tool, std::vector<std::string> params, std::string detail)
    : ToolError("schema error in " + tool + " [" + join(params) + "]: " + detail), params_(std::move(params))
{
}

RoutingError::RoutingError(std::string tool) : ToolError("unknown tool: " + tool) {}

std::string_view to_string(ParamType type)
{
    switch (type) {
    case ParamType::string: return "string";
    case ParamType::number: return "number";
    case ParamType::boolean: return "boolean";
    case ParamType::enumeration: return "enum";
    case ParamType::object: return "object";
    }
    return "string";
}

std::string_view to_string(ToolKind kind)
{
    switch (kind) {
    case ToolKind::domain_function: return "domain_function";
    case ToolKind::search: return "search";
    case ToolKind::code_interpreter: return "code_interpreter";
    case ToolKind::model_endpoint: return "model_endpoint";
    }
    return "domain_function";
}

std::optional<ParamType> parse_param_type(std::string_view text)
{
    if (text == "string") return ParamType::string;
    if (text == "number") return ParamType::number;
    if (text == "boolean") return ParamType::boolean;
    if (text == "enum") return ParamType::enumeration;
    if (text == "object") return ParamType::object;
    return std::nullopt;
}

std::optional<ToolKind> parse_tool_kind(std::string_view text)
{
    if (text == "domain_function") return ToolKind::domain_function;
    if (text == "search") return ToolKind::search;
    if (text == "code_interpreter") return ToolKind::code_interpreter;
    if (text == "model_endpoint") return ToolKind::model_endpoint;
    return std::nullopt;
}

PricingEntry PricingEntry::scaled(double factor) const
{
    return {input_per_m * factor, output_per_m * factor, flat_per_call * factor};
}

void PricingEntry::validate() const
{
    if (!(input_per_m >= 0.0) || !(output_per_m >= 0.0) || !(flat_per_call >= 0.0))
        throw ConfigError("prices must be non-negative");
    if (flat_per_call > 0.0 && (input_per_m > 0.0 || output_per_m > 0.0))
        throw ConfigError("pricing entry mixes flat and per-token modes");
}

double price_call(const PricingEntry& pricing, std::int64_t tokens_in, std::int64_t tokens_out)
{
    if (tokens_in < 0 || tokens_out < 0)
        throw PreconditionError("token counts must be non-negative");
    if (pricing.is_flat())
        return pricing.flat_per_call;
    return static_cast<double>(tokens_in) * pricing.input_per_m / 1e6 +
           static_cast<double>(tokens_out) * pricing.output_per_m / 1e6;
}

void LatencyModel::validate() const
{
    if (!(base_seconds >= 0.0) || !(per_output_token_seconds >= 0.0) || !(jitter_seconds >= 0.0))
        throw ConfigError("latency model values must be non-negative");
}

double model_latency(const LatencyModel& model, std::int64_t tokens_out, std::uint64_t jitter_seed)
{
    double latency = model.base_seconds + model.per_output_token_seconds * static_cast<double>(tokens_out);
    if (model.jitter == JitterPolicy::seeded_random && model.jitter_seconds > 0.0) {
        std::mt19937_64 rng(jitter_seed);
        latency += unit_uniform(rng) * model.jitter_seconds;
    }
    return latency;
}

const ParamSpec* ToolSpec::param(std::string_view name) const
{
    for (const auto& p : params)
        if (p.name == name)
            return &p;
    return nullptr;
}

bool ToolSpec::has_tag(std::string_view tag) const
{
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

void validate_tool_spec(const ToolSpec& spec)
{
    if (spec.name.empty())
        throw SchemaError("<unnamed>", {}, "tool name must be non-empty");
    std::vector<std::string> offending;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        const auto& p = spec.params[i];
        std::string label = p.name.empty() ? "#" + std::to_string(i) : p.name;
        if (p.name.empty() || !seen.insert(p.name).second ||
            (p.type == ParamType::enumeration && p.enum_values.empty()))
            offending.push_back(label);
    }
    if (!offending.empty())
        throw SchemaError(spec.name, offending, "malformed parameter schema");
    spec.pricing.validate();
    spec.latency.validate();
}

std::optional<std::size_t> ToolCatalog::index_of(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const ToolSpec* ToolCatalog::find(std::string_view name) const
{
    auto index = index_of(name);
    return index ? &tools_[*index] : nullptr;
}

std::vector<std::string> ToolCatalog::names() const
{
    std::vector<std::string> out;
    out.reserve(tools_.size());
    for (const auto& t : tools_)
        out.push_back(t.name);
    return out;
}

void ToolCatalog::add(ToolSpec spec)
{
    if (index_.count(spec.name))
        throw DuplicateToolError(spec.name);
    validate_tool_spec(spec);
    index_.emplace(spec.name, tools_.size());
    tools_.push_back(std::move(spec));
}

ToolCatalog ToolCatalog::subset(std::span<const std::string> names) const
{
    std::set<std::string> wanted(names.begin(), names.end());
    for (const auto& name : wanted)
        if (!index_.count(name))
            throw RoutingError(name);
    ToolCatalog out;
    for (const auto& t : tools_)
        if (wanted.count(t.name))
            out.add(t);
    return out;
}

ToolCatalog ToolCatalog::with_pricing(const PricingTable& table) const
{
    ToolCatalog out;
    for (auto t : tools_) {
        if (!t.pricing_ref.empty()) {
            auto it = table.find(t.pricing_ref);
            if (it != table.end())
                t.pricing = it->second;
        }
        out.add(std::move(t));
    }
    return out;
}

ToolCatalog register_tool(ToolCatalog catalog, ToolSpec spec)
{
    catalog.add(std::move(spec));
    return catalog;
}

void validate_arguments(const ToolSpec& spec, const json& arguments)
{
    if (!arguments.is_object())
        throw SchemaError(spec.name, {"<arguments>"}, "arguments must be a JSON object");
    std::vector<std::string> offending;
    std::vector<std::string> reasons;
    for (const auto& p : spec.params) {
        auto it = arguments.find(p.name);
        if (it == arguments.end()) {
            if (p.required) {
                offending.push_back(p.name);
                reasons.push_back(p.name + " is required");
            }
            continue;
        }
        bool ok = true;
        switch (p.type) {
        case ParamType::string: ok = it->is_string(); break;
        case ParamType::number: ok = it->is_number(); break;
        case ParamType::boolean: ok = it->is_boolean(); break;
        case ParamType::object: ok = it->is_object(); break;
        case ParamType::enumeration:
            ok = it->is_string() &&
                 std::find(p.enum_values.begin(), p.enum_values.end(), it->get<std::string>()) != p.enum_values.end();
            break;
        }
        if (!ok) {
            offending.push_back(p.name);
            reasons.push_back(p.name + " expects " + std::string(to_string(p.type)));
        }
    }
    for (const auto& [key, _] : arguments.items()) {
        if (!spec.param(key)) {
            offending.push_back(key);
            reasons.push_back(key + " is not a declared parameter");
        }
    }
    if (!offending.empty())
        throw SchemaError(spec.name, offending, join(reasons));
}

std::int64_t estimate_tokens(std::string_view text, double tokens_per_piece)
{
    std::int64_t pieces = 0;
    bool in_piece = false;
    for (unsigned char c : text) {
        bool space = std::isspace(c) != 0;
        if (!space && !in_piece)
            ++pieces;
        in_piece = !space;
    }
    return static_cast<std::int64_t>(std::ceil(static_cast<double>(pieces) * tokens_per_piece - 1e-9));
}

void ExecutorRegistry::add(std::string type, std::shared_ptr<const Executor> executor)
{
    executors_[std::move(type)] = std::move(executor);
}

const Executor* ExecutorRegistry::find(std::string_view type) const
{
    auto it = executors_.find(type);
    return it == executors_.end() ? nullptr : it->second.get();
}

ToolResult execute(const ToolCatalog& catalog, const ToolCall& call, ExecutionContext& ctx,
                   const ExecutorRegistry& registry)
{
    const ToolSpec* spec = catalog.find(call.tool);
    if (!spec)
        throw RoutingError(call.tool);
    validate_arguments(*spec, call.arguments);

    ExecOutcome outcome;
    std::string type = spec->executor.value("type", "");
    const Executor* executor = registry.find(type);
    if (!executor) {
        outcome.is_error = true;
        outcome.error_detail = "no executor bound for type '" + type + "'";
    } else {
        try {
            ctx.turn = call.turn;
            outcome = executor->run(*spec, call, ctx);
        } catch (const std::exception& e) {
            outcome = {};
            outcome.is_error = true;
            outcome.error_detail = e.what();
        }
    }

    ToolResult result;
    result.payload = outcome.is_error && outcome.payload.empty() ? "error: " + outcome.error_detail : outcome.payload;
    result.tokens_in = outcome.tokens_in.value_or(estimate_tokens(call.arguments.dump(), ctx.tokens_per_piece));
    result.tokens_out = outcome.tokens_out.value_or(estimate_tokens(result.payload, ctx.tokens_per_piece));
    result.cost = price_call(spec->pricing, result.tokens_in, result.tokens_out);
    std::uint64_t jitter_seed =
        mix_seed(mix_seed(mix_seed(ctx.seed, call.tool), call.arguments.dump()), static_cast<std::uint64_t>(call.turn));
    result.latency = model_latency(spec->latency, result.tokens_out, jitter_seed);
    result.is_error = outcome.is_error;
    if (outcome.is_error)
        result.error_detail = outcome.error_detail;
    return result;
}

ToolResult execute_as_observation(const ToolCatalog& catalog, const ToolCall& call, ExecutionContext& ctx,
                                  const ExecutorRegistry& registry)
{
    try {
        return execute(catalog, call, ctx, registry);
    } catch (const ToolError& e) {
        ToolResult result;
        result.payload = std::string("error: ") + e.what();
        result.tokens_in = estimate_tokens(call.arguments.dump(), ctx.tokens_per_piece);
        result.tokens_out = estimate_tokens(result.payload, ctx.tokens_per_piece);
        result.is_error = true;
        result.error_detail = e.what();
        return result;
    }
}

json to_json(const ParamSpec& param)
{
    json out = {{"name", param.name},
                {"type", to_string(param.type)},
                {"description", param.description},
                {"required", param.required}};
    if (!param.enum_values.empty())
        out["enum"] = param.enum_values;
    return out;
}

json to_json(const ToolSpec& spec)
{
    json params = json::array();
    for (const auto& p : spec.params)
        params.push_back(to_json(p));
    json out = {{"name", spec.name},
                {"description", spec.description},
                {"parameters", params},
                {"kind", to_string(spec.kind)},
                {"pricing_ref", spec.pricing_ref},
                {"latency_ref", spec.latency_ref}};
    if (!spec.executor.empty())
        out["executor"] = spec.executor;
    if (!spec.tags.empty())
        out["tags"] = spec.tags;
    return out;
}

json to_json(const ToolCall& call)
{
    return {{"tool", call.tool}, {"arguments", call.arguments}, {"turn", call.turn}};
}

json to_json(const ToolResult& result)
{
    json out = {{"payload", result.payload},
                {"tokens_in", result.tokens_in},
                {"tokens_out", result.tokens_out},
                {"cost", result.cost},
                {"latency", result.latency},
                {"is_error", result.is_error}};
    out["error_detail"] = result.error_detail ? json(*result.error_detail) : json(nullptr);
    return out;
}

json catalog_to_json(const ToolCatalog& catalog)
{
    json out = json::array();
    for (const auto& t : catalog.tools())
        out.push_back(to_json(t));
    return out;
}

json pricing_to_json(const PricingTable& table)
{
    json out = json::object();
    for (const auto& [ref, p] : table)
        out[ref] = {{"input_per_m", p.input_per_m}, {"output_per_m", p.output_per_m}, {"flat", p.flat_per_call}};
    return out;
}

json latency_to_json(const LatencyTable& table)
{
    json out = json::object();
    for (const auto& [ref, m] : table)
        out[ref] = {{"base", m.base_seconds},
                    {"per_output_token", m.per_output_token_seconds},
                    {"policy", m.jitter == JitterPolicy::deterministic ? "deterministic" : "seeded_random"},
                    {"jitter", m.jitter_seconds}};
    return out;
}

ToolSpec tool_spec_from_json(const json& value, const PricingTable& pricing, const LatencyTable& latency)
{
    try {
        ToolSpec spec;
        spec.name = value.at("name").get<std::string>();
        spec.description = value.value("description", "");
        std::vector<std::string> offending;
        for (const auto& p : value.value("parameters", json::array())) {
            ParamSpec param;
            param.name = p.value("name", "");
            auto type = parse_param_type(p.value("type", ""));
            if (!type) {
                offending.push_back(param.name.empty() ? "<unnamed>" : param.name);
                continue;
            }
            param.type = *type;
            param.description = p.value("description", "");
            param.required = p.value("required", true);
            param.enum_values = p.value("enum", std::vector<std::string>{});
            spec.params.push_back(std::move(param));
        }
        if (!offending.empty())
            throw SchemaError(spec.name, offending, "missing or unknown parameter type");
        auto kind = parse_tool_kind(value.value("kind", "domain_function"));
        if (!kind)
            throw ConfigError("tool " + spec.name + ": unknown kind " + value.value("kind", ""));
        spec.kind = *kind;
        spec.pricing_ref = value.value("pricing_ref", "");
        if (!spec.pricing_ref.empty()) {
            auto it = pricing.find(spec.pricing_ref);
            if (it == pricing.end())
                throw ConfigError("tool " + spec.name + ": unknown pricing_ref " + spec.pricing_ref);
            spec.pricing = it->second;
        }
        spec.latency_ref = value.value("latency_ref", "");
        if (!spec.latency_ref.empty()) {
            auto it = latency.find(spec.latency_ref);
            if (it == latency.end())
                throw ConfigError("tool " + spec.name + ": unknown latency_ref " + spec.latency_ref);
            spec.latency = it->second;
        }
        spec.executor = value.value("executor", json::object());
        spec.tags = value.value("tags", std::vector<std::string>{});
        return spec;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed tool object: ") + e.what());
    }
}

ToolCall tool_call_from_json(const json& value)
{
    try {
        ToolCall call;
        call.tool = value.at("tool").get<std::string>();
        call.arguments = value.value("arguments", json::object());
        call.turn = value.value("turn", 0);
        return call;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed tool call: ") + e.what());
    }
}

ToolResult tool_result_from_json(const json& value)
{
    try {
        ToolResult r;
        r.payload = value.at("payload").get<std::string>();
        r.tokens_in = value.value("tokens_in", std::int64_t{0});
        r.tokens_out = value.value("tokens_out", std::int64_t{0});
        r.cost = value.value("cost", 0.0);
        r.latency = value.value("latency", 0.0);
        r.is_error = value.value("is_error", false);
        if (value.contains("error_detail") && value["error_detail"].is_string())
            r.error_detail = value["error_detail"].get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed tool result: ") + e.what());
    }
}

ToolCatalog catalog_from_json(const json& value, const PricingTable& pricing, const LatencyTable& latency)
{
    if (!value.is_array())
        throw ConfigError("tool catalog must be a JSON array");
    ToolCatalog catalog;
    for (const auto& item : value)
        catalog.add(tool_spec_from_json(item, pricing, latency));
    return catalog;
}

PricingTable pricing_from_json(const json& value)
{
    if (!value.is_object())
        throw ConfigError("pricing config must be a JSON object");
    PricingTable table;
    for (const auto& [ref, entry] : value.items()) {
        PricingEntry p;
        p.input_per_m = entry.value("input_per_m", 0.0);
        p.output_per_m = entry.value("output_per_m", 0.0);
        p.flat_per_call = entry.value("flat", 0.0);
        p.validate();
        table.emplace(ref, p);
    }
    return table;
}

LatencyTable latency_from_json(const json& value)
{
    if (!value.is_object())
        throw ConfigError("latency config must be a JSON object");
    LatencyTable table;
    for (const auto& [ref, entry] : value.items()) {
        LatencyModel m;
        m.base_seconds = entry.value("base", 0.0);
        m.per_output_token_seconds = entry.value("per_output_token", 0.0);
        std::string policy = entry.value("policy", "deterministic");
        if (policy == "deterministic")
            m.jitter = JitterPolicy::deterministic;
        else if (policy == "seeded_random")
            m.jitter = JitterPolicy::seeded_random;
        else
            throw ConfigError("latency " + ref + ": unknown policy " + policy);
        m.jitter_seconds = entry.value("jitter", 0.0);
        m.validate();
        table.emplace(ref, m);
    }
    return table;
}

}  // namespace orchestra
