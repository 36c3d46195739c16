#include "orchestra/rollout.hpp"

#include <thread>

namespace orchestra {

namespace {

std::string_view trim(std::string_view s)
{
    auto is_space = [](char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

bool strip_tags(std::string_view text, std::string_view open, std::string_view close, std::string_view& inner)
{
    if (text.size() < open.size() + close.size() || text.substr(0, open.size()) != open ||
        text.substr(text.size() - close.size()) != close)
        return false;
    inner = text.substr(open.size(), text.size() - open.size() - close.size());
    return true;
}

}  // namespace

ParsedAction parse_action(std::string_view text)
{
    std::string_view body = trim(text);
    std::string_view inner;
    if (strip_tags(body, "<tool_call>", "</tool_call>", inner)) {
        if (inner.find("<tool_call>") != std::string_view::npos)
            return ParsedViolation{std::string(text), "more than one tool call"};
        json parsed = json::parse(inner, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object())
            return ParsedViolation{std::string(text), "tool call is not a JSON object"};
        auto name = parsed.find("name");
        if (name == parsed.end() || !name->is_string())
            return ParsedViolation{std::string(text), "tool call has no name"};
        json args = parsed.value("arguments", json::object());
        if (!args.is_object())
            return ParsedViolation{std::string(text), "tool call arguments are not an object"};
        return ToolCall{name->get<std::string>(), args, 0};
    }
    if (strip_tags(body, "<answer>", "</answer>", inner)) {
        if (inner.find("<answer>") != std::string_view::npos || inner.find("<tool_call>") != std::string_view::npos)
            return ParsedViolation{std::string(text), "answer mixes several blocks"};
        return ParsedAnswer{std::string(trim(inner))};
    }
    return ParsedViolation{std::string(text), "expected exactly one <tool_call> or <answer> block"};
}

std::string format_tool_call(const ToolCall& call)
{
    return "<tool_call>" + json{{"name", call.tool}, {"arguments", call.arguments}}.dump() + "</tool_call>";
}

std::string format_answer(std::string_view text)
{
    return "<answer>" + std::string(text) + "</answer>";
}

void RolloutConfig::validate() const
{
    if (max_turns < 1)
        throw ConfigError("max_turns must be at least 1");
    if (!(temperature > 0.0))
        throw ConfigError("temperature must be positive");
    if (policy_turn_latency < 0.0)
        throw ConfigError("policy_turn_latency must be non-negative");
    if (workers < 1)
        throw ConfigError("workers must be at least 1");
    if (policy_pricing)
        policy_pricing->validate();
}

std::string system_prompt(const TaskSpec& task)
{
    json tools = json::array();
    for (const auto& spec : task.available_tools.tools()) {
        json params = json::array();
        for (const auto& p : spec.params)
            params.push_back(to_json(p));
        tools.push_back({{"name", spec.name}, {"description", spec.description}, {"parameters", params}});
    }
    return "You solve the user's task by calling tools. Each turn, reason, then emit exactly one "
           "<tool_call>{\"name\": ..., \"arguments\": {...}}</tool_call> or a final <answer>...</answer>.\n"
           "Available tools:\n" +
           tools.dump();
}

std::string user_prompt(const TaskSpec& task)
{
    std::string text = task.instruction;
    if (task.preference && !task.preference->instruction.empty())
        text += "\n" + task.preference->instruction;
    return text;
}

Trajectory run_episode(const Policy& policy, const TaskSpec& task, const ToolCatalog& catalog,
                       const RolloutConfig& cfg, int episode_index)
{
    cfg.validate();
    for (const auto& spec : task.available_tools.tools())
        if (!catalog.contains(spec.name))
            throw PreconditionError("task tool " + spec.name + " is not in the catalog");
    if (task.preference)
        task.preference->validate(catalog.size());

    EpisodeState state = fork_initial_state(task);
    Trajectory traj;
    traj.task_id = task.task_id;
    traj.catalog = catalog.names();
    traj.tool_counts.assign(catalog.size(), 0);
    traj.max_turns = cfg.max_turns;
    traj.rollout_index = episode_index;
    traj.policy = policy.name();
    if (task.preference)
        traj.preference = task.preference->vector;

    std::vector<Message> history{{"system", system_prompt(task)}, {"user", user_prompt(task)}};
    std::vector<Turn> turns;

    ExecutionContext base_ctx;
    base_ctx.seed = cfg.seed;
    base_ctx.task_id = task.task_id;
    base_ctx.instruction = task.instruction;
    base_ctx.gold_answer = task.gold_answer.value_or("");

    for (int k = 0; k < cfg.max_turns; ++k) {
        PolicyInput input{task, catalog, history, turns, k, mix_seed(cfg.seed, static_cast<std::uint64_t>(k)),
                          episode_index};
        PolicyOutput out = policy.act(input);

        if (cfg.policy_pricing) {
            double c = price_call(*cfg.policy_pricing, out.tokens_in, out.tokens_out);
            traj.policy_cost += c;
            traj.total_cost += c;
        }
        traj.policy_latency += cfg.policy_turn_latency;
        traj.total_latency += cfg.policy_turn_latency;

        Turn turn;
        turn.reasoning = out.reasoning;
        ParsedAction parsed = parse_action(out.action_text);

        if (auto* call = std::get_if<ToolCall>(&parsed); call && !catalog.contains(call->tool)) {
            // Not a tool of this catalog at all: nothing to route, so the output is malformed.
            parsed = ParsedViolation{out.action_text, "unknown tool " + call->tool};
        }

        if (auto* call = std::get_if<ToolCall>(&parsed)) {
            call->turn = k;
            ExecutionContext ctx = base_ctx;
            ctx.turn = k;
            ToolResult result;
            try {
                result = apply_call(state, task.available_tools, *call, ctx);
            } catch (const ToolError& e) {
                result.payload = std::string("error: ") + e.what();
                result.is_error = true;
                result.error_detail = e.what();
            }
            std::size_t index = *catalog.index_of(call->tool);
            traj.tool_counts[index] += 1;
            if (task.preference)
                traj.preference_alignment += task.preference->tool_weight(index);
            traj.total_cost += result.cost;
            traj.total_latency += result.latency;
            history.push_back({"assistant", out.reasoning + "\n" + out.action_text});
            history.push_back({cfg.observation_role, result.payload});
            turn.action = *call;
            turn.observation = std::move(result);
            turns.push_back(std::move(turn));
            if (state.terminated) {
                traj.termination = TerminationReason::env_signal;
                break;
            }
            continue;
        }

        if (auto* answer = std::get_if<ParsedAnswer>(&parsed)) {
            turn.final_answer = answer->text;
            turns.push_back(std::move(turn));
            traj.termination = TerminationReason::answer_emitted;
            break;
        }

        turn.format_violation = std::get<ParsedViolation>(parsed).raw;
        turns.push_back(std::move(turn));
        traj.termination = TerminationReason::format_violation;
        break;
    }
    if (traj.termination == TerminationReason::none)
        traj.termination = TerminationReason::max_turns;

    if (!cfg.record_transcript)
        for (auto& t : turns)
            t.reasoning.clear();
    traj.turns = std::move(turns);
    return traj;
}

std::vector<Trajectory> run_group(const Policy& policy, const TaskSpec& task, const ToolCatalog& catalog,
                                  const RolloutConfig& cfg, int group_size)
{
    if (group_size < 2)
        throw PreconditionError("group size must be at least 2");
    cfg.validate();
    std::vector<Trajectory> group(static_cast<std::size_t>(group_size));
    auto run_one = [&](int i) {
        RolloutConfig episode = cfg;
        episode.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(i));
        group[static_cast<std::size_t>(i)] = run_episode(policy, task, catalog, episode, i);
    };

    int workers = std::min(cfg.workers, group_size);
    if (workers <= 1) {
        for (int i = 0; i < group_size; ++i)
            run_one(i);
        return group;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(group_size));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < group_size; i += workers) {
                try {
                    run_one(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return group;
}

}  // namespace orchestra
