#include "orchestra/policies.hpp"

namespace orchestra {

namespace {

std::string last_observation(const PolicyInput& input)
{
    for (auto it = input.turns.rbegin(); it != input.turns.rend(); ++it)
        if (it->observation && !it->observation->is_error)
            return it->observation->payload;
    return {};
}

std::string all_observations(const PolicyInput& input)
{
    std::string text;
    for (const auto& t : input.turns) {
        if (!t.observation || t.observation->is_error)
            continue;
        if (!text.empty())
            text += "\n";
        text += t.observation->payload;
    }
    return text;
}

}  // namespace

json default_arguments(const ToolSpec& spec, const TaskSpec& task)
{
    json args = json::object();
    for (const auto& p : spec.params) {
        if (!p.required)
            continue;
        switch (p.type) {
        case ParamType::string: args[p.name] = task.instruction; break;
        case ParamType::number: args[p.name] = 1; break;
        case ParamType::boolean: args[p.name] = false; break;
        case ParamType::enumeration: args[p.name] = p.enum_values.empty() ? "" : p.enum_values.front(); break;
        case ParamType::object: args[p.name] = json::object(); break;
        }
    }
    return args;
}

PolicyOutput GoldenReplayPolicy::act(const PolicyInput& input) const
{
    const auto& golden = input.task.golden_calls;
    auto k = static_cast<std::size_t>(input.turn);
    if (k < golden.size())
        return {"replaying golden call " + std::to_string(k + 1), format_tool_call(golden[k]), 0, 0};
    std::string answer = input.task.gold_answer.value_or(input.task.required_info);
    return {"all golden calls issued", format_answer(answer), 0, 0};
}

PolicyOutput NeverActPolicy::act(const PolicyInput& input) const
{
    return {"answering without tools", format_answer(input.task.instruction), 0, 0};
}

PolicyOutput NeverAnswerPolicy::act(const PolicyInput& input) const
{
    const auto& tools = input.task.available_tools;
    if (tools.empty())
        return {"no tools", format_tool_call({"missing_tool", json::object(), input.turn}), 0, 0};
    const auto& spec = tools.at(static_cast<std::size_t>(input.turn) % tools.size());
    return {"keep calling", format_tool_call({spec.name, default_arguments(spec, input.task), input.turn}), 0, 0};
}

std::vector<ToolCall> ProbePolicy::plan(const TaskSpec& task, int episode_index)
{
    std::vector<ToolCall> calls = task.golden_calls;
    if (episode_index <= 0 || calls.empty())
        return calls;
    auto j = static_cast<std::size_t>(episode_index - 1) % calls.size();
    if (episode_index % 2 == 1)
        calls.erase(calls.begin() + static_cast<std::ptrdiff_t>(j));
    else
        calls.insert(calls.begin() + static_cast<std::ptrdiff_t>(j), calls[j]);
    return calls;
}

PolicyOutput ProbePolicy::act(const PolicyInput& input) const
{
    auto calls = plan(input.task, input.episode_index);
    auto k = static_cast<std::size_t>(input.turn);
    if (k < calls.size())
        return {"probe step " + std::to_string(k + 1), format_tool_call(calls[k]), 0, 0};
    std::string answer = input.task.answer_keyed() ? last_observation(input) : all_observations(input);
    return {"reporting what the tools returned", format_answer(answer), 0, 0};
}

ScriptedPolicy::ScriptedPolicy(std::vector<std::string> actions, std::string label)
    : actions_(std::move(actions)), label_(std::move(label))
{
}

PolicyOutput ScriptedPolicy::act(const PolicyInput& input) const
{
    auto k = static_cast<std::size_t>(input.turn);
    if (k < actions_.size())
        return {"scripted step " + std::to_string(k + 1), actions_[k], 0, 0};
    return {"script finished", format_answer("done"), 0, 0};
}

PolicyOutput RandomPolicy::act(const PolicyInput& input) const
{
    std::mt19937_64 rng(input.seed);
    const auto& tools = input.task.available_tools;
    if (tools.empty() || unit_uniform(rng) < answer_probability_)
        return {"random answer", format_answer(last_observation(input)), 0, 0};
    const auto& spec = tools.at(uniform_index(rng, tools.size()));
    return {"random tool", format_tool_call({spec.name, default_arguments(spec, input.task), input.turn}), 0, 0};
}

}  // namespace orchestra
