#include "orchestra/scenarios.hpp"

namespace orchestra {

namespace {

json answer_tool(const std::string& name, const std::string& description, const std::string& kind,
                 double accuracy, std::int64_t tokens_in, std::int64_t tokens_out, std::vector<std::string> tags)
{
    json t = {{"name", name},
              {"description", description},
              {"parameters", {{{"name", "prompt"}, {"type", "string"}, {"description", "question to answer"}}}},
              {"kind", kind},
              {"pricing_ref", name},
              {"latency_ref", name},
              {"executor",
               {{"type", "oracle_answer"}, {"accuracy", accuracy}, {"tokens_in", tokens_in}, {"tokens_out", tokens_out}}}};
    if (!tags.empty())
        t["tags"] = tags;
    return t;
}

PreferenceProfile fixed_profile(const std::vector<double>& vector, std::size_t catalog_size)
{
    PreferenceProfile p;
    p.id = "fixed";
    p.vector = vector;
    p.catalog_ref = "bandit";
    p.validate(catalog_size);
    return p;
}

}  // namespace

json bandit_tools(double cheap_accuracy)
{
    if (!(cheap_accuracy >= 0.0 && cheap_accuracy <= 1.0))
        throw ConfigError("cheap accuracy must lie in [0, 1]");
    return json::array({answer_tool("cheap_model", "Small fast model.", "model_endpoint", cheap_accuracy, 2000, 400, {}),
                        answer_tool("expensive_model", "Large accurate model.", "model_endpoint", 1.0, 2000, 400, {})});
}

PricingTable bandit_pricing()
{
    return {{"cheap_model", PricingEntry{0.1, 0.4, 0.0}}, {"expensive_model", PricingEntry{5.0, 20.0, 0.0}}};
}

LatencyTable bandit_latency()
{
    return {{"cheap_model", LatencyModel{0.5, 0.002, JitterPolicy::deterministic, 0.0}},
            {"expensive_model", LatencyModel{2.0, 0.01, JitterPolicy::deterministic, 0.0}}};
}

std::vector<TaskSpec> question_tasks(const ToolCatalog& catalog, const std::string& domain, int count,
                                     std::uint64_t seed)
{
    if (count < 0)
        throw PreconditionError("task count must be non-negative");
    static const std::vector<std::string> colours{"amber", "cobalt", "crimson", "jade", "ivory", "slate", "ochre"};
    static const std::vector<std::string> animals{"falcon", "otter", "lynx", "heron", "bison", "gecko", "marten"};
    static const std::vector<std::string> topics{"the capital of a fictional island", "the codename of a project",
                                                 "the mascot of a club", "the call sign of a ship"};
    std::vector<TaskSpec> tasks;
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(mix_seed(mix_seed(seed, domain), static_cast<std::uint64_t>(i)));
        TaskSpec t;
        std::string number = std::to_string(1000 + i).substr(1);
        t.task_id = domain + "-" + std::to_string(seed) + "-" + number;
        t.domain = domain;
        t.gold_answer = colours[uniform_index(rng, colours.size())] + " " + animals[uniform_index(rng, animals.size())];
        t.instruction = "Question " + number + ": what is " + topics[uniform_index(rng, topics.size())] +
                        " in record " + number + "? Reply with two words.";
        t.available_tools = catalog;
        t.intent_id = "question";
        tasks.push_back(std::move(t));
    }
    return tasks;
}

Scenario bandit_scenario(const std::vector<double>& preference, double cheap_accuracy, int task_count,
                         std::uint64_t seed)
{
    Scenario s;
    s.name = "bandit";
    s.pricing = bandit_pricing();
    s.latency = bandit_latency();
    s.catalog = catalog_from_json(bandit_tools(cheap_accuracy), s.pricing, s.latency);
    auto profile = fixed_profile(preference, s.catalog.size());
    s.tasks = question_tasks(s.catalog, "bandit", task_count, seed);
    for (auto& t : s.tasks) {
        t.preference = profile;
        t.preference_ref = profile.id;
    }
    return s;
}

json preference_tools()
{
    return json::array({
        answer_tool("web_search", "Search the public web.", "search", 0.8, 300, 1500, {"web"}),
        answer_tool("local_search", "Search the local document index.", "search", 0.7, 300, 1500, {"local"}),
        answer_tool("qwen3_235b", "Self-hostable mixture-of-experts model.", "model_endpoint", 0.85, 20000, 2000,
                    {"open_weights"}),
        answer_tool("llama_3_3_70b", "Self-hostable dense model.", "model_endpoint", 0.75, 20000, 2000,
                    {"open_weights"}),
        answer_tool("o3_mini", "Hosted reasoning model, small.", "model_endpoint", 0.85, 20000, 2000,
                    {"proprietary"}),
        answer_tool("o3", "Hosted reasoning model, frontier.", "model_endpoint", 0.97, 20000, 2000,
                    {"proprietary", "frontier"}),
    });
}

PricingTable preference_pricing()
{
    return {{"web_search", PricingEntry{0.0, 0.0, 0.01}},   {"local_search", PricingEntry{0.0, 0.0, 0.001}},
            {"qwen3_235b", PricingEntry{0.2, 0.6, 0.0}},   {"llama_3_3_70b", PricingEntry{0.88, 0.88, 0.0}},
            {"o3_mini", PricingEntry{1.1, 4.4, 0.0}},      {"o3", PricingEntry{2.0, 8.0, 0.0}}};
}

LatencyTable preference_latency()
{
    auto fixed = [](double base, double per_token) {
        return LatencyModel{base, per_token, JitterPolicy::deterministic, 0.0};
    };
    return {{"web_search", fixed(1.0, 0.0)},    {"local_search", fixed(0.3, 0.0)},
            {"qwen3_235b", fixed(2.0, 0.001)},  {"llama_3_3_70b", fixed(1.5, 0.0005)},
            {"o3_mini", fixed(3.0, 0.002)},     {"o3", fixed(5.0, 0.004)}};
}

Scenario preference_scenario(int train_tasks, int eval_tasks, int pair_count, std::uint64_t seed)
{
    Scenario s;
    s.name = "preference_qa";
    s.pricing = preference_pricing();
    s.latency = preference_latency();
    s.catalog = catalog_from_json(preference_tools(), s.pricing, s.latency);
    s.pairs = generate_preference_pairs(s.catalog, pair_count, seed, 0.2, "preference_qa");
    std::vector<const PreferencePair*> train, eval;
    for (const auto& p : s.pairs)
        (p.split == "eval" ? eval : train).push_back(&p);
    if (train.empty() || eval.empty())
        throw PreconditionError("preference scenario needs pairs in both splits; raise pair_count");

    auto attach = [](std::vector<TaskSpec>& tasks, const std::vector<const PreferencePair*>& pool) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto& pair = *pool[i % pool.size()];
            tasks[i].preference = pair.profile();
            tasks[i].preference_ref = pair.pair_id;
        }
    };
    // Same domain for both splits so the policy's domain feature carries over.
    s.tasks = question_tasks(s.catalog, s.name, train_tasks, seed);
    attach(s.tasks, train);
    s.eval_tasks = question_tasks(s.catalog, s.name, eval_tasks, mix_seed(seed, "eval"));
    for (auto& t : s.eval_tasks)
        t.task_id = "eval-" + t.task_id;
    attach(s.eval_tasks, eval);
    return s;
}

}  // namespace orchestra
