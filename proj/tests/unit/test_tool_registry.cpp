#include "doctest.h"

#include "helpers.hpp"
#include "orchestra/executors.hpp"
#include "orchestra/model_description.hpp"

using namespace orchestra;
using namespace testing;

TEST_CASE("price_call token pricing")
{
    PricingEntry p{2.0, 8.0, 0.0};
    CHECK(price_call(p, 1000, 500) == doctest::Approx(0.006).epsilon(1e-12));
    CHECK(price_call(p, 0, 0) == 0.0);
}

TEST_CASE("price_call flat pricing ignores tokens")
{
    PricingEntry p{0.0, 0.0, 0.01};
    CHECK(price_call(p, 123456, 789) == 0.01);
}

TEST_CASE("scaled pricing scales cost exactly")
{
    PricingEntry p{1.1, 4.4, 0.0};
    for (std::int64_t in : {0, 17, 1000, 250000})
        for (std::int64_t out : {0, 3, 999, 40000})
            CHECK(price_call(p.scaled(2.0), in, out) == 2.0 * price_call(p, in, out));
    CHECK_THROWS_AS(price_call(p, -1, 0), PreconditionError);
}

TEST_CASE("latency model")
{
    LatencyModel m{2.0, 0.01, JitterPolicy::deterministic, 0.0};
    CHECK(model_latency(m, 100, 1) == doctest::Approx(3.0));
    LatencyModel j{1.0, 0.0, JitterPolicy::seeded_random, 0.5};
    double a = model_latency(j, 0, 9);
    CHECK(a >= 1.0);
    CHECK(a <= 1.5);
    CHECK(model_latency(j, 0, 9) == a);
}

TEST_CASE("register_tool rejects duplicates")
{
    ToolCatalog c = catalog_of(json::array({calculator_tool()}));
    ToolSpec dup = c.at(0);
    CHECK_THROWS_AS(register_tool(c, dup), DuplicateToolError);
    ToolSpec other = dup;
    other.name = "calc2";
    auto bigger = register_tool(c, other);
    CHECK(bigger.size() == 2);
    CHECK(bigger.index_of("calc2") == 1u);
    CHECK(c.size() == 1);
}

TEST_CASE("malformed param schema names the offending params")
{
    ToolSpec spec;
    spec.name = "bad";
    spec.params = {{"", ParamType::string, "", true, {}}, {"mode", ParamType::enumeration, "", true, {}}};
    try {
        validate_tool_spec(spec);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.params().size() == 2);
    }
}

TEST_CASE("execute calculator")
{
    auto c = catalog_of(json::array({calculator_tool()}));
    ExecutionContext ctx;
    auto r = execute(c, {"calculator", {{"expr", "2+3"}}, 0}, ctx);
    CHECK(r.payload == "5");
    CHECK_FALSE(r.is_error);
    CHECK(r.cost == 0.0);
}

TEST_CASE("execute folds executor failures into results")
{
    auto c = catalog_of(json::array({calculator_tool()}));
    ExecutionContext ctx;
    auto r = execute(c, {"calculator", {{"expr", "1/0"}}, 0}, ctx);
    CHECK(r.is_error);
    CHECK(r.error_detail.has_value());
}

TEST_CASE("argument validation")
{
    auto c = catalog_of(json::array({calculator_tool()}));
    ExecutionContext ctx;
    CHECK_THROWS_AS(execute(c, {"calculator", json::object(), 0}, ctx), SchemaError);
    CHECK_THROWS_AS(execute(c, {"calculator", {{"expr", 3}}, 0}, ctx), SchemaError);
    auto obs = execute_as_observation(c, {"calculator", json::object(), 0}, ctx);
    CHECK(obs.is_error);
}

TEST_CASE("routing outside the sampled subset")
{
    auto full = catalog_of(json::array({calculator_tool(), scripted_tool("search", "hit")}));
    std::vector<std::string> keep{"search"};
    auto sub = full.subset(keep);
    ExecutionContext ctx;
    CHECK_THROWS_AS(execute(sub, {"calculator", {{"expr", "1"}}, 0}, ctx), RoutingError);
    std::vector<std::string> unknown{"nope"};
    CHECK_THROWS_AS(full.subset(unknown), RoutingError);
}

TEST_CASE("subset keeps catalog order")
{
    auto full = catalog_of(json::array({scripted_tool("a", "1"), scripted_tool("b", "2"), scripted_tool("c", "3")}));
    std::vector<std::string> keep{"c", "a"};
    CHECK(full.subset(keep).names() == std::vector<std::string>{"a", "c"});
}

TEST_CASE("scripted executor fills placeholders")
{
    auto c = catalog_of(json::array({scripted_tool("echo", "you said {q}")}));
    ExecutionContext ctx;
    CHECK(execute(c, {"echo", {{"q", "hi"}}, 0}, ctx).payload == "you said hi");
}

TEST_CASE("search executor ranks by overlap")
{
    json tool = {{"name", "local_search"},
                 {"parameters", {{{"name", "query"}, {"type", "string"}}}},
                 {"kind", "search"},
                 {"executor",
                  {{"type", "search"},
                   {"top_k", 1},
                   {"corpus", {{{"id", "d1"}, {"text", "apples and pears"}}, {{"id", "d2"}, {"text", "red apples"}}}}}}};
    auto c = catalog_of(json::array({tool}));
    ExecutionContext ctx;
    auto r = execute(c, {"local_search", {{"query", "red apples"}}, 0}, ctx);
    CHECK(r.payload.find("d2") != std::string::npos);
    CHECK(r.payload.find("d1") == std::string::npos);
}

TEST_CASE("tokens, cost and latency are filled from the catalog")
{
    PricingTable pricing{{"m", PricingEntry{1.0, 2.0, 0.0}}};
    LatencyTable latency{{"m", LatencyModel{1.0, 0.5, JitterPolicy::deterministic, 0.0}}};
    json tool = scripted_tool("echo", "one two three four");
    tool["pricing_ref"] = "m";
    tool["latency_ref"] = "m";
    auto c = catalog_of(json::array({tool}), pricing, latency);
    ExecutionContext ctx;
    auto r = execute(c, {"echo", {{"q", "x"}}, 0}, ctx);
    CHECK(r.tokens_out == estimate_tokens("one two three four"));
    CHECK(r.cost == doctest::Approx(price_call(pricing["m"], r.tokens_in, r.tokens_out)));
    CHECK(r.latency == doctest::Approx(1.0 + 0.5 * static_cast<double>(r.tokens_out)));
}

TEST_CASE("catalog json round trip")
{
    auto s = preference_scenario(2, 1, 4, 1);
    auto back = catalog_from_json(catalog_to_json(s.catalog), s.pricing, s.latency);
    REQUIRE(back.size() == s.catalog.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back.at(i).name == s.catalog.at(i).name);
        CHECK(back.at(i).pricing == s.catalog.at(i).pricing);
        CHECK(back.at(i).latency == s.catalog.at(i).latency);
    }
    CHECK(pricing_from_json(pricing_to_json(s.pricing)) == s.pricing);
    CHECK(latency_from_json(latency_to_json(s.latency)) == s.latency);
}

TEST_CASE("unknown pricing ref is a config error")
{
    json tool = scripted_tool("x", "y");
    tool["pricing_ref"] = "missing";
    CHECK_THROWS_AS(catalog_of(json::array({tool})), ConfigError);
}

TEST_CASE("chat request and response shapes")
{
    auto req = chat_request_json("m1", {{"user", "hi"}});
    CHECK(req["model"] == "m1");
    CHECK(req["messages"][0]["content"] == "hi");
    auto resp = parse_chat_response({{"content", "yo"}, {"usage", {{"prompt_tokens", 3}, {"completion_tokens", 4}}}});
    CHECK(resp.content == "yo");
    CHECK(resp.prompt_tokens == 3);
    CHECK(resp.completion_tokens == 4);
}

TEST_CASE("model description reports solved counts")
{
    auto tasks = question_tasks(catalog_of(json::array({calculator_tool()})), "math", 10, 3);
    std::vector<Trajectory> trajs(10);
    std::vector<bool> outcomes(10, false);
    for (int i = 0; i < 10; ++i) {
        trajs[i].task_id = tasks[i].task_id;
        outcomes[i] = i < 7;
    }
    auto text = build_model_description("qwen", tasks, trajs, outcomes);
    CHECK(text.find("7/10") != std::string::npos);
    auto rewritten = build_model_description("qwen", tasks, trajs, outcomes,
                                             [](const std::string& s) { return "R:" + s; });
    CHECK(rewritten.rfind("R:", 0) == 0);
    std::vector<bool> short_outcomes(3, true);
    CHECK_THROWS_AS(build_model_description("qwen", tasks, trajs, short_outcomes), PreconditionError);
}
