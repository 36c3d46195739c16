#include "doctest.h"

#include <map>

#include "helpers.hpp"
#include "orchestra/bundle.hpp"
#include "orchestra/report.hpp"

using namespace orchestra;
using namespace testing;

namespace {

Trajectory logged(const std::string& task, std::vector<std::string> names, std::vector<std::int64_t> counts,
                  double cost, bool solved, int max_turns)
{
    Trajectory t;
    t.task_id = task;
    t.catalog = std::move(names);
    t.tool_counts = std::move(counts);
    t.total_cost = cost;
    t.outcome = solved;
    t.max_turns = max_turns;
    return t;
}

}  // namespace

TEST_CASE("bundle round trip")
{
    const auto& w = travel_world();
    Bundle b;
    b.domain = "travel";
    b.db = w.env.db;
    b.catalog = w.env.catalog;
    b.pricing = domain_pricing();
    b.latency = domain_latency();
    b.tasks = w.tasks;
    auto dir = scratch_dir("bundle");
    write_bundle(dir, b);
    for (const auto& f : bundle_files(dir))
        CHECK(std::filesystem::exists(f));
    auto back = read_bundle(dir);
    CHECK(back.domain == "travel");
    CHECK(entries_equal(*back.db, *b.db));
    CHECK(back.catalog.names() == b.catalog.names());
    REQUIRE(back.tasks.size() == b.tasks.size());
    for (std::size_t i = 0; i < b.tasks.size(); ++i) {
        CHECK(task_to_json(back.tasks[i]) == task_to_json(b.tasks[i]));
        CHECK(verify(back.tasks[i], run_episode(GoldenReplayPolicy{}, back.tasks[i], back.catalog, {})).solved);
    }
}

TEST_CASE("bundle resolves preference refs and accepts a pricing override")
{
    auto s = preference_scenario(4, 2, 6, 3);
    Bundle b;
    b.domain = s.name;
    b.catalog = s.catalog;
    b.pricing = s.pricing;
    b.latency = s.latency;
    b.tasks = s.tasks;
    for (auto& t : b.tasks)
        t.preference.reset();
    b.preferences = s.pairs;
    auto dir = scratch_dir("bundle_pref");
    write_bundle(dir, b);
    auto back = read_bundle(dir);
    for (std::size_t i = 0; i < back.tasks.size(); ++i) {
        REQUIRE(back.tasks[i].preference.has_value());
        CHECK(back.tasks[i].preference->vector == s.tasks[i].preference->vector);
    }
    auto doubled = s.pricing;
    for (auto& [_, p] : doubled)
        p = p.scaled(2.0);
    auto priced = read_bundle(dir, doubled);
    CHECK(priced.catalog.at(0).pricing == s.pricing.at("web_search").scaled(2.0));
}

TEST_CASE("broken bundles are config errors")
{
    CHECK_THROWS_AS(read_bundle("/nonexistent/bundle"), ConfigError);
    const auto& w = travel_world();
    Bundle b;
    b.db = w.env.db;
    b.catalog = w.env.catalog;
    b.pricing = domain_pricing();
    b.latency = domain_latency();
    b.tasks = {w.tasks.front()};
    auto dir = scratch_dir("bundle_broken");
    write_bundle(dir, b);
    write_text_file(dir / "tasks.jsonl", "{\"task_id\": \"x\", \"instruction\": \"i\", \"available_tools\": [\"zzz\"]}\n");
    CHECK_THROWS_AS(read_bundle(dir), ConfigError);
    write_text_file(dir / "tasks.jsonl", "not json\n");
    CHECK_THROWS_AS(read_bundle(dir), ConfigError);
    std::filesystem::remove(dir / "tools.json");
    CHECK_THROWS_AS(read_bundle(dir), ConfigError);
}

TEST_CASE("tool usage: one web_search call per task")
{
    TrajectoryLog log{"run", {}};
    for (int i = 0; i < 5; ++i)
        log.trajectories.push_back(logged("t" + std::to_string(i), {"web_search", "o3"}, {1, 0}, 0.01, true, 50));
    std::vector<TrajectoryLog> logs{log};
    auto rows = tool_usage(logs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].tool == "web_search");
    CHECK(rows[0].mean_calls == 1.0);
    CHECK(rows[1].mean_calls == 0.0);
    CHECK(tool_usage_csv(rows) == "tool,calls,mean_calls_per_task\nweb_search,5,1\no3,0,0\n");
    std::vector<TrajectoryLog> none;
    CHECK_THROWS_AS(tool_usage(none), PreconditionError);
}

TEST_CASE("tool usage over mixed logs matches a hand tally")
{
    std::mt19937_64 rng(3);
    std::vector<std::string> names{"a", "b", "c"};
    std::vector<TrajectoryLog> logs(3);
    std::map<std::string, std::int64_t> tally;
    std::size_t n = 0;
    for (auto& log : logs) {
        for (int i = 0; i < 7; ++i) {
            std::vector<std::int64_t> counts(3);
            for (std::size_t k = 0; k < 3; ++k) {
                counts[k] = static_cast<std::int64_t>(uniform_index(rng, 4));
                tally[names[k]] += counts[k];
            }
            log.trajectories.push_back(logged("t", names, counts, 0, false, 50));
            ++n;
        }
    }
    for (const auto& row : tool_usage(logs)) {
        CHECK(row.calls == tally[row.tool]);
        CHECK(row.mean_calls == doctest::Approx(static_cast<double>(tally[row.tool]) / static_cast<double>(n)));
    }
}

TEST_CASE("cost curve: monotone budgets and solve rates per turn cap")
{
    std::mt19937_64 rng(9);
    std::vector<TrajectoryLog> logs;
    for (int cap : {50, 10, 20}) {
        TrajectoryLog log{"cap" + std::to_string(cap), {}};
        for (int i = 0; i < 20; ++i)
            log.trajectories.push_back(
                logged("t", {"a"}, {1}, 0.001 * cap * unit_uniform(rng), unit_uniform(rng) < 0.6, cap));
        logs.push_back(log);
    }
    auto points = cost_curve(logs);
    std::vector<int> caps_seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (caps_seen.empty() || caps_seen.back() != points[i].max_turns)
            caps_seen.push_back(points[i].max_turns);
        if (i > 0 && points[i].label == points[i - 1].label) {
            CHECK(points[i].budget_cents > points[i - 1].budget_cents);
            CHECK(points[i].solve_rate >= points[i - 1].solve_rate);
        }
    }
    CHECK(caps_seen == std::vector<int>{10, 20, 50});
    // last point of each log is its overall solve rate
    for (const auto& log : logs) {
        double solved = 0;
        for (const auto& t : log.trajectories)
            solved += *t.outcome;
        double last = 0;
        for (const auto& p : points)
            if (p.label == log.label)
                last = p.solve_rate;
        CHECK(last == doctest::Approx(solved / 20));
    }
    CHECK(cost_curve_csv(points).rfind("label,max_turns,budget_cents,solve_rate\n", 0) == 0);
}

TEST_CASE("preference scores from logs against a baseline log")
{
    TrajectoryLog base{"base", {}}, cur{"cur", {}};
    for (int i = 0; i < 3; ++i) {
        auto b = logged("t" + std::to_string(i), {"a", "b"}, {2, 0}, 0.05, true, 50);
        b.preference = std::vector<double>{0, 1, 1, 1, 0};
        base.trajectories.push_back(b);
        auto c = b;
        c.tool_counts = {0, 2};
        c.total_cost = 0.01;
        cur.trajectories.push_back(c);
    }
    auto store = baseline_from_log(base, "bench", "baseline");
    CHECK(store.size() == 3);
    auto self = preference_score(eval_examples(base), store, "bench", "baseline");
    CHECK(self.sum == doctest::Approx(3 * 2.0));
    // b count 2 vs 0 -> 2; cost 5 cents vs 1 -> 5
    auto better = preference_score(eval_examples(cur), store, "bench", "baseline");
    CHECK(better.sum == doctest::Approx(3 * (2 + 1 + 5)));
    CHECK(preference_scores_csv({{"cur", better}}) == "label,examples,score_sum,score_mean\ncur,3,24,8\n");

    auto nopref = base;
    nopref.trajectories[0].preference.reset();
    CHECK_THROWS_AS(eval_examples(nopref), PreconditionError);
}

TEST_CASE("trajectory logs read back with the directory as label")
{
    auto dir = scratch_dir("log") / "run_a";
    std::filesystem::create_directories(dir);
    auto t = logged("t1", {"a"}, {3}, 0.2, true, 10);
    write_jsonl_file(dir / "trajectories.jsonl", {to_json(t)});
    auto log = read_trajectory_log(dir / "trajectories.jsonl");
    CHECK(log.label == "run_a");
    REQUIRE(log.trajectories.size() == 1);
    CHECK(log.trajectories[0] == t);
}
