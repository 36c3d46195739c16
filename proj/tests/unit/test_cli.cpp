#include "doctest.h"

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "helpers.hpp"

using namespace orchestra;
using namespace testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(ORCHESTRA_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const fs::path& travel_bundle()
{
    static const fs::path dir = [] {
        auto d = scratch_dir("cli_travel");
        auto r = cli("synth --kind toolscale --domain travel --tasks 12 --seed 4 --out " + d.string());
        REQUIRE(r.code == 0);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("cli: golden rollout solves every task, never-act none")
{
    auto out = scratch_dir("cli_golden");
    auto r = cli("rollout --bundle " + travel_bundle().string() + " --policy golden --group-size 1 --json --out " +
                 out.string());
    REQUIRE(r.code == 0);
    auto s = json::parse(r.out);
    CHECK(s["solve_rate"] == 1.0);
    CHECK(fs::exists(out / "trajectories.jsonl"));
    CHECK(fs::exists(out / "rewards.json"));
    CHECK(fs::exists(out / "manifest.json"));

    auto lazy = cli("rollout --bundle " + travel_bundle().string() + " --policy never_act --group-size 1 --json --out " +
                    out.string());
    REQUIRE(lazy.code == 0);
    CHECK(json::parse(lazy.out)["solve_rate"] == 0.0);
}

TEST_CASE("cli: a group of 8 logs 8 lines per task")
{
    auto out = scratch_dir("cli_group");
    auto r = cli("rollout --bundle " + travel_bundle().string() + " --policy random --json --out " + out.string());
    REQUIRE(r.code == 0);
    auto lines = read_jsonl_file(out / "trajectories.jsonl");
    std::map<std::string, int> per_task;
    for (const auto& l : lines)
        per_task[l["task_id"].get<std::string>()] += 1;
    CHECK_FALSE(per_task.empty());
    for (const auto& [_, n] : per_task)
        CHECK(n == 8);
    auto rewards = read_json_file(out / "rewards.json");
    CHECK(rewards[0]["batch"]["rewards"].size() == 8);
}

TEST_CASE("cli: verify recomputes outcomes from the stored log")
{
    auto out = scratch_dir("cli_verify");
    REQUIRE(cli("rollout --bundle " + travel_bundle().string() + " --policy golden --group-size 1 --out " +
                out.string())
                .code == 0);
    auto r = cli("verify --json --bundle " + travel_bundle().string() + " --trajectories " +
                 (out / "trajectories.jsonl").string());
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["solved"] == j["total"]);
}

TEST_CASE("cli: exit codes")
{
    CHECK(cli("rollout --bundle /nonexistent/bundle").code == 3);
    CHECK(cli("rollout --no-such-flag").code == 2);
    CHECK(cli("").code == 2);
    auto out = scratch_dir("cli_codes");
    write_text_file(out / "bad.json", "{not json");
    CHECK(cli("train --bundle " + travel_bundle().string() + " --config " + (out / "bad.json").string()).code == 2);
    CHECK(cli("rollout --bundle " + travel_bundle().string() + " --policy telepathy").code == 2);
    CHECK(cli("report").code == 2);
}

TEST_CASE("cli: train with zero steps writes the initial policy; resume is a fixed point")
{
    auto bundle = scratch_dir("cli_bandit");
    REQUIRE(cli("synth --kind bandit --tasks 8 --seed 2 --out " + bundle.string()).code == 0);
    auto a = scratch_dir("cli_train0");
    REQUIRE(cli("train --bundle " + bundle.string() + " --steps 0 --out " + a.string()).code == 0);
    auto ck = read_json_file(a / "checkpoint.json");
    for (double w : ck["policy"]["weights"].get<std::vector<double>>())
        CHECK(w == 0.0);

    auto b = scratch_dir("cli_train1");
    REQUIRE(cli("train --bundle " + bundle.string() + " --steps 5 --max-turns 8 --out " + b.string()).code == 0);
    auto c = scratch_dir("cli_train2");
    REQUIRE(cli("train --bundle " + bundle.string() + " --steps 0 --resume " + (b / "checkpoint.json").string() +
                " --out " + c.string())
                .code == 0);
    auto before = read_json_file(b / "checkpoint.json"), after = read_json_file(c / "checkpoint.json");
    CHECK(sha256_hex(before["policy"].dump()) == sha256_hex(after["policy"].dump()));
    CHECK(after["next_step"] == before["next_step"]);
}

TEST_CASE("cli: report writes the three analysis files")
{
    auto root = scratch_dir("cli_report");
    std::vector<std::string> logs;
    for (int cap : {10, 20, 50}) {
        auto dir = root / ("turns" + std::to_string(cap));
        REQUIRE(cli("rollout --bundle " + travel_bundle().string() + " --policy random --group-size 2 --max-turns " +
                    std::to_string(cap) + " --out " + dir.string())
                    .code == 0);
        logs.push_back((dir / "trajectories.jsonl").string());
    }
    auto out = root / "report";
    auto r = cli("report " + logs[0] + " " + logs[1] + " " + logs[2] + " --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(out / "tool_usage.csv"));
    CHECK(fs::exists(out / "cost_curve.csv"));
    CHECK(fs::exists(out / "preference_scores.csv"));
    auto curve = read_text_file(out / "cost_curve.csv");
    CHECK(curve.find("turns10,10,") != std::string::npos);
    CHECK(curve.find("turns20,20,") < curve.find("turns50,50,"));
}

TEST_CASE("cli: preference synth and eval-pref")
{
    auto bundle = scratch_dir("cli_pref");
    REQUIRE(cli("synth --kind preference --tasks 6 --eval-tasks 4 --pairs 10 --seed 3 --out " + bundle.string()).code ==
            0);
    auto out = scratch_dir("cli_pref_eval");
    auto r = cli("eval-pref --json --bundle " + bundle.string() + " --max-turns 8 --store " +
                 (out / "store.jsonl").string() + " --out " + out.string());
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["examples"] == 4);
    CHECK(fs::exists(out / "store.jsonl"));
    CHECK(fs::exists(out / "preference_scores.csv"));
}
