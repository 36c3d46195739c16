// orchestra: rollouts, toy-policy training, environment synthesis and reports.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 configuration error,
// 3 environment (bundle) error, 4 training stalled.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "orchestra/bundle.hpp"
#include "orchestra/executors.hpp"
#include "orchestra/policies.hpp"
#include "orchestra/report.hpp"
#include "orchestra/rewards.hpp"
#include "orchestra/scenarios.hpp"
#include "orchestra/templates.hpp"
#include "orchestra/toy_policy.hpp"

namespace fs = std::filesystem;
using namespace orchestra;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEnvironment = 3;
constexpr int kExitStalled = 4;

class EnvironmentError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::uint64_t seed = 0;
    int max_turns = 50;
    int group_size = 8;
    std::string pricing;
    std::string preference;
    bool json_out = false;
    int workers = 1;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--max-turns", c.max_turns, "turn cap per episode")->check(CLI::PositiveNumber);
    cmd->add_option("--group-size", c.group_size, "rollouts per task")->check(CLI::PositiveNumber);
    cmd->add_option("--pricing", c.pricing, "pricing table JSON replacing the bundle's");
    cmd->add_option("--preference", c.preference, "preference JSON applied to every task");
    cmd->add_flag("--json", c.json_out, "print the summary as JSON");
    cmd->add_option("--workers", c.workers, "threads per rollout group")->check(CLI::PositiveNumber);
}

// Content hash of every input file, in argument order.
struct Manifest {
    std::string command;
    std::map<std::string, std::string> options;
    std::vector<fs::path> inputs;
    std::uint64_t seed = 0;
    fs::path output_dir;
};

void write_manifest(const Manifest& m)
{
    json inputs = json::array();
    std::string all;
    for (const auto& p : m.inputs) {
        if (!fs::is_regular_file(p))
            continue;
        std::string digest = sha256_hex(read_text_file(p));
        inputs.push_back({{"path", p.string()}, {"sha256", digest}});
        all += digest;
    }
    json out = {{"command", m.command},
                {"options", m.options},
                {"seed", m.seed},
                {"inputs", inputs},
                {"input_hash", sha256_hex(all)},
                {"output_dir", m.output_dir.string()}};
    write_json_file(m.output_dir / "manifest.json", out);
}

Bundle load_bundle(const std::string& dir, const Common& c)
{
    std::optional<PricingTable> pricing;
    if (!c.pricing.empty())
        pricing = pricing_from_json(read_json_file(c.pricing));
    Bundle b;
    try {
        b = read_bundle(dir, pricing);
    } catch (const Error& e) {
        throw EnvironmentError(e.what());
    }
    if (!c.preference.empty()) {
        json v = read_json_file(c.preference);
        PreferenceProfile p = v.is_array() ? PreferenceProfile{"cli", "", v.get<std::vector<double>>(), ""}
                                           : preference_from_json(v);
        p.validate(b.catalog.size());
        for (auto& t : b.tasks) {
            t.preference = p;
            t.preference_ref = p.id;
        }
    }
    return b;
}

std::vector<fs::path> bundle_inputs(const std::string& dir, const Common& c)
{
    auto files = bundle_files(dir);
    if (!c.pricing.empty())
        files.push_back(c.pricing);
    if (!c.preference.empty())
        files.push_back(c.preference);
    return files;
}

// Tasks whose preference pair sits in `split`; tasks without a pair always count.
std::vector<TaskSpec> select_split(const Bundle& b, const std::string& split)
{
    if (split == "all")
        return b.tasks;
    if (split != "train" && split != "eval")
        throw ConfigError("split must be train, eval or all");
    std::map<std::string, std::string> split_of;
    for (const auto& p : b.preferences)
        split_of[p.pair_id] = p.split;
    std::vector<TaskSpec> out;
    for (const auto& t : b.tasks) {
        auto it = split_of.find(t.preference_ref);
        if (it == split_of.end() || it->second == split)
            out.push_back(t);
    }
    return out;
}

std::unique_ptr<Policy> make_policy(const std::string& name, const std::string& checkpoint, const ToolCatalog& catalog)
{
    if (name == "golden") return std::make_unique<GoldenReplayPolicy>();
    if (name == "never_act") return std::make_unique<NeverActPolicy>();
    if (name == "never_answer") return std::make_unique<NeverAnswerPolicy>();
    if (name == "probe") return std::make_unique<ProbePolicy>();
    if (name == "random") return std::make_unique<RandomPolicy>();
    if (name == "toy") {
        if (checkpoint.empty())
            return std::make_unique<ToyPolicy>(catalog.names());
        json ck = read_json_file(checkpoint);
        auto policy = std::make_unique<ToyPolicy>(ToyPolicy::from_json(ck.contains("policy") ? ck["policy"] : ck));
        if (policy->catalog() != catalog.names())
            throw ConfigError("checkpoint catalog does not match the bundle");
        return policy;
    }
    throw ConfigError("unknown policy " + name);
}

std::vector<Trajectory> rollout_task(const Policy& policy, const TaskSpec& task, const ToolCatalog& catalog,
                                     const Common& c, int group)
{
    RolloutConfig cfg;
    cfg.max_turns = c.max_turns;
    cfg.seed = mix_seed(c.seed, task.task_id);
    cfg.workers = c.workers;
    std::vector<Trajectory> out;
    if (group == 1) {
        RolloutConfig one = cfg;
        one.seed = mix_seed(cfg.seed, std::uint64_t{0});
        out.push_back(run_episode(policy, task, catalog, one, 0));
    } else {
        out = run_group(policy, task, catalog, cfg, group);
    }
    for (auto& t : out)
        t.outcome = outcome_reward(task, t).outcome;
    return out;
}

void print_summary(const json& summary, bool as_json)
{
    if (as_json) {
        std::cout << summary.dump() << "\n";
        return;
    }
    for (const auto& [k, v] : summary.items())
        std::cout << k << ": " << value_text(v) << "\n";
}

struct RolloutArgs {
    std::string bundle;
    std::string policy = "golden";
    std::string checkpoint;
    std::string out = "rollout_out";
    std::string split = "all";
};

int cmd_rollout(const RolloutArgs& a, const Common& c)
{
    Bundle b = load_bundle(a.bundle, c);
    auto tasks = select_split(b, a.split);
    auto policy = make_policy(a.policy, a.checkpoint, b.catalog);
    fs::create_directories(a.out);

    std::vector<json> lines;
    json rewards = json::array();
    std::size_t solved = 0, total = 0;
    double cost = 0.0, latency = 0.0;
    for (const auto& task : tasks) {
        auto group = rollout_task(*policy, task, b.catalog, c, c.group_size);
        std::vector<bool> outcomes;
        for (const auto& t : group) {
            lines.push_back(to_json(t));
            outcomes.push_back(*t.outcome);
            solved += *t.outcome;
            cost += t.total_cost;
            latency += t.total_latency;
            ++total;
        }
        json entry = {{"task_id", task.task_id}, {"outcomes", outcomes}};
        if (group.size() >= 2) {
            auto batch = compute_batch_rewards(group, outcomes, b.catalog, training_preference(task, b.catalog.size()));
            entry["batch"] = to_json(batch);
        }
        rewards.push_back(entry);
    }
    write_jsonl_file(fs::path(a.out) / "trajectories.jsonl", lines);
    write_json_file(fs::path(a.out) / "rewards.json", rewards);

    Manifest m{"rollout",
               {{"bundle", a.bundle},
                {"policy", a.policy},
                {"checkpoint", a.checkpoint},
                {"split", a.split},
                {"max_turns", std::to_string(c.max_turns)},
                {"group_size", std::to_string(c.group_size)}},
               bundle_inputs(a.bundle, c),
               c.seed,
               a.out};
    if (!a.checkpoint.empty())
        m.inputs.push_back(a.checkpoint);
    write_manifest(m);

    double n = total ? static_cast<double>(total) : 1.0;
    print_summary({{"trajectories", total},
                   {"solve_rate", static_cast<double>(solved) / n},
                   {"mean_cost_cents", cost * 100.0 / n},
                   {"mean_latency_s", latency / n}},
                  c.json_out);
    return 0;
}

struct TrainArgs {
    std::string bundle;
    std::string config;
    std::string resume;
    std::string out = "train_out";
    std::string split = "train";
    std::optional<int> steps;
};

TrainConfig train_config_from_json(const json& v, TrainConfig cfg)
{
    try {
        cfg.steps = v.value("steps", cfg.steps);
        cfg.learning_rate = v.value("learning_rate", cfg.learning_rate);
        cfg.epsilon = v.value("epsilon", cfg.epsilon);
        cfg.std_threshold = v.value("std_threshold", cfg.std_threshold);
        cfg.tasks_per_step = v.value("tasks_per_step", cfg.tasks_per_step);
        cfg.update_epochs = v.value("update_epochs", cfg.update_epochs);
        cfg.group_size = v.value("group_size", cfg.group_size);
        cfg.max_turns = v.value("max_turns", cfg.max_turns);
        cfg.patience = v.value("patience", cfg.patience);
        cfg.seed = v.value("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed train config: ") + e.what());
    }
    return cfg;
}

int cmd_train(const TrainArgs& a, const Common& c, const CLI::App& sub)
{
    Bundle b = load_bundle(a.bundle, c);
    auto tasks = select_split(b, a.split);
    TrainConfig cfg;
    if (!a.config.empty())
        cfg = train_config_from_json(read_json_file(a.config), cfg);
    // Explicit flags win over the config file.
    if (sub.count("--seed")) cfg.seed = c.seed;
    if (sub.count("--max-turns")) cfg.max_turns = c.max_turns;
    if (sub.count("--group-size")) cfg.group_size = c.group_size;
    if (a.steps) cfg.steps = *a.steps;
    cfg.workers = c.workers;
    cfg.validate();

    int first_step = 0;
    ToyPolicy policy(b.catalog.names());
    if (!a.resume.empty()) {
        json ck = read_json_file(a.resume);
        policy = ToyPolicy::from_json(ck.at("policy"));
        first_step = ck.value("next_step", 0);
        if (policy.catalog() != b.catalog.names())
            throw ConfigError("checkpoint catalog does not match the bundle");
    }

    auto result = train_toy_policy(policy, tasks, b.catalog, cfg, first_step);
    fs::create_directories(a.out);
    std::vector<json> metrics;
    for (const auto& r : result.reports)
        metrics.push_back(to_json(r));
    write_jsonl_file(fs::path(a.out) / "metrics.jsonl", metrics);
    int next_step = first_step + static_cast<int>(result.reports.size());
    json config = {{"steps", cfg.steps},           {"learning_rate", cfg.learning_rate},
                   {"epsilon", cfg.epsilon},       {"std_threshold", cfg.std_threshold},
                   {"tasks_per_step", cfg.tasks_per_step}, {"update_epochs", cfg.update_epochs},
                   {"group_size", cfg.group_size}, {"max_turns", cfg.max_turns},
                   {"patience", cfg.patience},     {"seed", cfg.seed}};
    write_json_file(fs::path(a.out) / "checkpoint.json",
                    {{"policy", policy.to_json()}, {"next_step", next_step}, {"config", config}});

    Manifest m{"train",
               {{"bundle", a.bundle}, {"config", a.config}, {"resume", a.resume}, {"split", a.split}},
               bundle_inputs(a.bundle, c),
               cfg.seed,
               a.out};
    if (!a.config.empty())
        m.inputs.push_back(a.config);
    if (!a.resume.empty())
        m.inputs.push_back(a.resume);
    write_manifest(m);

    json summary = {{"steps_run", result.reports.size()}, {"next_step", next_step}, {"stalled", result.stalled}};
    if (!result.reports.empty()) {
        summary["final_mean_reward"] = result.reports.back().mean_reward;
        summary["final_action_distribution"] = result.reports.back().action_distribution;
    }
    print_summary(summary, c.json_out);
    return result.stalled ? kExitStalled : 0;
}

struct SynthArgs {
    std::string kind = "toolscale";
    std::string domain = "travel";
    std::string out = "synth_out";
    int tasks = 40;
    int complicate = 1;
    int probe_k = 8;
    double cheap_accuracy = 0.95;
    int pairs = 30;
    int eval_tasks = 20;
    double keep_tools = 0.7;
};

int cmd_synth(const SynthArgs& a, const Common& c)
{
    Bundle b;
    json report;
    if (a.kind == "toolscale") {
        DomainTemplate tmpl = builtin_template(a.domain);
        Environment env = generate_environment(tmpl, tmpl.default_sizes(), c.seed);
        auto tasks = generate_tasks(env, tmpl, a.tasks, c.seed, {a.keep_tools});
        // Complicate a seeded share of tasks, up to `complicate` levels.
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            int levels = static_cast<int>(mix_seed(c.seed, static_cast<std::uint64_t>(i)) %
                                          static_cast<std::uint64_t>(a.complicate + 1));
            for (int l = 0; l < levels; ++l) {
                auto r = complicate_task(tasks[i], env, tmpl, mix_seed(c.seed, "complicate"));
                if (!r.complicated)
                    break;
                tasks[i] = std::move(r.task);
            }
        }
        ProbePolicy probe;
        auto filtered = filter_tasks(tasks, probe, a.probe_k, c.seed);
        report = to_json(filtered.report);
        b.domain = env.domain;
        b.db = env.db;
        b.catalog = env.catalog;
        b.pricing = tmpl.pricing;
        b.latency = tmpl.latency;
        b.tasks = std::move(filtered.surviving);
    } else if (a.kind == "bandit") {
        std::vector<double> pref{0.0, 0.0, 1.0, 1.0, 0.0};
        if (!c.preference.empty())
            pref = read_json_file(c.preference).get<std::vector<double>>();
        Scenario s = bandit_scenario(pref, a.cheap_accuracy, a.tasks, c.seed);
        b.domain = s.name;
        b.catalog = s.catalog;
        b.pricing = s.pricing;
        b.latency = s.latency;
        b.tasks = s.tasks;
        report = {{"generated", b.tasks.size()}};
    } else if (a.kind == "preference") {
        Scenario s = preference_scenario(a.tasks, a.eval_tasks, a.pairs, c.seed);
        b.domain = s.name;
        b.catalog = s.catalog;
        b.pricing = s.pricing;
        b.latency = s.latency;
        b.tasks = s.tasks;
        b.tasks.insert(b.tasks.end(), s.eval_tasks.begin(), s.eval_tasks.end());
        b.preferences = s.pairs;
        report = {{"train_tasks", s.tasks.size()}, {"eval_tasks", s.eval_tasks.size()}, {"pairs", s.pairs.size()}};
    } else {
        throw ConfigError("unknown synth kind " + a.kind);
    }
    write_bundle(a.out, b);
    write_json_file(fs::path(a.out) / "synth_report.json", report);
    print_summary({{"kind", a.kind}, {"domain", b.domain}, {"tasks", b.tasks.size()}, {"report", report}}, c.json_out);
    return 0;
}

struct ReportArgs {
    std::vector<std::string> logs;
    std::string baseline;
    std::string benchmark = "default";
    std::string out = "report_out";
};

int cmd_report(const ReportArgs& a, const Common& c)
{
    if (a.logs.empty())
        throw ConfigError("report needs at least one trajectory log");
    std::vector<TrajectoryLog> logs;
    for (const auto& p : a.logs) {
        logs.push_back(read_trajectory_log(p));
        if (logs.back().trajectories.empty())
            throw ConfigError("log " + p + " is empty");
    }
    fs::create_directories(a.out);
    auto usage = tool_usage(logs);
    write_text_file(fs::path(a.out) / "tool_usage.csv", tool_usage_csv(usage));
    write_text_file(fs::path(a.out) / "cost_curve.csv", cost_curve_csv(cost_curve(logs)));

    // Baseline: a stored vector file, else the first log (the starting policy).
    BaselineStore store;
    std::string label = "baseline";
    if (!a.baseline.empty())
        store = BaselineStore::from_jsonl(read_jsonl_file(a.baseline));
    else
        store = baseline_from_log(logs.front(), a.benchmark, label);
    std::vector<PreferenceScoreRow> rows;
    bool have_preferences = true;
    for (const auto& log : logs)
        for (const auto& t : log.trajectories)
            have_preferences = have_preferences && t.preference.has_value();
    if (have_preferences)
        for (const auto& log : logs) {
            auto examples = eval_examples(log);
            rows.push_back({log.label, preference_score(examples, store, a.benchmark, label)});
        }
    write_text_file(fs::path(a.out) / "preference_scores.csv", preference_scores_csv(rows));

    json usage_json = json::object();
    for (const auto& r : usage)
        usage_json[r.tool] = r.mean_calls;
    json scores = json::object();
    for (const auto& r : rows)
        scores[r.label] = r.score.sum;
    print_summary({{"logs", logs.size()}, {"tool_usage", usage_json}, {"preference_scores", scores}}, c.json_out);
    return 0;
}

struct VerifyArgs {
    std::string bundle;
    std::string trajectories;
};

int cmd_verify(const VerifyArgs& a, const Common& c)
{
    Bundle b = load_bundle(a.bundle, c);
    std::map<std::string, const TaskSpec*> by_id;
    for (const auto& t : b.tasks)
        by_id[t.task_id] = &t;
    json reports = json::array();
    std::size_t solved = 0;
    for (const auto& line : read_jsonl_file(a.trajectories)) {
        Trajectory t = trajectory_from_json(line);
        auto it = by_id.find(t.task_id);
        if (it == by_id.end())
            throw ConfigError("trajectory for unknown task " + t.task_id);
        auto r = outcome_reward(*it->second, t);
        solved += r.outcome;
        json entry = r.report ? to_json(*r.report) : json{{"task_id", t.task_id}};
        entry["outcome"] = r.outcome;
        reports.push_back(entry);
    }
    if (c.json_out) {
        std::cout << json{{"solved", solved}, {"total", reports.size()}, {"reports", reports}}.dump() << "\n";
    } else {
        for (const auto& r : reports)
            std::cout << r["task_id"].get<std::string>() << " " << (r["outcome"].get<bool>() ? "solved" : "unsolved")
                      << "\n";
        std::cout << "solved: " << solved << "/" << reports.size() << "\n";
    }
    return 0;
}

struct EvalPrefArgs {
    std::string bundle;
    std::string policy = "toy";
    std::string checkpoint;
    std::string baseline_policy = "toy";
    std::string baseline_checkpoint;
    std::string store;
    std::string benchmark = "preference_qa";
    std::string split = "eval";
    std::uint64_t baseline_seed = 1;
    std::string out = "eval_out";
};

int cmd_eval_pref(const EvalPrefArgs& a, const Common& c)
{
    Bundle b = load_bundle(a.bundle, c);
    auto tasks = select_split(b, a.split);
    for (const auto& t : tasks)
        if (!t.preference)
            throw ConfigError("task " + t.task_id + " has no preference");
    const std::string label = a.baseline_policy + (a.baseline_checkpoint.empty() ? "" : ":" + a.baseline_checkpoint);

    BaselineStore store;
    if (!a.store.empty() && fs::exists(a.store))
        store = BaselineStore::from_jsonl(read_jsonl_file(a.store));
    bool missing = false;
    for (const auto& t : tasks)
        missing = missing || !store.find(a.benchmark, t.task_id + "#0", label);
    if (missing) {
        auto base = make_policy(a.baseline_policy, a.baseline_checkpoint, b.catalog);
        Common bc = c;
        bc.seed = a.baseline_seed;
        for (const auto& t : tasks)
            for (const auto& tr : rollout_task(*base, t, b.catalog, bc, 1))
                store.put({a.benchmark, example_id(tr), label, eval_metric_vector(tr, *tr.outcome)});
        if (!a.store.empty())
            write_jsonl_file(a.store, store.to_jsonl());
    }

    auto policy = make_policy(a.policy, a.checkpoint, b.catalog);
    TrajectoryLog log{a.policy, {}};
    for (const auto& t : tasks)
        for (auto& tr : rollout_task(*policy, t, b.catalog, c, 1))
            log.trajectories.push_back(std::move(tr));
    auto score = preference_score(eval_examples(log), store, a.benchmark, label);

    fs::create_directories(a.out);
    std::vector<json> lines;
    for (const auto& t : log.trajectories)
        lines.push_back(to_json(t));
    write_jsonl_file(fs::path(a.out) / "trajectories.jsonl", lines);
    write_text_file(fs::path(a.out) / "preference_scores.csv", preference_scores_csv({{a.policy, score}}));
    print_summary({{"examples", score.examples}, {"score_sum", score.sum}, {"score_mean", score.mean}}, c.json_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"orchestra: tool-orchestration environments, rollouts and toy-policy training"};
    app.require_subcommand(1);

    Common rollout_c, train_c, synth_c, report_c, verify_c, eval_c;

    RolloutArgs ra;
    auto* rollout = app.add_subcommand("rollout", "run a policy over a bundle's tasks");
    rollout->add_option("--bundle", ra.bundle, "environment bundle directory")->required();
    rollout->add_option("--policy", ra.policy, "golden|never_act|never_answer|probe|random|toy");
    rollout->add_option("--checkpoint", ra.checkpoint, "toy policy checkpoint");
    rollout->add_option("--out", ra.out, "output directory");
    rollout->add_option("--split", ra.split, "train|eval|all");
    add_common(rollout, rollout_c);

    TrainArgs ta;
    auto* train = app.add_subcommand("train", "train the toy policy with GRPO");
    train->add_option("--bundle", ta.bundle, "environment bundle directory")->required();
    train->add_option("--config", ta.config, "train config JSON");
    train->add_option("--resume", ta.resume, "checkpoint to continue from");
    train->add_option("--out", ta.out, "output directory");
    train->add_option("--split", ta.split, "train|eval|all");
    train->add_option("--steps", ta.steps, "override the configured step count")->check(CLI::NonNegativeNumber);
    add_common(train, train_c);

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "synthesize an environment bundle");
    synth->add_option("--kind", sa.kind, "toolscale|bandit|preference");
    synth->add_option("--domain", sa.domain, "travel|finance|medicine|ecommerce|restaurant");
    synth->add_option("--out", sa.out, "output directory");
    synth->add_option("--tasks", sa.tasks, "tasks to generate")->check(CLI::NonNegativeNumber);
    synth->add_option("--complicate", sa.complicate, "maximum complication levels")->check(CLI::NonNegativeNumber);
    synth->add_option("--probe-k", sa.probe_k, "pass@k of the solvability filter")->check(CLI::PositiveNumber);
    synth->add_option("--cheap-accuracy", sa.cheap_accuracy, "bandit: accuracy of the cheap tool");
    synth->add_option("--pairs", sa.pairs, "preference: preference pairs")->check(CLI::PositiveNumber);
    synth->add_option("--eval-tasks", sa.eval_tasks, "preference: eval questions")->check(CLI::NonNegativeNumber);
    synth->add_option("--keep-tools", sa.keep_tools, "probability of keeping a non-golden tool");
    add_common(synth, synth_c);

    ReportArgs rpa;
    auto* report = app.add_subcommand("report", "tool usage, cost curve and preference scores from logs");
    report->add_option("logs", rpa.logs, "trajectories.jsonl files")->required();
    report->add_option("--baseline", rpa.baseline, "baseline store JSONL (default: first log)");
    report->add_option("--benchmark", rpa.benchmark, "benchmark name in the baseline store");
    report->add_option("--out", rpa.out, "output directory");
    add_common(report, report_c);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "verify stored trajectories against their tasks");
    verify->add_option("--bundle", va.bundle, "environment bundle directory")->required();
    verify->add_option("--trajectories", va.trajectories, "trajectories.jsonl")->required();
    add_common(verify, verify_c);

    EvalPrefArgs ea;
    auto* eval = app.add_subcommand("eval-pref", "preference-aware score against a baseline store");
    eval->add_option("--bundle", ea.bundle, "environment bundle directory")->required();
    eval->add_option("--policy", ea.policy, "policy to score");
    eval->add_option("--checkpoint", ea.checkpoint, "toy policy checkpoint");
    eval->add_option("--baseline-policy", ea.baseline_policy, "policy that produces baseline vectors");
    eval->add_option("--baseline-checkpoint", ea.baseline_checkpoint, "its checkpoint");
    eval->add_option("--baseline-seed", ea.baseline_seed, "seed of the baseline run");
    eval->add_option("--store", ea.store, "baseline store JSONL; filled in when entries are missing");
    eval->add_option("--benchmark", ea.benchmark, "benchmark name");
    eval->add_option("--split", ea.split, "train|eval|all");
    eval->add_option("--out", ea.out, "output directory");
    add_common(eval, eval_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*rollout) return cmd_rollout(ra, rollout_c);
        if (*train) return cmd_train(ta, train_c, *train);
        if (*synth) return cmd_synth(sa, synth_c);
        if (*report) return cmd_report(rpa, report_c);
        if (*verify) return cmd_verify(va, verify_c);
        if (*eval) return cmd_eval_pref(ea, eval_c);
    } catch (const EnvironmentError& e) {
        std::cerr << "environment error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DimensionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
