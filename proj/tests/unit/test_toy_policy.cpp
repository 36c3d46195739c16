#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "orchestra/toy_policy.hpp"

using namespace orchestra;
using namespace testing;

namespace {

Scenario cost_bandit()
{
    return bandit_scenario({0, 0, 1, 1, 0}, 0.95, 8, 5);
}

std::vector<PolicySample> samples_for(const ToyPolicy& policy, const Scenario& s, std::uint64_t seed, bool zero_adv)
{
    std::mt19937_64 rng(seed);
    std::vector<PolicySample> out;
    for (int i = 0; i < 6; ++i) {
        RolloutConfig cfg;
        cfg.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
        cfg.max_turns = 6;
        const auto& task = s.tasks[static_cast<std::size_t>(i) % s.tasks.size()];
        auto tr = run_episode(policy, task, s.catalog, cfg);
        PolicySample sample;
        sample.steps = policy.decision_steps(task, tr);
        sample.old_log_prob = policy.log_prob(sample.steps) + 0.4 * (unit_uniform(rng) - 0.5);
        sample.advantage = zero_adv ? 0.0 : 2 * unit_uniform(rng) - 1;
        out.push_back(std::move(sample));
    }
    return out;
}

ToyPolicy random_policy(const Scenario& s, std::uint64_t seed)
{
    ToyPolicy p(s.catalog.names());
    std::mt19937_64 rng(seed);
    for (auto& w : p.weights())
        w = unit_uniform(rng) - 0.5;
    return p;
}

}  // namespace

TEST_CASE("softmax is a proper distribution over allowed actions")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 1);
    const auto& task = s.tasks.front();
    for (int turn = 0; turn < 12; ++turn) {
        auto probs = p.probabilities(p.features(task, turn), p.allowed(task, turn > 0));
        double sum = 0;
        for (double x : probs) {
            CHECK(std::isfinite(x));
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("answer is masked until a tool has been called")
{
    auto s = cost_bandit();
    ToyPolicy p(s.catalog.names());
    auto first = p.action_distribution(s.tasks.front(), 0);
    CHECK(first.at("ANSWER") == 0.0);
    CHECK(first.at("cheap_model") == doctest::Approx(0.5));
    auto later = p.action_distribution(s.tasks.front(), 1);
    CHECK(later.at("ANSWER") == doctest::Approx(1.0 / 3));
}

TEST_CASE("tools outside the task subset are masked")
{
    auto s = cost_bandit();
    ToyPolicy p(s.catalog.names());
    auto task = s.tasks.front();
    std::vector<std::string> keep{"expensive_model"};
    task.available_tools = s.catalog.subset(keep);
    auto d = p.action_distribution(task, 0);
    CHECK(d.at("cheap_model") == 0.0);
    CHECK(d.at("expensive_model") == 1.0);
}

TEST_CASE("decision steps replay the sampled actions")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 2);
    RolloutConfig cfg;
    cfg.seed = 4;
    cfg.max_turns = 10;
    const auto& task = s.tasks.front();
    auto tr = run_episode(p, task, s.catalog, cfg);
    auto steps = p.decision_steps(task, tr);
    CHECK(steps.size() == tr.turns.size());
    CHECK(std::isfinite(p.log_prob(steps)));
    CHECK(p.log_prob(steps) <= 0.0);
    CHECK(tr.turns.back().final_answer.has_value());
}

TEST_CASE("analytic gradient matches finite differences")
{
    auto s = cost_bandit();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto p = random_policy(s, seed);
        auto samples = samples_for(p, s, seed, false);
        CHECK(gradient_check(p, samples, 0.2) < 1e-4);
    }
}

TEST_CASE("zero advantages give a zero gradient")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 3);
    auto samples = samples_for(p, s, 3, true);
    for (double g : objective_and_gradient(p, samples, 0.2).gradient)
        CHECK(g == 0.0);
}

TEST_CASE("clipped terms contribute no gradient")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 6);
    auto samples = samples_for(p, s, 6, false);
    for (auto& x : samples) {
        x.advantage = 1.0;
        x.old_log_prob = p.log_prob(x.steps) - 1.0;  // ratio e > 1.2
    }
    auto og = objective_and_gradient(p, samples, 0.2);
    CHECK(og.objective.clip_fraction == 1.0);
    for (double g : og.gradient)
        CHECK(g == 0.0);
}

TEST_CASE("checkpoint json round trip")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 9);
    auto back = ToyPolicy::from_json(p.to_json());
    CHECK(back.weights() == p.weights());
    CHECK(back.catalog() == p.catalog());
    auto broken = p.to_json();
    broken["weights"].erase(0);
    CHECK_THROWS_AS(ToyPolicy::from_json(broken), ConfigError);
}

TEST_CASE("learning rate zero leaves parameters unchanged")
{
    auto s = cost_bandit();
    auto p = random_policy(s, 5);
    auto before = p.weights();
    TrainConfig cfg;
    cfg.steps = 5;
    cfg.learning_rate = 0.0;
    cfg.max_turns = 6;
    auto res = train_toy_policy(p, s.tasks, s.catalog, cfg);
    CHECK(p.weights() == before);
    CHECK(res.reports.size() == 5);
    for (std::size_t i = 1; i < res.reports.size(); ++i)
        if (res.reports[i].step_accepted)
            CHECK(res.reports[i].action_distribution == res.reports[0].action_distribution);
}

TEST_CASE("training is deterministic and resumable")
{
    auto s = cost_bandit();
    TrainConfig cfg;
    cfg.steps = 12;
    cfg.learning_rate = 0.3;
    cfg.max_turns = 6;
    cfg.seed = 2;
    ToyPolicy a(s.catalog.names()), b(s.catalog.names()), c(s.catalog.names());
    train_toy_policy(a, s.tasks, s.catalog, cfg);
    cfg.workers = 3;
    train_toy_policy(b, s.tasks, s.catalog, cfg);
    CHECK(a.weights() == b.weights());

    cfg.steps = 5;
    train_toy_policy(c, s.tasks, s.catalog, cfg);
    cfg.steps = 7;
    train_toy_policy(c, s.tasks, s.catalog, cfg, 5);
    CHECK(c.weights() == a.weights());
}

TEST_CASE("train config validation")
{
    TrainConfig cfg;
    cfg.group_size = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    auto s = cost_bandit();
    ToyPolicy p(s.catalog.names());
    TrainConfig ok;
    std::vector<TaskSpec> none;
    CHECK_THROWS_AS(train_toy_policy(p, none, s.catalog, ok), PreconditionError);
}

TEST_CASE("cost preference moves the bandit towards the cheap tool")
{
    auto s = cost_bandit();
    ToyPolicy p(s.catalog.names());
    TrainConfig cfg;
    cfg.steps = 150;
    cfg.learning_rate = 0.3;
    cfg.max_turns = 8;
    cfg.seed = 1;
    train_toy_policy(p, s.tasks, s.catalog, cfg);
    CHECK(p.action_distribution(s.tasks.front()).at("cheap_model") > 0.9);
}
