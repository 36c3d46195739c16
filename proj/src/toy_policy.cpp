#include "orchestra/toy_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orchestra/policies.hpp"
#include "orchestra/rewards.hpp"

namespace orchestra {

ToyPolicy::ToyPolicy(std::vector<std::string> catalog, double temperature, int turn_buckets, int domain_buckets)
    : catalog_(std::move(catalog)), temperature_(temperature), turn_buckets_(turn_buckets),
      domain_buckets_(domain_buckets)
{
    if (catalog_.empty())
        throw ConfigError("toy policy needs a non-empty catalog");
    if (!(temperature_ > 0.0))
        throw ConfigError("temperature must be positive");
    if (turn_buckets_ < 1 || domain_buckets_ < 1)
        throw ConfigError("feature buckets must be positive");
    weights_.assign(action_count() * feature_count(), 0.0);
}

std::size_t ToyPolicy::feature_count() const
{
    return 1 + (catalog_.size() + 3) + static_cast<std::size_t>(turn_buckets_) +
           static_cast<std::size_t>(domain_buckets_);
}

std::vector<double> ToyPolicy::features(const TaskSpec& task, int turn) const
{
    std::vector<double> f(feature_count(), 0.0);
    f[0] = 1.0;
    const std::size_t pdim = catalog_.size() + 3;
    if (task.preference) {
        if (task.preference->vector.size() != pdim)
            throw DimensionError("task preference does not match the policy catalog");
        std::copy(task.preference->vector.begin(), task.preference->vector.end(), f.begin() + 1);
    }
    std::size_t at = 1 + pdim;
    f[at + static_cast<std::size_t>(std::clamp(turn, 0, turn_buckets_ - 1))] = 1.0;
    at += static_cast<std::size_t>(turn_buckets_);
    f[at + stable_hash(task.domain) % static_cast<std::uint64_t>(domain_buckets_)] = 1.0;
    return f;
}

std::vector<bool> ToyPolicy::allowed(const TaskSpec& task, bool has_observation) const
{
    std::vector<bool> mask(action_count(), false);
    for (std::size_t i = 0; i < catalog_.size(); ++i)
        mask[i] = task.available_tools.contains(catalog_[i]);
    mask[answer_action()] = has_observation;
    return mask;
}

std::vector<double> ToyPolicy::probabilities(std::span<const double> features, const std::vector<bool>& allowed) const
{
    const std::size_t F = feature_count();
    std::vector<double> logits(action_count(), -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < action_count(); ++a) {
        if (!allowed[a])
            continue;
        double z = 0.0;
        for (std::size_t f = 0; f < F; ++f)
            z += weights_[a * F + f] * features[f];
        logits[a] = z / temperature_;
        top = std::max(top, logits[a]);
    }
    std::vector<double> p(action_count(), 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < action_count(); ++a)
        if (allowed[a]) {
            p[a] = std::exp(logits[a] - top);
            total += p[a];
        }
    for (auto& v : p)
        v /= total;
    return p;
}

std::map<std::string, double> ToyPolicy::action_distribution(const TaskSpec& task, int turn) const
{
    auto p = probabilities(features(task, turn), allowed(task, turn > 0));
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < catalog_.size(); ++i)
        out[catalog_[i]] = p[i];
    out["ANSWER"] = p[answer_action()];
    return out;
}

PolicyOutput ToyPolicy::act(const PolicyInput& input) const
{
    if (input.catalog.size() != catalog_.size())
        throw DimensionError("toy policy was built for a different catalog");
    bool observed = std::any_of(input.turns.begin(), input.turns.end(),
                                [](const Turn& t) { return t.observation.has_value(); });
    auto p = probabilities(features(input.task, input.turn), allowed(input.task, observed));
    std::mt19937_64 rng(input.seed);
    double u = unit_uniform(rng);
    std::size_t action = answer_action();
    double acc = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] == 0.0)
            continue;
        acc += p[a];
        if (u < acc) {
            action = a;
            break;
        }
    }
    if (action == answer_action()) {
        std::string answer;
        for (auto it = input.turns.rbegin(); it != input.turns.rend(); ++it)
            if (it->observation && !it->observation->is_error) {
                answer = it->observation->payload;
                break;
            }
        return {"answer", format_answer(answer), 0, 0};
    }
    const ToolSpec* spec = input.task.available_tools.find(catalog_[action]);
    return {"call " + catalog_[action],
            format_tool_call({spec->name, default_arguments(*spec, input.task), input.turn}), 0, 0};
}

std::vector<DecisionStep> ToyPolicy::decision_steps(const TaskSpec& task, const Trajectory& trajectory) const
{
    std::vector<DecisionStep> steps;
    bool observed = false;
    for (std::size_t k = 0; k < trajectory.turns.size(); ++k) {
        const auto& turn = trajectory.turns[k];
        auto mask = allowed(task, observed);
        observed = observed || turn.observation.has_value();
        std::size_t action;
        if (turn.action) {
            auto it = std::find(catalog_.begin(), catalog_.end(), turn.action->tool);
            if (it == catalog_.end())
                continue;
            action = static_cast<std::size_t>(it - catalog_.begin());
        } else if (turn.final_answer) {
            action = answer_action();
        } else {
            continue;
        }
        if (!mask[action])
            continue;
        steps.push_back({features(task, static_cast<int>(k)), mask, action});
    }
    return steps;
}

double ToyPolicy::log_prob(std::span<const DecisionStep> steps) const
{
    double lp = 0.0;
    for (const auto& s : steps)
        lp += std::log(probabilities(s.features, s.allowed)[s.action]);
    return lp;
}

void ToyPolicy::accumulate_log_prob_gradient(std::span<const DecisionStep> steps, double scale,
                                             std::vector<double>& grad) const
{
    const std::size_t F = feature_count();
    grad.resize(weights_.size(), 0.0);
    for (const auto& s : steps) {
        auto p = probabilities(s.features, s.allowed);
        for (std::size_t a = 0; a < action_count(); ++a) {
            if (!s.allowed[a])
                continue;
            double coeff = scale * ((a == s.action ? 1.0 : 0.0) - p[a]) / temperature_;
            if (coeff == 0.0)
                continue;
            for (std::size_t f = 0; f < F; ++f)
                grad[a * F + f] += coeff * s.features[f];
        }
    }
}

json ToyPolicy::to_json() const
{
    return {{"catalog", catalog_},
            {"temperature", temperature_},
            {"turn_buckets", turn_buckets_},
            {"domain_buckets", domain_buckets_},
            {"weights", weights_}};
}

ToyPolicy ToyPolicy::from_json(const json& value)
{
    try {
        ToyPolicy p(value.at("catalog").get<std::vector<std::string>>(), value.at("temperature").get<double>(),
                    value.at("turn_buckets").get<int>(), value.at("domain_buckets").get<int>());
        auto w = value.at("weights").get<std::vector<double>>();
        if (w.size() != p.weights_.size())
            throw ConfigError("checkpoint has " + std::to_string(w.size()) + " weights, expected " +
                              std::to_string(p.weights_.size()));
        p.weights_ = std::move(w);
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed policy checkpoint: ") + e.what());
    }
}

ObjectiveGradient objective_and_gradient(const ToyPolicy& policy, std::span<const PolicySample> samples,
                                         double epsilon)
{
    std::vector<double> old_lp, new_lp, adv;
    for (const auto& s : samples) {
        old_lp.push_back(s.old_log_prob);
        new_lp.push_back(policy.log_prob(s.steps));
        adv.push_back(s.advantage);
    }
    ObjectiveGradient out;
    out.objective = clipped_objective(old_lp, new_lp, adv, epsilon);
    out.gradient.assign(policy.weights().size(), 0.0);
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (out.objective.clipped[i])
            continue;
        double scale = out.objective.ratios[i] * adv[i] / n;
        if (scale != 0.0)
            policy.accumulate_log_prob_gradient(samples[i].steps, scale, out.gradient);
    }
    return out;
}

double gradient_check(const ToyPolicy& policy, std::span<const PolicySample> samples, double epsilon, double h)
{
    auto analytic = objective_and_gradient(policy, samples, epsilon).gradient;
    ToyPolicy probe = policy;
    double worst = 0.0;
    for (std::size_t j = 0; j < analytic.size(); ++j) {
        double w = probe.weights()[j];
        probe.weights()[j] = w + h;
        double up = objective_and_gradient(probe, samples, epsilon).objective.value;
        probe.weights()[j] = w - h;
        double down = objective_and_gradient(probe, samples, epsilon).objective.value;
        probe.weights()[j] = w;
        double numeric = (up - down) / (2.0 * h);
        double denom = std::max({std::fabs(analytic[j]), std::fabs(numeric), 1e-6});
        worst = std::max(worst, std::fabs(analytic[j] - numeric) / denom);
    }
    return worst;
}

void TrainConfig::validate() const
{
    if (group_size < 2)
        throw ConfigError("group_size must be at least 2");
    if (steps < 0)
        throw ConfigError("steps must be non-negative");
    if (learning_rate < 0.0)
        throw ConfigError("learning rate must be non-negative");
    if (!(epsilon > 0.0))
        throw ConfigError("epsilon must be positive");
    if (std_threshold < 0.0)
        throw ConfigError("std_threshold must be non-negative");
    if (tasks_per_step < 1 || update_epochs < 1 || max_turns < 1 || workers < 1)
        throw ConfigError("tasks_per_step, update_epochs, max_turns and workers must be positive");
}

json to_json(const UpdateReport& r)
{
    return {{"step", r.step},
            {"objective", r.objective_value},
            {"clip_fraction", r.clip_fraction},
            {"ratio_min", r.ratio_min},
            {"ratio_mean", r.ratio_mean},
            {"ratio_max", r.ratio_max},
            {"grad_norm", r.grad_norm},
            {"step_accepted", r.step_accepted},
            {"mean_reward", r.mean_reward},
            {"groups", r.groups},
            {"filtered_groups", r.filtered_groups},
            {"samples", r.samples},
            {"action_distribution", r.action_distribution}};
}

std::vector<double> training_preference(const TaskSpec& task, std::size_t catalog_size)
{
    if (task.preference)
        return task.preference->vector;
    return objective_preference(catalog_size, 1.0, 0.0, 0.0).vector;
}

TrainResult train_toy_policy(ToyPolicy& policy, std::span<const TaskSpec> tasks, const ToolCatalog& catalog,
                             const TrainConfig& cfg, int first_step)
{
    cfg.validate();
    if (tasks.empty())
        throw PreconditionError("training needs at least one task");
    if (policy.catalog() != catalog.names())
        throw DimensionError("policy and catalog disagree on tool order");

    TrainResult result;
    int stalled_steps = 0;
    for (int s = first_step; s < first_step + cfg.steps; ++s) {
        UpdateReport report;
        report.step = s;
        std::vector<PolicySample> samples;
        double reward_sum = 0.0;
        const TaskSpec* shown = nullptr;

        for (int j = 0; j < cfg.tasks_per_step; ++j) {
            const auto& task =
                tasks[static_cast<std::size_t>((static_cast<std::int64_t>(s) * cfg.tasks_per_step + j) %
                                               static_cast<std::int64_t>(tasks.size()))];
            if (!shown)
                shown = &task;
            RolloutConfig rcfg;
            rcfg.max_turns = cfg.max_turns;
            rcfg.seed = mix_seed(mix_seed(cfg.seed, static_cast<std::uint64_t>(s)), static_cast<std::uint64_t>(j));
            rcfg.workers = cfg.workers;
            rcfg.record_transcript = false;
            auto group = run_group(policy, task, catalog, rcfg, cfg.group_size);
            report.groups += 1;

            std::vector<Trajectory> survivors;
            std::vector<bool> outcomes;
            for (const auto& t : group) {
                if (trajectory_filter(t))
                    continue;
                outcomes.push_back(outcome_reward(task, t).outcome);
                survivors.push_back(t);
            }
            if (survivors.size() < 2) {
                report.filtered_groups += 1;
                continue;
            }
            auto pref = training_preference(task, catalog.size());
            auto batch = compute_batch_rewards(survivors, outcomes, catalog, pref);
            std::vector<double> rewards;
            for (const auto& r : batch.rewards)
                rewards.push_back(r.final);
            auto decision = apply_filters(survivors, rewards, cfg.std_threshold);
            if (decision.group_dropped) {
                report.filtered_groups += 1;
                continue;
            }
            auto adv = group_advantages(rewards);
            for (std::size_t i = 0; i < survivors.size(); ++i) {
                PolicySample sample;
                sample.steps = policy.decision_steps(task, survivors[i]);
                sample.old_log_prob = policy.log_prob(sample.steps);
                sample.advantage = adv.advantages[i];
                samples.push_back(std::move(sample));
                reward_sum += rewards[i];
            }
        }

        report.samples = static_cast<int>(samples.size());
        if (samples.empty()) {
            report.step_accepted = false;
            ++stalled_steps;
        } else {
            stalled_steps = 0;
            report.mean_reward = reward_sum / static_cast<double>(samples.size());
            for (int e = 0; e < cfg.update_epochs; ++e) {
                auto og = objective_and_gradient(policy, samples, cfg.epsilon);
                if (e == 0) {
                    double sq = 0.0;
                    for (double g : og.gradient)
                        sq += g * g;
                    report.grad_norm = std::sqrt(sq);
                }
                report.objective_value = og.objective.value;
                report.clip_fraction = og.objective.clip_fraction;
                report.ratio_min = *std::min_element(og.objective.ratios.begin(), og.objective.ratios.end());
                report.ratio_max = *std::max_element(og.objective.ratios.begin(), og.objective.ratios.end());
                report.ratio_mean = mean_of(og.objective.ratios);
                auto& w = policy.weights();
                for (std::size_t k = 0; k < w.size(); ++k)
                    w[k] += cfg.learning_rate * og.gradient[k];
            }
            report.step_accepted = true;
        }
        if (shown)
            report.action_distribution = policy.action_distribution(*shown);
        result.reports.push_back(std::move(report));
        if (cfg.patience > 0 && stalled_steps > cfg.patience) {
            result.stalled = true;
            break;
        }
    }
    return result;
}

}  // namespace orchestra
