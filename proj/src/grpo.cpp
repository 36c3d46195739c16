#include "orchestra/grpo.hpp"

#include <algorithm>
#include <cmath>

namespace orchestra {

double mean_of(std::span<const double> values)
{
    if (values.empty())
        return 0.0;
    double s = 0.0;
    for (double v : values)
        s += v;
    return s / static_cast<double>(values.size());
}

double population_std(std::span<const double> values)
{
    if (values.empty())
        return 0.0;
    double m = mean_of(values);
    double ss = 0.0;
    for (double v : values)
        ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

std::string_view to_string(FilterReason reason)
{
    switch (reason) {
    case FilterReason::none: return "none";
    case FilterReason::homogeneity: return "homogeneity";
    case FilterReason::format: return "format";
    case FilterReason::invalid: return "invalid";
    }
    return "none";
}

GroupAdvantages group_advantages(std::span<const double> rewards)
{
    if (rewards.size() < 2)
        throw PreconditionError("advantages need a group of at least two rewards");
    GroupAdvantages g;
    g.rewards.assign(rewards.begin(), rewards.end());
    g.mean = mean_of(rewards);
    g.std = population_std(rewards);
    g.degenerate = g.std < kDegenerateStd;
    g.advantages.assign(rewards.size(), 0.0);
    if (!g.degenerate)
        for (std::size_t i = 0; i < rewards.size(); ++i)
            g.advantages[i] = (rewards[i] - g.mean) / g.std;
    return g;
}

std::optional<FilterReason> trajectory_filter(const Trajectory& trajectory)
{
    if (trajectory.has_format_violation())
        return FilterReason::format;
    if (!trajectory.has_valid_output())
        return FilterReason::invalid;
    return std::nullopt;
}

FilterDecision apply_filters(std::span<const Trajectory> group, std::span<const double> rewards, double std_threshold)
{
    if (group.size() != rewards.size())
        throw PreconditionError("rewards must be parallel to the group");
    FilterDecision d;
    d.kept.assign(group.size(), true);
    d.reasons.assign(group.size(), FilterReason::none);
    std::vector<double> surviving;
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (auto reason = trajectory_filter(group[i])) {
            d.kept[i] = false;
            d.reasons[i] = *reason;
        } else {
            surviving.push_back(rewards[i]);
        }
    }
    d.surviving_std = surviving.size() >= 2 ? population_std(surviving) : 0.0;
    if (d.surviving_std < std_threshold) {
        d.group_dropped = true;
        for (std::size_t i = 0; i < group.size(); ++i)
            if (d.kept[i]) {
                d.kept[i] = false;
                d.reasons[i] = FilterReason::homogeneity;
            }
    }
    return d;
}

ClippedObjective clipped_objective(std::span<const double> old_logprobs, std::span<const double> new_logprobs,
                                   std::span<const double> advantages, double epsilon)
{
    if (old_logprobs.size() != new_logprobs.size() || old_logprobs.size() != advantages.size())
        throw PreconditionError("log-probs and advantages must be parallel");
    if (!(epsilon > 0.0))
        throw PreconditionError("epsilon must be positive");
    ClippedObjective out;
    const std::size_t n = advantages.size();
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(old_logprobs[i]) || !std::isfinite(new_logprobs[i]) || !std::isfinite(advantages[i]))
            throw PreconditionError("non-finite log-probability or advantage at index " + std::to_string(i));
        double r = std::exp(new_logprobs[i] - old_logprobs[i]);
        double a = advantages[i];
        double unclipped = r * a;
        double bounded = std::clamp(r, 1.0 - epsilon, 1.0 + epsilon) * a;
        bool use_clip = bounded < unclipped;
        out.ratios.push_back(r);
        out.terms.push_back(use_clip ? bounded : unclipped);
        out.clipped.push_back(use_clip);
        clipped += use_clip;
        out.value += out.terms.back();
    }
    if (n > 0) {
        out.value /= static_cast<double>(n);
        out.clip_fraction = static_cast<double>(clipped) / static_cast<double>(n);
    }
    return out;
}

}  // namespace orchestra
