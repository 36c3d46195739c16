#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orchestra/trajectory.hpp"

namespace orchestra {

// Groups below this reward std are treated as having no spread at all.
inline constexpr double kDegenerateStd = 1e-12;

double mean_of(std::span<const double> values);
// Population standard deviation.
double population_std(std::span<const double> values);

enum class FilterReason { none, homogeneity, format, invalid };

std::string_view to_string(FilterReason reason);

struct GroupAdvantages {
    std::vector<double> rewards;
    double mean = 0.0;
    double std = 0.0;
    std::vector<double> advantages;  // all zero when degenerate
    bool degenerate = false;
    bool filtered = false;
    std::optional<FilterReason> filter_reason;
};

// (R - mean) / std with population std. Throws PreconditionError below two rewards.
GroupAdvantages group_advantages(std::span<const double> rewards);

struct FilterDecision {
    std::vector<bool> kept;
    std::vector<FilterReason> reasons;  // per trajectory; none when kept
    bool group_dropped = false;
    // Population std of the rewards of trajectories that passed the per-trajectory filters.
    double surviving_std = 0.0;
};

// Per-trajectory filters (format violation, no valid output) first, then the
// group is dropped when the std of the surviving rewards is below threshold
// (fewer than two survivors count as zero spread).
FilterDecision apply_filters(std::span<const Trajectory> group, std::span<const double> rewards,
                             double std_threshold = 0.1);

// Format and invalid-output checks only.
std::optional<FilterReason> trajectory_filter(const Trajectory& trajectory);

struct ClippedObjective {
    double value = 0.0;
    std::vector<double> ratios;
    std::vector<double> terms;
    std::vector<bool> clipped;  // the clipped branch is the active minimum
    double clip_fraction = 0.0;
};

// mean_i min(r_i A_i, clip(r_i, 1-eps, 1+eps) A_i), r_i = exp(new_i - old_i).
ClippedObjective clipped_objective(std::span<const double> old_logprobs, std::span<const double> new_logprobs,
                                   std::span<const double> advantages, double epsilon = 0.2);

}  // namespace orchestra
