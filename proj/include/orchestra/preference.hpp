#pragma once

#include <string>
#include <vector>

#include "orchestra/common.hpp"

namespace orchestra {

// User preference over tools and objectives:
// vector = [p_tool_1 .. p_tool_n, p_outcome, p_compute, p_latency], each in [0, 1],
// aligned with the catalog ordering named by catalog_ref.
struct PreferenceProfile {
    std::string id;
    std::string instruction;
    std::vector<double> vector;
    std::string catalog_ref;

    std::size_t tool_count() const { return vector.size() >= 3 ? vector.size() - 3 : 0; }
    double tool_weight(std::size_t index) const { return vector.at(index); }
    double outcome_weight() const { return vector.at(vector.size() - 3); }
    double compute_weight() const { return vector.at(vector.size() - 2); }
    double latency_weight() const { return vector.at(vector.size() - 1); }

    // Throws DimensionError unless size == tool_count + 3, ConfigError on out-of-range entries.
    void validate(std::size_t catalog_size) const;

    bool operator==(const PreferenceProfile&) const = default;
};

// All-zero tool weights with the given objective weights.
PreferenceProfile objective_preference(std::size_t catalog_size, double outcome, double compute, double latency);

json to_json(const PreferenceProfile& profile);
PreferenceProfile preference_from_json(const json& value);

}  // namespace orchestra
