#include "orchestra/preference.hpp"

#include <cmath>

namespace orchestra {

void PreferenceProfile::validate(std::size_t catalog_size) const
{
    if (vector.size() != catalog_size + 3)
        throw DimensionError("preference vector has " + std::to_string(vector.size()) + " entries, expected " +
                             std::to_string(catalog_size + 3));
    for (double p : vector)
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("preference entries must lie in [0, 1]");
}

PreferenceProfile objective_preference(std::size_t catalog_size, double outcome, double compute, double latency)
{
    PreferenceProfile profile;
    profile.vector.assign(catalog_size + 3, 0.0);
    profile.vector[catalog_size] = outcome;
    profile.vector[catalog_size + 1] = compute;
    profile.vector[catalog_size + 2] = latency;
    return profile;
}

json to_json(const PreferenceProfile& profile)
{
    json out = {{"instruction", profile.instruction}, {"vector", profile.vector}};
    if (!profile.id.empty())
        out["pair_id"] = profile.id;
    if (!profile.catalog_ref.empty())
        out["catalog_ref"] = profile.catalog_ref;
    return out;
}

PreferenceProfile preference_from_json(const json& value)
{
    try {
        PreferenceProfile p;
        p.id = value.value("pair_id", "");
        p.instruction = value.value("instruction", "");
        p.vector = value.at("vector").get<std::vector<double>>();
        p.catalog_ref = value.value("catalog_ref", "");
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed preference: ") + e.what());
    }
}

}  // namespace orchestra
