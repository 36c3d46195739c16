#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orchestra/synth.hpp"

namespace orchestra {

// On-disk environment: schema.json, entries.jsonl, tools.json, pricing.json,
// latency.json, tasks.jsonl and preferences.jsonl in one directory.
struct Bundle {
    std::string domain;
    std::shared_ptr<const DomainDB> db;
    ToolCatalog catalog;
    PricingTable pricing;
    LatencyTable latency;
    std::vector<TaskSpec> tasks;
    std::vector<PreferencePair> preferences;
};

json task_to_json(const TaskSpec& task);
// The catalog resolves available_tools; db becomes the task's initial state.
TaskSpec task_from_json(const json& value, const ToolCatalog& catalog, std::shared_ptr<const DomainDB> db);

void write_bundle(const std::filesystem::path& dir, const Bundle& bundle);

// A pricing override replaces pricing.json, e.g. for randomized instances.
// Throws ConfigError on malformed or inconsistent files.
Bundle read_bundle(const std::filesystem::path& dir, const std::optional<PricingTable>& pricing_override = {});

// Files a bundle consists of, in a fixed order (for manifests).
std::vector<std::filesystem::path> bundle_files(const std::filesystem::path& dir);

}  // namespace orchestra
