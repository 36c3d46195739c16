#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orchestra/policies.hpp"
#include "orchestra/scenarios.hpp"
#include "orchestra/synth.hpp"
#include "orchestra/templates.hpp"

namespace testing {

using namespace orchestra;

inline json calculator_tool(const std::string& name = "calculator")
{
    return {{"name", name},
            {"description", "Evaluate arithmetic."},
            {"parameters", {{{"name", "expr"}, {"type", "string"}}}},
            {"kind", "code_interpreter"},
            {"executor", {{"type", "calculator"}}}};
}

inline json scripted_tool(const std::string& name, const std::string& payload)
{
    return {{"name", name},
            {"description", "Scripted reply."},
            {"parameters", {{{"name", "q"}, {"type", "string"}, {"required", false}}}},
            {"kind", "search"},
            {"executor", {{"type", "scripted"}, {"payload", payload}}}};
}

inline ToolCatalog catalog_of(const json& tools, const PricingTable& pricing = {}, const LatencyTable& latency = {})
{
    return catalog_from_json(tools, pricing, latency);
}

// Small travel world shared by the env_sim and rollout tests.
struct TravelWorld {
    DomainTemplate tmpl;
    Environment env;
    std::vector<TaskSpec> tasks;
};

inline const TravelWorld& travel_world()
{
    static const TravelWorld world = [] {
        TravelWorld w;
        w.tmpl = builtin_template("travel");
        w.env = generate_environment(w.tmpl, {}, 11);
        w.tasks = generate_tasks(w.env, w.tmpl, 20, 11);
        return w;
    }();
    return world;
}

inline TaskSpec task_with_catalog(const ToolCatalog& catalog, std::shared_ptr<const DomainDB> db = {})
{
    TaskSpec t;
    t.task_id = "t0";
    t.domain = "test";
    t.instruction = "do the thing";
    t.available_tools = catalog;
    t.initial_db = db ? db : std::make_shared<DomainDB>();
    return t;
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("orchestra_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
