#include "orchestra/bundle.hpp"

#include <map>

namespace orchestra {

namespace fs = std::filesystem;

json task_to_json(const TaskSpec& task)
{
    json calls = json::array();
    for (const auto& c : task.golden_calls)
        calls.push_back(to_json(c));
    json out = {{"task_id", task.task_id},
                {"domain", task.domain},
                {"instruction", task.instruction},
                {"golden_calls", calls},
                {"required_info", task.required_info},
                {"preference_ref", task.preference_ref},
                {"available_tools", task.available_tools.names()},
                {"intent_id", task.intent_id},
                {"complication_level", task.complication_level},
                {"bindings", task.bindings}};
    if (task.gold_answer)
        out["gold_answer"] = *task.gold_answer;
    if (task.preference)
        out["preference"] = to_json(*task.preference);
    return out;
}

TaskSpec task_from_json(const json& value, const ToolCatalog& catalog, std::shared_ptr<const DomainDB> db)
{
    try {
        TaskSpec t;
        t.task_id = value.at("task_id").get<std::string>();
        t.domain = value.value("domain", "");
        t.instruction = value.at("instruction").get<std::string>();
        for (const auto& c : value.value("golden_calls", json::array()))
            t.golden_calls.push_back(tool_call_from_json(c));
        t.required_info = value.value("required_info", "");
        t.preference_ref = value.value("preference_ref", "");
        if (value.contains("available_tools")) {
            auto names = value["available_tools"].get<std::vector<std::string>>();
            t.available_tools = catalog.subset(names);
        } else {
            t.available_tools = catalog;
        }
        if (value.contains("gold_answer") && value["gold_answer"].is_string())
            t.gold_answer = value["gold_answer"].get<std::string>();
        if (value.contains("preference") && value["preference"].is_object())
            t.preference = preference_from_json(value["preference"]);
        t.intent_id = value.value("intent_id", "");
        t.complication_level = value.value("complication_level", 0);
        t.bindings = value.value("bindings", json::object());
        t.initial_db = std::move(db);
        return t;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed task: ") + e.what());
    } catch (const RoutingError& e) {
        throw ConfigError(std::string("task names a tool outside the bundle: ") + e.what());
    }
}

std::vector<fs::path> bundle_files(const fs::path& dir)
{
    std::vector<fs::path> out;
    for (const char* name : {"schema.json", "entries.jsonl", "tools.json", "pricing.json", "latency.json",
                             "tasks.jsonl", "preferences.jsonl"})
        out.push_back(dir / name);
    return out;
}

void write_bundle(const fs::path& dir, const Bundle& bundle)
{
    fs::create_directories(dir);
    DomainDB empty;
    const DomainDB& db = bundle.db ? *bundle.db : empty;
    json schema = schema_to_json(db);
    write_json_file(dir / "schema.json", {{"domain", bundle.domain}, {"tables", schema}});
    write_jsonl_file(dir / "entries.jsonl", entries_to_jsonl(db));
    write_json_file(dir / "tools.json", catalog_to_json(bundle.catalog));
    write_json_file(dir / "pricing.json", pricing_to_json(bundle.pricing));
    write_json_file(dir / "latency.json", latency_to_json(bundle.latency));
    std::vector<json> tasks;
    for (const auto& t : bundle.tasks)
        tasks.push_back(task_to_json(t));
    write_jsonl_file(dir / "tasks.jsonl", tasks);
    std::vector<json> prefs;
    for (const auto& p : bundle.preferences)
        prefs.push_back(to_json(p));
    write_jsonl_file(dir / "preferences.jsonl", prefs);
}

Bundle read_bundle(const fs::path& dir, const std::optional<PricingTable>& pricing_override)
{
    if (!fs::is_directory(dir))
        throw ConfigError("bundle directory not found: " + dir.string());
    for (const auto& f : bundle_files(dir))
        if (!fs::exists(f))
            throw ConfigError("bundle is missing " + f.filename().string());
    Bundle b;
    try {
        json schema = read_json_file(dir / "schema.json");
        b.domain = schema.value("domain", "");
        auto db = std::make_shared<DomainDB>();
        schema_from_json(*db, schema.value("tables", json::object()));
        entries_from_jsonl(*db, read_jsonl_file(dir / "entries.jsonl"));
        auto issues = validate_records(*db);
        auto ref_issues = validate_references(*db);
        issues.insert(issues.end(), ref_issues.begin(), ref_issues.end());
        if (!issues.empty())
            throw ConfigError("bundle database is invalid: " + issues.front());
        b.db = db;
        b.pricing = pricing_override ? *pricing_override : pricing_from_json(read_json_file(dir / "pricing.json"));
        b.latency = latency_from_json(read_json_file(dir / "latency.json"));
        b.catalog = catalog_from_json(read_json_file(dir / "tools.json"), b.pricing, b.latency);
        for (const auto& line : read_jsonl_file(dir / "preferences.jsonl"))
            b.preferences.push_back(preference_pair_from_json(line));
        std::map<std::string, const PreferencePair*> by_id;
        for (const auto& p : b.preferences)
            by_id[p.pair_id] = &p;
        for (const auto& line : read_jsonl_file(dir / "tasks.jsonl")) {
            auto task = task_from_json(line, b.catalog, db);
            if (!task.preference && !task.preference_ref.empty()) {
                auto it = by_id.find(task.preference_ref);
                if (it != by_id.end())
                    task.preference = it->second->profile();
            }
            if (task.preference)
                task.preference->validate(b.catalog.size());
            b.tasks.push_back(std::move(task));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed bundle: ") + e.what());
    } catch (const DimensionError& e) {
        throw ConfigError(std::string("bundle preference does not fit the catalog: ") + e.what());
    }
    return b;
}

}  // namespace orchestra
