#include "orchestra/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "orchestra/policies.hpp"

namespace orchestra {

namespace {

class BindFailure : public Error {
public:
    using Error::Error;
};

std::string pad_number(std::int64_t n, int width)
{
    std::string s = std::to_string(n);
    if (static_cast<int>(s.size()) < width)
        s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
    return s;
}

std::string add_days(const std::string& base, std::int64_t offset)
{
    using namespace std::chrono;
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(base.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
        throw ConfigError("bad base date " + base);
    year_month_day start{year{y}, month{m}, day{d}};
    if (!start.ok())
        throw ConfigError("bad base date " + base);
    year_month_day out{sys_days{start} + days{offset}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(out.year()), static_cast<unsigned>(out.month()),
                  static_cast<unsigned>(out.day()));
    return buf;
}

double round2(double v)
{
    return std::round(v * 100.0) / 100.0;
}

std::string expand_pattern(const std::string& pattern, const json& pools, std::mt19937_64& rng, std::int64_t row)
{
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '{') {
            out += pattern[i];
            continue;
        }
        auto close = pattern.find('}', i);
        if (close == std::string::npos)
            throw ConfigError("unterminated placeholder in pattern " + pattern);
        std::string name = pattern.substr(i + 1, close - i - 1);
        if (name == "#") {
            out += std::to_string(row);
        } else {
            auto pool = pools.find(name);
            if (pool == pools.end() || !pool->is_array() || pool->empty())
                throw ConfigError("pattern pool " + name + " is missing");
            out += value_text((*pool)[uniform_index(rng, pool->size())]);
        }
        i = close;
    }
    return out;
}

// Values for one generator spec; `ref_keys` supplies keys for reference fields.
json generate_value(const json& gen, std::mt19937_64& rng, std::int64_t row, const std::vector<std::string>* ref_keys,
                    const std::vector<std::string>* enum_values)
{
    if (gen.contains("pool")) {
        const auto& pool = gen["pool"];
        if (!pool.is_array() || pool.empty())
            throw ConfigError("empty value pool");
        return pool[uniform_index(rng, pool.size())];
    }
    if (gen.contains("int")) {
        auto lo = gen["int"][0].get<std::int64_t>();
        auto hi = gen["int"][1].get<std::int64_t>();
        return lo + static_cast<std::int64_t>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
    }
    if (gen.contains("real")) {
        double lo = gen["real"][0].get<double>();
        double hi = gen["real"][1].get<double>();
        return round2(lo + (hi - lo) * unit_uniform(rng));
    }
    if (gen.contains("bool"))
        return unit_uniform(rng) < gen["bool"].get<double>();
    if (gen.contains("date")) {
        auto span = gen["date"][1].get<std::int64_t>();
        return add_days(gen["date"][0].get<std::string>(),
                        static_cast<std::int64_t>(uniform_index(rng, static_cast<std::size_t>(span + 1))));
    }
    if (gen.contains("pattern"))
        return expand_pattern(gen["pattern"].get<std::string>(), gen.value("pools", json::object()), rng, row);
    if (gen.contains("ref")) {
        if (!ref_keys || ref_keys->empty())
            throw ConfigError("reference generator has no records to point at");
        return (*ref_keys)[uniform_index(rng, ref_keys->size())];
    }
    if (enum_values && !enum_values->empty())
        return (*enum_values)[uniform_index(rng, enum_values->size())];
    throw ConfigError("unknown value generator " + gen.dump());
}

struct Binding {
    std::optional<EntryRef> record;
    json value;
};

using Bindings = std::map<std::string, Binding>;

json bindings_to_json(const Bindings& b)
{
    json out = json::object();
    for (const auto& [var, binding] : b) {
        if (binding.record)
            out[var] = {{"table", binding.record->table}, {"key", binding.record->key}};
        else
            out[var] = {{"value", binding.value}};
    }
    return out;
}

Bindings bindings_from_json(const json& value)
{
    Bindings b;
    for (const auto& [var, v] : value.items()) {
        Binding binding;
        if (v.contains("table"))
            binding.record = EntryRef{v["table"].get<std::string>(), v["key"].get<std::string>()};
        else
            binding.value = v.at("value");
        b[var] = binding;
    }
    return b;
}

// Resolves "var.field" (initial DB), "var'.field" (after golden calls),
// "new.field" and plain "var" values.
struct Resolver {
    const DomainDB& initial;
    const Bindings& bindings;
    const DomainDB* after = nullptr;
    const json* created = nullptr;

    std::optional<json> lookup(const std::string& expr) const
    {
        auto dot = expr.find('.');
        if (dot == std::string::npos) {
            auto it = bindings.find(expr);
            if (it == bindings.end())
                return std::nullopt;
            if (it->second.record)
                return json(it->second.record->key);
            return std::optional<json>(std::in_place, it->second.value);
        }
        std::string var = expr.substr(0, dot);
        std::string field = expr.substr(dot + 1);
        if (var == "new") {
            if (!created || !created->contains(field))
                return std::nullopt;
            return std::optional<json>(std::in_place, (*created)[field]);
        }
        bool post = !var.empty() && var.back() == '\'';
        if (post)
            var.pop_back();
        auto it = bindings.find(var);
        if (it == bindings.end() || !it->second.record)
            return std::nullopt;
        const DomainDB& db = post && after ? *after : initial;
        const json* rec = db.find(it->second.record->table, it->second.record->key);
        if (!rec || !rec->contains(field))
            return std::nullopt;
        return std::optional<json>(std::in_place, (*rec)[field]);
    }

    std::string text(const std::string& pattern) const
    {
        std::string out;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (pattern[i] != '{') {
                out += pattern[i];
                continue;
            }
            auto close = pattern.find('}', i);
            if (close == std::string::npos) {
                out += pattern.substr(i);
                break;
            }
            auto v = lookup(pattern.substr(i + 1, close - i - 1));
            out += v ? value_text(*v) : std::string{};
            i = close;
        }
        return out;
    }

    json arg(const json& spec) const
    {
        if (!spec.is_string())
            return spec;
        const auto& s = spec.get_ref<const std::string&>();
        if (s.size() > 2 && s.front() == '{' && s.back() == '}' && s.find('{', 1) == std::string::npos) {
            if (auto v = lookup(s.substr(1, s.size() - 2)))
                return *v;
            throw ConfigError("unbound placeholder " + s);
        }
        return text(s);
    }
};

bool record_matches(const json& record, const json& bind, const Bindings& bound, const DomainDB& db)
{
    if (auto where = bind.find("where"); where != bind.end())
        for (const auto& [field, allowed] : where->items()) {
            auto it = record.find(field);
            if (it == record.end() ||
                std::none_of(allowed.begin(), allowed.end(), [&](const json& a) { return json_equal(a, *it); }))
                return false;
        }
    if (auto gte = bind.find("where_gte"); gte != bind.end())
        for (const auto& [field, bound_value] : gte->items()) {
            auto it = record.find(field);
            if (it == record.end() || !it->is_number() || it->get<double>() < bound_value.get<double>())
                return false;
        }
    if (auto wr = bind.find("where_ref"); wr != bind.end())
        for (const auto& [field, var] : wr->items()) {
            auto b = bound.find(var.get<std::string>());
            if (b == bound.end() || !b->second.record)
                throw ConfigError("where_ref names unbound variable " + var.get<std::string>());
            if (value_text(record.value(field, json(nullptr))) != b->second.record->key)
                return false;
        }
    (void)db;
    return true;
}

void bind_variables(const json& binds, const DomainDB& db, std::mt19937_64& rng, Bindings& bound)
{
    for (const auto& bind : binds) {
        std::string var = bind.at("var").get<std::string>();
        Binding binding;
        if (bind.contains("value")) {
            const json& gen = bind["value"];
            if (gen.contains("frac_of")) {
                Resolver r{db, bound};
                auto base = r.lookup(gen["frac_of"].get<std::string>());
                if (!base || !base->is_number())
                    throw BindFailure("frac_of needs a bound number");
                double lo = gen["range"][0].get<double>();
                double hi = gen["range"][1].get<double>();
                double v = round2(base->get<double>() * (lo + (hi - lo) * unit_uniform(rng)));
                if (v <= 0.0)
                    throw BindFailure("fraction rounds to zero");
                binding.value = v;
            } else {
                binding.value = generate_value(gen, rng, 0, nullptr, nullptr);
            }
            bound[var] = binding;
            continue;
        }
        std::string table = bind.at("table").get<std::string>();
        auto rows = db.entries.find(table);
        if (rows == db.entries.end())
            throw ConfigError("binding " + var + " names unknown table " + table);
        std::vector<std::string> candidates;
        if (bind.contains("ref_of")) {
            Resolver r{db, bound};
            auto key = r.lookup(bind["ref_of"].get<std::string>());
            if (key && rows->second.count(value_text(*key)))
                candidates.push_back(value_text(*key));
        } else {
            for (const auto& [key, record] : rows->second)
                candidates.push_back(key);
        }
        std::vector<std::string> ok;
        for (const auto& key : candidates) {
            bool used = std::any_of(bound.begin(), bound.end(), [&](const auto& kv) {
                return kv.second.record && kv.second.record->table == table && kv.second.record->key == key;
            });
            if (!used && record_matches(rows->second.at(key), bind, bound, db))
                ok.push_back(key);
        }
        if (ok.empty())
            throw BindFailure("no " + table + " record satisfies binding " + var);
        binding.record = EntryRef{table, ok[uniform_index(rng, ok.size())]};
        bound[var] = binding;
    }
}

// Intent body plus its first `level` complications.
std::vector<const json*> intent_layers(const json& intent, int level)
{
    std::vector<const json*> layers{&intent};
    const json comps = intent.value("complications", json::array());
    for (int i = 0; i < level && i < static_cast<int>(comps.size()); ++i)
        layers.push_back(&intent["complications"][static_cast<std::size_t>(i)]);
    return layers;
}

TaskSpec build_task(const Environment& env, const json& intent, int level, const Bindings& bound,
                    const std::string& task_id)
{
    TaskSpec task;
    task.task_id = task_id;
    task.domain = env.domain;
    task.initial_db = env.db;
    task.available_tools = env.catalog;
    task.intent_id = intent.at("id").get<std::string>();
    task.complication_level = level;
    task.bindings = bindings_to_json(bound);

    Resolver before{*env.db, bound};
    auto layers = intent_layers(intent, level);
    for (const auto* layer : layers)
        for (const auto& call : layer->at("calls")) {
            json args = json::object();
            const json call_args = call.value("args", json::object());
            for (const auto& [param, spec] : call_args.items())
                args[param] = before.arg(spec);
            task.golden_calls.push_back({call.at("tool").get<std::string>(), args,
                                         static_cast<int>(task.golden_calls.size())});
        }

    auto replay = replay_calls(task, task.golden_calls);
    std::optional<json> created;
    for (std::size_t i = 0; i < replay.observations.size(); ++i) {
        const auto* spec = env.catalog.find(task.golden_calls[i].tool);
        if (!spec || replay.observations[i].is_error || spec->executor.value("op", "") != "create")
            continue;
        json parsed = json::parse(replay.observations[i].payload, nullptr, false);
        if (parsed.is_object())
            created = parsed;
    }
    Resolver after{*env.db, bound, &replay.state.db, created ? &*created : nullptr};

    std::string instruction;
    for (const auto* layer : layers) {
        std::string piece = after.text(layer->value("instruction", ""));
        if (piece.empty())
            continue;
        if (!instruction.empty())
            instruction += " ";
        instruction += piece;
        if (layer->contains("required_info"))
            task.required_info = after.text((*layer)["required_info"].get<std::string>());
    }
    task.instruction = instruction;
    return task;
}

std::vector<std::string> placeholder_vars(const std::string& text)
{
    std::vector<std::string> vars;
    for (std::size_t i = text.find('{'); i != std::string::npos; i = text.find('{', i + 1)) {
        auto close = text.find('}', i);
        if (close == std::string::npos)
            break;
        std::string expr = text.substr(i + 1, close - i - 1);
        std::string var = expr.substr(0, expr.find('.'));
        if (!var.empty() && var.back() == '\'')
            var.pop_back();
        vars.push_back(var);
    }
    return vars;
}

}  // namespace

std::map<std::string, int> DomainTemplate::default_sizes() const
{
    std::map<std::string, int> sizes;
    for (const auto& t : tables)
        sizes[t.at("name").get<std::string>()] = t.value("size", 10);
    return sizes;
}

const json* DomainTemplate::intent(std::string_view id) const
{
    for (const auto& i : intents)
        if (i.value("id", "") == id)
            return &i;
    return nullptr;
}

void validate_template(const DomainTemplate& tmpl)
{
    std::set<std::string> tables;
    for (const auto& t : tmpl.tables) {
        std::string name = t.at("name").get<std::string>();
        for (const auto& f : t.at("fields"))
            if (f.value("type", "") == "ref") {
                std::string ref = f.value("ref", "");
                if (!tables.count(ref))
                    throw ConfigError(tmpl.name + ": field " + name + "." + f.value("name", "") +
                                      " references unknown or later table " + ref);
            }
        tables.insert(name);
    }
    std::set<std::string> tools;
    for (const auto& t : tmpl.tools)
        tools.insert(t.at("name").get<std::string>());
    for (const auto& intent : tmpl.intents) {
        std::string id = intent.at("id").get<std::string>();
        std::set<std::string> vars{"new"};
        std::vector<const json*> layers{&intent};
        if (intent.contains("complications"))
            for (const auto& c : intent.at("complications"))
                layers.push_back(&c);
        for (const auto* layer : layers) {
            for (const auto& b : layer->value("bind", json::array())) {
                if (b.contains("table") && !tables.count(b["table"].get<std::string>()))
                    throw ConfigError(tmpl.name + "/" + id + ": binding on unknown table");
                vars.insert(b.at("var").get<std::string>());
            }
            for (const auto& call : layer->at("calls")) {
                if (!tools.count(call.at("tool").get<std::string>()))
                    throw ConfigError(tmpl.name + "/" + id + ": unknown tool " + call["tool"].get<std::string>());
                const json call_args = call.value("args", json::object());
                for (const auto& [_, arg] : call_args.items())
                    if (arg.is_string())
                        for (const auto& v : placeholder_vars(arg.get<std::string>()))
                            if (!vars.count(v))
                                throw ConfigError(tmpl.name + "/" + id + ": unbound placeholder " + v);
            }
            for (const char* key : {"instruction", "required_info"})
                for (const auto& v : placeholder_vars(layer->value(key, "")))
                    if (!vars.count(v))
                        throw ConfigError(tmpl.name + "/" + id + ": unbound placeholder " + v);
        }
    }
}

Environment generate_environment(const DomainTemplate& tmpl, const std::map<std::string, int>& sizes,
                                 std::uint64_t seed)
{
    validate_template(tmpl);
    auto db = std::make_shared<DomainDB>();
    std::mt19937_64 rng(mix_seed(seed, "environment:" + tmpl.name));
    for (const auto& t : tmpl.tables) {
        std::string name = t.at("name").get<std::string>();
        auto sz = sizes.find(name);
        int size = sz != sizes.end() ? sz->second : t.value("size", 10);
        if (size <= 0)
            throw PreconditionError("table " + name + " needs a positive size");
        TableSchema schema;
        schema.key_field = t.at("key").get<std::string>();
        schema.fields.push_back({schema.key_field, FieldType::string, true, {}, {}});
        for (const auto& f : t.at("fields")) {
            FieldDef def;
            def.name = f.at("name").get<std::string>();
            auto type = parse_field_type(f.at("type").get<std::string>());
            if (!type)
                throw ConfigError("unknown field type in table " + name);
            def.type = *type;
            def.required = f.value("required", true);
            def.enum_values = f.value("enum", std::vector<std::string>{});
            def.ref_table = f.value("ref", "");
            schema.fields.push_back(def);
        }
        db->schema[name] = schema;

        std::map<std::string, std::vector<std::string>> ref_keys;
        for (const auto& f : schema.fields)
            if (f.type == FieldType::reference) {
                auto rows = db->entries.find(f.ref_table);
                if (rows == db->entries.end() || rows->second.empty())
                    throw ConfigError("table " + name + " references " + f.ref_table + ", which has no records");
                for (const auto& [key, _] : rows->second)
                    ref_keys[f.name].push_back(key);
            }

        std::string prefix = t.at("prefix").get<std::string>();
        auto& rows = db->entries[name];
        const auto& field_specs = t.at("fields");
        for (int i = 0; i < size; ++i) {
            std::string key = prefix + pad_number(i + 1, 4);
            json record = {{schema.key_field, key}};
            for (std::size_t j = 1; j < schema.fields.size(); ++j) {
                const auto& def = schema.fields[j];
                json gen = field_specs[j - 1].value("gen", json::object());
                auto refs = ref_keys.find(def.name);
                record[def.name] = generate_value(gen, rng, i + 1, refs == ref_keys.end() ? nullptr : &refs->second,
                                                  &def.enum_values);
            }
            rows[key] = std::move(record);
        }
    }

    auto issues = validate_records(*db);
    auto ref_issues = validate_references(*db);
    issues.insert(issues.end(), ref_issues.begin(), ref_issues.end());
    if (!issues.empty())
        throw ConfigError("generated database is invalid: " + issues.front());

    Environment env;
    env.domain = tmpl.name;
    env.db = db;
    env.catalog = catalog_from_json(tmpl.tools, tmpl.pricing, tmpl.latency);
    return env;
}

std::vector<TaskSpec> generate_tasks(const Environment& env, const DomainTemplate& tmpl, int count,
                                     std::uint64_t seed, const TaskOptions& options)
{
    if (count < 0)
        throw PreconditionError("task count must be non-negative");
    if (env.domain != tmpl.name || !env.db)
        throw PreconditionError("environment was not generated from template " + tmpl.name);
    for (const auto& t : tmpl.tables)
        if (!env.db->schema.count(t.at("name").get<std::string>()))
            throw PreconditionError("environment is missing table " + t.at("name").get<std::string>());
    std::vector<TaskSpec> tasks;
    if (count == 0)
        return tasks;
    const std::size_t m = tmpl.intents.size();
    if (m == 0)
        throw ConfigError("template " + tmpl.name + " has no intents");
    std::size_t start = mix_seed(seed, "intent-start") % m;
    for (int i = 0; i < count; ++i) {
        std::optional<TaskSpec> task;
        for (std::size_t attempt = 0; attempt < m && !task; ++attempt) {
            const json& intent = tmpl.intents[(start + static_cast<std::size_t>(i) + attempt) % m];
            std::mt19937_64 rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(i)), attempt));
            Bindings bound;
            try {
                bind_variables(intent.value("bind", json::array()), *env.db, rng, bound);
            } catch (const BindFailure&) {
                continue;
            }
            std::string id = env.domain + "-" + std::to_string(seed) + "-" + pad_number(i, 4);
            task = build_task(env, intent, 0, bound, id);
        }
        if (!task)
            throw ConfigError("no intent of " + tmpl.name + " can be instantiated on this environment");
        std::uint64_t subset_seed = mix_seed(mix_seed(seed, "subset"), static_cast<std::uint64_t>(i));
        task->available_tools =
            sample_tool_subset(env.catalog, task->golden_calls, options.keep_tool_probability, subset_seed);
        tasks.push_back(std::move(*task));
    }
    return tasks;
}

ComplicationResult complicate_task(const TaskSpec& task, const Environment& env, const DomainTemplate& tmpl,
                                   std::uint64_t seed)
{
    const json* intent = tmpl.intent(task.intent_id);
    if (!intent || env.domain != task.domain)
        throw PreconditionError("task " + task.task_id + " does not come from template " + tmpl.name);
    const json comps = intent->value("complications", json::array());
    if (task.complication_level >= static_cast<int>(comps.size()))
        return {task, false};

    Bindings bound = bindings_from_json(task.bindings);
    std::mt19937_64 rng(mix_seed(seed, task.task_id));
    try {
        bind_variables(comps[static_cast<std::size_t>(task.complication_level)].value("bind", json::array()), *env.db,
                       rng, bound);
    } catch (const BindFailure&) {
        return {task, false};
    }
    TaskSpec next = build_task(env, *intent, task.complication_level + 1, bound,
                               task.task_id + "-c" + std::to_string(task.complication_level + 1));
    std::vector<std::string> names = task.available_tools.names();
    for (const auto& call : next.golden_calls)
        if (std::find(names.begin(), names.end(), call.tool) == names.end())
            names.push_back(call.tool);
    std::vector<std::string> ordered;
    for (const auto& name : env.catalog.names())
        if (std::find(names.begin(), names.end(), name) != names.end())
            ordered.push_back(name);
    next.available_tools = env.catalog.subset(ordered);
    next.preference = task.preference;
    next.preference_ref = task.preference_ref;
    return {next, true};
}

std::string_view to_string(DropReason reason)
{
    switch (reason) {
    case DropReason::none: return "none";
    case DropReason::exec_error: return "exec_error";
    case DropReason::pass_at_k: return "pass_at_k";
    case DropReason::no_action: return "no_action";
    }
    return "none";
}

json to_json(const SynthReport& report)
{
    json dropped = json::object();
    for (const auto& [id, reason] : report.dropped)
        dropped[id] = to_string(reason);
    return {{"generated", report.generated},
            {"dropped_exec_error", report.dropped_exec_error},
            {"dropped_pass_at_k", report.dropped_pass_at_k},
            {"dropped_no_action", report.dropped_no_action},
            {"surviving", report.surviving},
            {"dropped", dropped}};
}

FilterResult filter_tasks(const std::vector<TaskSpec>& tasks, const Policy& probe, int k, std::uint64_t seed)
{
    if (k < 1)
        throw PreconditionError("pass@k needs k >= 1");
    FilterResult out;
    NeverActPolicy never_act;
    for (const auto& task : tasks) {
        out.report.generated += 1;
        DropReason reason = DropReason::none;
        if (task.golden_calls.empty()) {
            reason = DropReason::no_action;
        } else {
            auto replay = replay_calls(task, task.golden_calls);
            bool failed = replay.observations.size() != task.golden_calls.size() ||
                          std::any_of(replay.observations.begin(), replay.observations.end(),
                                      [](const ToolResult& r) { return r.is_error; });
            if (failed)
                reason = DropReason::exec_error;
        }
        if (reason == DropReason::none) {
            RolloutConfig cfg;
            cfg.seed = mix_seed(seed, task.task_id);
            cfg.max_turns = static_cast<int>(task.golden_calls.size()) + 4;
            std::vector<Trajectory> group;
            if (k >= 2)
                group = run_group(probe, task, task.available_tools, cfg, k);
            else
                group.push_back(run_episode(probe, task, task.available_tools, cfg));
            bool solved = std::any_of(group.begin(), group.end(),
                                      [&](const Trajectory& t) { return verify(task, t).solved; });
            if (!solved)
                reason = DropReason::pass_at_k;
        }
        if (reason == DropReason::none) {
            RolloutConfig cfg;
            cfg.seed = mix_seed(seed, task.task_id);
            auto empty = run_episode(never_act, task, task.available_tools, cfg);
            if (verify(task, empty).solved)
                reason = DropReason::no_action;
        }
        switch (reason) {
        case DropReason::none:
            out.report.surviving.push_back(task.task_id);
            out.surviving.push_back(task);
            continue;
        case DropReason::exec_error: out.report.dropped_exec_error += 1; break;
        case DropReason::pass_at_k: out.report.dropped_pass_at_k += 1; break;
        case DropReason::no_action: out.report.dropped_no_action += 1; break;
        }
        out.report.dropped[task.task_id] = reason;
    }
    return out;
}

std::optional<ToolCall> mutate_call_target(const TaskSpec& task, std::size_t call_index)
{
    if (call_index >= task.golden_calls.size() || !task.initial_db)
        return std::nullopt;
    ToolCall call = task.golden_calls[call_index];
    const ToolSpec* spec = task.available_tools.find(call.tool);
    if (!spec || spec->executor.value("type", "") != "db")
        return std::nullopt;
    DomainFunction fn = domain_function_from_json(spec->executor);
    std::string param = fn.target_param();
    if (param.empty() || !call.arguments.contains(param))
        return std::nullopt;
    const DomainDB& db = *task.initial_db;
    json current = call.arguments[param];

    std::vector<json> choices;
    std::string table = fn.target_table(db);
    if (!table.empty()) {
        auto rows = db.entries.find(table);
        if (rows != db.entries.end())
            for (const auto& [key, _] : rows->second)
                choices.emplace_back(key);
    } else if (fn.op == DomainFunction::Op::list) {
        std::set<std::string> seen;
        auto rows = db.entries.find(fn.table);
        if (rows != db.entries.end())
            for (const auto& [_, record] : rows->second)
                if (record.contains(fn.match_field) && seen.insert(record[fn.match_field].dump()).second)
                    choices.push_back(record[fn.match_field]);
        std::sort(choices.begin(), choices.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
    }
    if (choices.size() < 2)
        return std::nullopt;
    auto it = std::find_if(choices.begin(), choices.end(), [&](const json& c) { return json_equal(c, current); });
    std::size_t at = it == choices.end() ? 0 : static_cast<std::size_t>(it - choices.begin()) + 1;
    json replacement = choices[at % choices.size()];
    if (json_equal(replacement, current))
        return std::nullopt;
    call.arguments[param] = replacement;
    return call;
}

PreferenceProfile PreferencePair::profile() const
{
    return {pair_id, instruction, vector, catalog_ref};
}

json to_json(const PreferencePair& pair)
{
    return {{"pair_id", pair.pair_id},     {"persona", pair.persona},     {"instruction", pair.instruction},
            {"vector", pair.vector},       {"rationale", pair.rationale}, {"preferred", pair.preferred},
            {"avoided", pair.avoided},     {"split", pair.split},         {"catalog_ref", pair.catalog_ref}};
}

PreferencePair preference_pair_from_json(const json& value)
{
    try {
        PreferencePair p;
        p.pair_id = value.at("pair_id").get<std::string>();
        p.persona = value.value("persona", "");
        p.instruction = value.at("instruction").get<std::string>();
        p.vector = value.at("vector").get<std::vector<double>>();
        p.rationale = value.value("rationale", "");
        p.preferred = value.value("preferred", std::vector<std::string>{});
        p.avoided = value.value("avoided", std::vector<std::string>{});
        p.split = value.value("split", "train");
        p.catalog_ref = value.value("catalog_ref", "");
        return p;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed preference pair: ") + e.what());
    }
}

std::vector<std::string> validate_preference_pair(const PreferencePair& pair, const ToolCatalog& catalog)
{
    std::vector<std::string> problems;
    if (pair.vector.size() != catalog.size() + 3) {
        problems.push_back("vector has " + std::to_string(pair.vector.size()) + " entries for a catalog of " +
                           std::to_string(catalog.size()));
        return problems;
    }
    for (double v : pair.vector)
        if (!(v >= 0.0 && v <= 1.0))
            problems.push_back("entry outside [0, 1]");
    for (const auto& name : pair.preferred) {
        auto idx = catalog.index_of(name);
        if (!idx)
            problems.push_back("preferred tool " + name + " is not in the catalog");
        else if (pair.vector[*idx] != 1.0)
            problems.push_back("preferred tool " + name + " does not have weight 1");
    }
    for (const auto& name : pair.avoided) {
        auto idx = catalog.index_of(name);
        if (!idx)
            problems.push_back("avoided tool " + name + " is not in the catalog");
        else if (pair.vector[*idx] != 0.0)
            problems.push_back("avoided tool " + name + " does not have weight 0");
    }
    if (pair.split != "train" && pair.split != "eval")
        problems.push_back("split must be train or eval");
    return problems;
}

std::vector<PreferencePair> generate_preference_pairs(const ToolCatalog& catalog, int count, std::uint64_t seed,
                                                      double eval_fraction, std::string_view catalog_ref)
{
    if (catalog.empty())
        throw PreconditionError("preference pairs need a non-empty catalog");
    static const std::vector<std::string> personas{"privacy", "budget", "latency", "quality", "brand", "avoid"};
    static const std::vector<std::string> privacy_text{
        "I am a company employee and there is some confidential information in my server. There are many GPUs in "
        "the server, so I can host open-sourced models or retrievers. It would be great if we can avoid API "
        "calling as much as possible.",
        "My documents are under a confidentiality agreement. Please keep everything on infrastructure I control "
        "and stay away from hosted APIs and the public web."};
    static const std::vector<std::string> budget_text{
        "I am paying for this myself, so keep the bill as small as you can while still getting it right.",
        "Money is tight this month. Get me a correct answer, but spend as little as possible."};
    static const std::vector<std::string> latency_text{
        "I need this answered quickly; a correct answer that arrives fast matters most.",
        "I'm in a meeting and have seconds, not minutes. Be right, and be fast."};
    static const std::vector<std::string> quality_text{
        "Accuracy is all I care about here. Use the strongest tools you have.",
        "This goes into a legal filing, so correctness comes first regardless of cost."};

    const std::size_t n = catalog.size();
    std::size_t start = mix_seed(seed, "persona-start") % personas.size();
    std::vector<PreferencePair> pairs;
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        PreferencePair p;
        p.pair_id = "pref-" + std::to_string(seed) + "-" + pad_number(i, 4);
        p.persona = personas[(start + static_cast<std::size_t>(i)) % personas.size()];
        p.catalog_ref = std::string(catalog_ref);
        p.vector.assign(n + 3, 0.0);
        std::size_t variant = static_cast<std::size_t>(i) / personas.size();
        auto set_objectives = [&](double o, double c, double l) {
            p.vector[n] = o;
            p.vector[n + 1] = c;
            p.vector[n + 2] = l;
        };
        if (p.persona == "privacy") {
            for (std::size_t t = 0; t < n; ++t) {
                const auto& spec = catalog.at(t);
                if (spec.has_tag("local") || spec.has_tag("open_weights")) {
                    p.vector[t] = 1.0;
                    p.preferred.push_back(spec.name);
                } else if (spec.has_tag("web") || spec.has_tag("proprietary")) {
                    p.avoided.push_back(spec.name);
                }
            }
            p.instruction = privacy_text[variant % privacy_text.size()];
            p.rationale = "self-hosted tools preferred; hosted APIs and web search avoided";
        } else if (p.persona == "budget") {
            set_objectives(1.0, 1.0, 0.0);
            p.instruction = budget_text[variant % budget_text.size()];
            p.rationale = "optimize correctness and monetary cost";
        } else if (p.persona == "latency") {
            set_objectives(1.0, 0.0, 1.0);
            p.instruction = latency_text[variant % latency_text.size()];
            p.rationale = "optimize correctness and wall-clock time";
        } else if (p.persona == "quality") {
            set_objectives(1.0, 0.0, 0.0);
            for (std::size_t t = 0; t < n; ++t)
                if (catalog.at(t).has_tag("frontier")) {
                    p.vector[t] = 1.0;
                    p.preferred.push_back(catalog.at(t).name);
                }
            p.instruction = quality_text[variant % quality_text.size()];
            p.rationale = "optimize correctness only; frontier tools welcome";
        } else if (p.persona == "brand") {
            const auto& spec = catalog.at(uniform_index(rng, n));
            set_objectives(1.0, 0.0, 0.0);
            p.vector[*catalog.index_of(spec.name)] = 1.0;
            p.preferred.push_back(spec.name);
            p.instruction = "I trust " + spec.name + " and would like you to rely on it where you can.";
            p.rationale = "named tool preferred";
        } else {
            const auto& spec = catalog.at(uniform_index(rng, n));
            set_objectives(1.0, 0.0, 0.0);
            p.avoided.push_back(spec.name);
            p.instruction = "Please do not use " + spec.name + " for this.";
            p.rationale = "named tool avoided";
        }
        pairs.push_back(std::move(p));
    }

    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::mt19937_64 rng(mix_seed(seed, "split"));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[uniform_index(rng, i)]);
    auto eval_count = static_cast<std::size_t>(std::llround(eval_fraction * static_cast<double>(pairs.size())));
    for (std::size_t i = 0; i < order.size(); ++i)
        pairs[order[i]].split = i < eval_count ? "eval" : "train";
    return pairs;
}

PricingTable randomize_pricing(const PricingTable& table, std::uint64_t seed)
{
    PricingTable out;
    for (const auto& [ref, entry] : table) {
        std::mt19937_64 rng(mix_seed(seed, ref));
        double factor = std::exp(std::log(0.25) + (std::log(4.0) - std::log(0.25)) * unit_uniform(rng));
        out[ref] = entry.scaled(factor);
    }
    return out;
}

ToolCatalog sample_tool_subset(const ToolCatalog& catalog, const std::vector<ToolCall>& golden,
                               double keep_probability, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::string> names;
    for (const auto& spec : catalog.tools()) {
        bool needed = std::any_of(golden.begin(), golden.end(), [&](const ToolCall& c) { return c.tool == spec.name; });
        double u = unit_uniform(rng);  // drawn for every tool so choices do not shift with the golden set
        if (needed || u < keep_probability)
            names.push_back(spec.name);
    }
    return catalog.subset(names);
}

}  // namespace orchestra
