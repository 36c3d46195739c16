#include "orchestra/env_sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "orchestra/executors.hpp"

namespace orchestra {

namespace {

class CallFailure : public Error {
public:
    using Error::Error;
};

bool is_date(const json& v)
{
    if (!v.is_string())
        return false;
    const auto& s = v.get_ref<const std::string&>();
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

bool type_matches(const FieldDef& def, const json& v)
{
    switch (def.type) {
    case FieldType::string: return v.is_string();
    case FieldType::integer: return v.is_number_integer();
    case FieldType::number: return v.is_number();
    case FieldType::boolean: return v.is_boolean();
    case FieldType::enumeration:
        return v.is_string() && std::find(def.enum_values.begin(), def.enum_values.end(), v.get<std::string>()) !=
                                    def.enum_values.end();
    case FieldType::reference: return v.is_string();
    case FieldType::date: return is_date(v);
    }
    return false;
}

std::string arg_string(const json& args, const std::string& param)
{
    auto it = args.find(param);
    if (it == args.end())
        throw CallFailure("missing argument " + param);
    return value_text(*it);
}

const TableSchema& table_schema(const DomainDB& db, const std::string& table)
{
    auto it = db.schema.find(table);
    if (it == db.schema.end())
        throw CallFailure("unknown table " + table);
    return it->second;
}

json& record_ref(DomainDB& db, const std::string& table, const std::string& key)
{
    auto& rows = db.entries[table];
    auto it = rows.find(key);
    if (it == rows.end())
        throw CallFailure("no " + table + " record with key " + key);
    return it->second;
}

void check_requirements(const std::vector<DomainFunction::Requirement>& reqs, const json& record,
                        const std::string& label, bool on_ref)
{
    for (const auto& req : reqs) {
        if (req.ref_field.empty() == on_ref)
            continue;
        auto it = record.find(req.field);
        bool ok = it != record.end() &&
                  std::any_of(req.allowed.begin(), req.allowed.end(), [&](const json& a) { return json_equal(a, *it); });
        if (!ok)
            throw CallFailure(label + ": " + req.field + " is " + (it == record.end() ? "unset" : value_text(*it)) +
                              ", which does not allow this operation");
    }
}

void apply_assignment(const DomainFunction::Assignment& a, json& record, const TableSchema& schema, const json& args,
                      const std::string& label)
{
    json value = a.literal;
    if (!a.param.empty()) {
        auto it = args.find(a.param);
        if (it == args.end())
            throw CallFailure("missing argument " + a.param);
        value = *it;
    }
    const FieldDef* def = schema.field(a.field);
    if (!def)
        throw CallFailure(label + ": unknown field " + a.field);
    if (a.add) {
        if (!value.is_number() || !record[a.field].is_number())
            throw CallFailure(label + ": " + a.field + " is not numeric");
        double next = record[a.field].get<double>() + a.scale * value.get<double>();
        if (a.min && next < *a.min - 1e-12)
            throw CallFailure(label + ": " + a.field + " would drop below " + format_number(*a.min));
        if (def->type == FieldType::integer)
            record[a.field] = static_cast<std::int64_t>(std::llround(next));
        else
            record[a.field] = std::round(next * 100.0) / 100.0;
        return;
    }
    if (!type_matches(*def, value))
        throw CallFailure(label + ": invalid value " + value_text(value) + " for " + a.field);
    record[a.field] = value;
}

std::string next_key(const std::map<std::string, json>& rows, const std::string& prefix)
{
    std::int64_t highest = 0;
    std::size_t width = 4;
    for (const auto& [key, _] : rows) {
        if (key.rfind(prefix, 0) != 0)
            continue;
        auto digits = key.substr(prefix.size());
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            continue;
        highest = std::max<std::int64_t>(highest, std::stoll(digits));
        width = std::max(width, digits.size());
    }
    std::string number = std::to_string(highest + 1);
    if (number.size() < width)
        number.insert(0, width - number.size(), '0');
    return prefix + number;
}

std::vector<std::string> ref_fields(const TableSchema& schema)
{
    std::vector<std::string> out;
    for (const auto& f : schema.fields)
        if (f.type == FieldType::reference)
            out.push_back(f.name);
    return out;
}

ExecOutcome run_ops(EpisodeState& state, const DomainFunction& fn, const json& args)
{
    DomainDB& db = state.db;
    const TableSchema& schema = table_schema(db, fn.table);
    ExecOutcome out;

    switch (fn.op) {
    case DomainFunction::Op::read: {
        std::string key = arg_string(args, fn.key_param);
        const json& record = record_ref(db, fn.table, key);
        json shown = record;
        if (!fn.fields.empty()) {
            shown = json::object();
            for (const auto& f : fn.fields)
                if (record.contains(f))
                    shown[f] = record[f];
        }
        state.touched.insert({fn.table, key});
        out.payload = render_record(shown);
        return out;
    }
    case DomainFunction::Op::list: {
        auto it = args.find(fn.value_param);
        if (it == args.end())
            throw CallFailure("missing argument " + fn.value_param);
        std::vector<std::string> keys;
        for (const auto& [key, record] : db.entries[fn.table])
            if (record.contains(fn.match_field) && json_equal(record[fn.match_field], *it))
                keys.push_back(key);
        for (const auto& key : keys)
            state.touched.insert({fn.table, key});
        if (keys.empty()) {
            out.payload = "no matching " + fn.table;
        } else {
            out.payload = fn.table + ":";
            for (const auto& key : keys)
                out.payload += " " + key;
        }
        return out;
    }
    case DomainFunction::Op::update: {
        std::string key = arg_string(args, fn.key_param);
        json record = record_ref(db, fn.table, key);
        std::string label = fn.table + " " + key;
        check_requirements(fn.require, record, label, false);
        for (const auto& a : fn.set)
            apply_assignment(a, record, schema, args, label);
        db.entries[fn.table][key] = record;
        ++db.version;
        state.touched.insert({fn.table, key});
        out.payload = render_record(record);
        return out;
    }
    case DomainFunction::Op::create: {
        json record = json::object();
        for (const auto& a : fn.set)
            apply_assignment(a, record, schema, args, "new " + fn.table);
        std::map<std::string, json> referenced;  // ref field -> working copy of referenced record
        std::map<std::string, EntryRef> referenced_at;
        for (const auto& field : ref_fields(schema)) {
            if (!record.contains(field))
                continue;
            const FieldDef* def = schema.field(field);
            std::string ref_key = value_text(record[field]);
            referenced[field] = record_ref(db, def->ref_table, ref_key);
            referenced_at[field] = {def->ref_table, ref_key};
        }
        for (const auto& req : fn.require) {
            if (req.ref_field.empty())
                continue;
            auto it = referenced.find(req.ref_field);
            if (it == referenced.end())
                throw CallFailure("new " + fn.table + ": " + req.ref_field + " is not set");
            check_requirements({req}, it->second, referenced_at[req.ref_field].table + " " +
                                                      referenced_at[req.ref_field].key, true);
        }
        for (const auto& effect : fn.effects) {
            auto it = referenced.find(effect.ref_field);
            if (it == referenced.end())
                throw CallFailure("new " + fn.table + ": " + effect.ref_field + " is not set");
            const auto& at = referenced_at[effect.ref_field];
            apply_assignment(effect, it->second, table_schema(db, at.table), args, at.table + " " + at.key);
        }
        std::string key = next_key(db.entries[fn.table], fn.id_prefix);
        record[schema.key_field] = key;
        for (const auto& f : schema.fields)
            if (f.required && !record.contains(f.name))
                throw CallFailure("new " + fn.table + ": missing field " + f.name);
        db.entries[fn.table][key] = record;
        for (const auto& effect : fn.effects) {
            const auto& at = referenced_at[effect.ref_field];
            db.entries[at.table][at.key] = referenced[effect.ref_field];
        }
        ++db.version;
        state.touched.insert({fn.table, key});
        for (const auto& [_, at] : referenced_at)
            state.touched.insert(at);
        out.payload = render_record(record);
        return out;
    }
    case DomainFunction::Op::remove: {
        std::string key = arg_string(args, fn.key_param);
        const json& record = record_ref(db, fn.table, key);
        check_requirements(fn.require, record, fn.table + " " + key, false);
        db.entries[fn.table].erase(key);
        ++db.version;
        state.touched.insert({fn.table, key});
        out.payload = "removed " + fn.table + " " + key;
        return out;
    }
    case DomainFunction::Op::transfer: {
        std::string from = arg_string(args, fn.from_param);
        std::string to = arg_string(args, fn.to_param);
        if (from == to)
            throw CallFailure("source and destination are the same record");
        auto amount_it = args.find(fn.amount_param);
        if (amount_it == args.end() || !amount_it->is_number() || !(amount_it->get<double>() > 0.0))
            throw CallFailure(fn.amount_param + " must be a positive number");
        double amount = amount_it->get<double>();
        json source = record_ref(db, fn.table, from);
        json target = record_ref(db, fn.table, to);
        check_requirements(fn.require, source, fn.table + " " + from, false);
        check_requirements(fn.require, target, fn.table + " " + to, false);
        if (!source[fn.amount_field].is_number() || !target[fn.amount_field].is_number())
            throw CallFailure(fn.amount_field + " is not numeric");
        double remaining = source[fn.amount_field].get<double>() - amount;
        if (remaining < fn.floor - 1e-12)
            throw CallFailure("insufficient " + fn.amount_field + " in " + from);
        source[fn.amount_field] = std::round(remaining * 100.0) / 100.0;
        target[fn.amount_field] = std::round((target[fn.amount_field].get<double>() + amount) * 100.0) / 100.0;
        db.entries[fn.table][from] = source;
        db.entries[fn.table][to] = target;
        ++db.version;
        state.touched.insert({fn.table, from});
        state.touched.insert({fn.table, to});
        out.payload = render_record(source) + "\n" + render_record(target);
        return out;
    }
    }
    throw CallFailure("unsupported operation");
}

class DbExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext& ctx) const override
    {
        if (!ctx.episode)
            throw Error(spec.name + " needs an episode database");
        return run_domain_function(*ctx.episode, domain_function_from_json(spec.executor), call.arguments);
    }
};

DomainFunction::Assignment assignment_from_json(const json& v)
{
    DomainFunction::Assignment a;
    a.field = v.at("field").get<std::string>();
    a.add = v.value("mode", "set") == "add";
    a.literal = v.value("value", json(nullptr));
    a.param = v.value("param", "");
    a.scale = v.value("scale", 1.0);
    if (v.contains("min"))
        a.min = v["min"].get<double>();
    a.ref_field = v.value("ref_field", "");
    return a;
}

json to_json(const DomainFunction::Assignment& a)
{
    json out = {{"field", a.field}, {"mode", a.add ? "add" : "set"}};
    if (a.param.empty())
        out["value"] = a.literal;
    else
        out["param"] = a.param;
    if (a.scale != 1.0)
        out["scale"] = a.scale;
    if (a.min)
        out["min"] = *a.min;
    if (!a.ref_field.empty())
        out["ref_field"] = a.ref_field;
    return out;
}

DomainFunction::Requirement requirement_from_json(const json& v)
{
    DomainFunction::Requirement r;
    r.field = v.at("field").get<std::string>();
    r.allowed = v.at("in").get<std::vector<json>>();
    r.ref_field = v.value("ref_field", "");
    return r;
}

json to_json(const DomainFunction::Requirement& r)
{
    json out = {{"field", r.field}, {"in", r.allowed}};
    if (!r.ref_field.empty())
        out["ref_field"] = r.ref_field;
    return out;
}

}  // namespace

std::shared_ptr<const Executor> make_db_executor()
{
    return std::make_shared<DbExecutor>();
}

std::string_view to_string(FieldType type)
{
    switch (type) {
    case FieldType::string: return "string";
    case FieldType::integer: return "integer";
    case FieldType::number: return "number";
    case FieldType::boolean: return "boolean";
    case FieldType::enumeration: return "enum";
    case FieldType::reference: return "ref";
    case FieldType::date: return "date";
    }
    return "string";
}

std::optional<FieldType> parse_field_type(std::string_view text)
{
    if (text == "string") return FieldType::string;
    if (text == "integer") return FieldType::integer;
    if (text == "number") return FieldType::number;
    if (text == "boolean") return FieldType::boolean;
    if (text == "enum") return FieldType::enumeration;
    if (text == "ref") return FieldType::reference;
    if (text == "date") return FieldType::date;
    return std::nullopt;
}

const FieldDef* TableSchema::field(std::string_view name) const
{
    for (const auto& f : fields)
        if (f.name == name)
            return &f;
    return nullptr;
}

std::size_t DomainDB::entry_count() const
{
    std::size_t n = 0;
    for (const auto& [_, rows] : entries)
        n += rows.size();
    return n;
}

const json* DomainDB::find(std::string_view table, std::string_view key) const
{
    auto t = entries.find(std::string(table));
    if (t == entries.end())
        return nullptr;
    auto r = t->second.find(std::string(key));
    return r == t->second.end() ? nullptr : &r->second;
}

std::vector<std::string> validate_records(const DomainDB& db)
{
    std::vector<std::string> issues;
    for (const auto& [table, rows] : db.entries) {
        auto s = db.schema.find(table);
        if (s == db.schema.end()) {
            issues.push_back("table " + table + " has no schema");
            continue;
        }
        const auto& schema = s->second;
        for (const auto& [key, record] : rows) {
            std::string where = table + "/" + key;
            if (!record.is_object()) {
                issues.push_back(where + ": record is not an object");
                continue;
            }
            for (const auto& f : schema.fields) {
                auto it = record.find(f.name);
                if (it == record.end()) {
                    if (f.required)
                        issues.push_back(where + ": missing field " + f.name);
                } else if (!type_matches(f, *it)) {
                    issues.push_back(where + ": field " + f.name + " is not a valid " + std::string(to_string(f.type)));
                }
            }
            for (const auto& [name, _] : record.items())
                if (!schema.field(name))
                    issues.push_back(where + ": field " + name + " is not in the schema");
        }
    }
    return issues;
}

std::vector<std::string> validate_references(const DomainDB& db)
{
    std::vector<std::string> issues;
    for (const auto& [table, rows] : db.entries) {
        auto s = db.schema.find(table);
        if (s == db.schema.end())
            continue;
        const auto& schema = s->second;
        for (const auto& [key, record] : rows) {
            std::string where = table + "/" + key;
            auto k = record.find(schema.key_field);
            if (k == record.end() || value_text(*k) != key)
                issues.push_back(where + ": key field " + schema.key_field + " does not match the record key");
            for (const auto& f : schema.fields) {
                if (f.type != FieldType::reference)
                    continue;
                auto it = record.find(f.name);
                if (it == record.end() || it->is_null())
                    continue;
                if (!db.find(f.ref_table, value_text(*it)))
                    issues.push_back(where + ": " + f.name + " references missing " + f.ref_table + "/" +
                                     value_text(*it));
            }
        }
    }
    return issues;
}

bool json_equal(const json& a, const json& b, double tolerance)
{
    if (a.is_number() && b.is_number())
        return std::fabs(a.get<double>() - b.get<double>()) <= tolerance;
    if (a.type() != b.type())
        return false;
    if (a.is_object()) {
        if (a.size() != b.size())
            return false;
        for (auto it = a.begin(); it != a.end(); ++it) {
            auto other = b.find(it.key());
            if (other == b.end() || !json_equal(it.value(), *other, tolerance))
                return false;
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_equal(a[i], b[i], tolerance))
                return false;
        return true;
    }
    return a == b;
}

std::vector<FieldDiff> diff_entries(const DomainDB& expected, const DomainDB& actual, double tolerance)
{
    std::vector<FieldDiff> diffs;
    std::set<std::string> tables;
    for (const auto& [t, _] : expected.entries)
        tables.insert(t);
    for (const auto& [t, _] : actual.entries)
        tables.insert(t);
    static const std::map<std::string, json> empty;
    for (const auto& table : tables) {
        auto e = expected.entries.find(table);
        auto a = actual.entries.find(table);
        const auto& erows = e == expected.entries.end() ? empty : e->second;
        const auto& arows = a == actual.entries.end() ? empty : a->second;
        std::set<std::string> keys;
        for (const auto& [k, _] : erows)
            keys.insert(k);
        for (const auto& [k, _] : arows)
            keys.insert(k);
        for (const auto& key : keys) {
            auto er = erows.find(key);
            auto ar = arows.find(key);
            if (er == erows.end() || ar == arows.end()) {
                diffs.push_back({table, key, "", er == erows.end() ? json(nullptr) : er->second,
                                 ar == arows.end() ? json(nullptr) : ar->second});
                continue;
            }
            std::set<std::string> fields;
            for (const auto& [f, _] : er->second.items())
                fields.insert(f);
            for (const auto& [f, _] : ar->second.items())
                fields.insert(f);
            for (const auto& field : fields) {
                json ev = er->second.value(field, json(nullptr));
                json av = ar->second.value(field, json(nullptr));
                if (!json_equal(ev, av, tolerance))
                    diffs.push_back({table, key, field, ev, av});
            }
        }
    }
    return diffs;
}

bool entries_equal(const DomainDB& expected, const DomainDB& actual, double tolerance)
{
    return diff_entries(expected, actual, tolerance).empty();
}

json schema_to_json(const DomainDB& db)
{
    json out = json::object();
    for (const auto& [table, schema] : db.schema) {
        json fields = json::array();
        for (const auto& f : schema.fields) {
            json fj = {{"name", f.name}, {"type", to_string(f.type)}, {"required", f.required}};
            if (!f.enum_values.empty())
                fj["enum"] = f.enum_values;
            if (!f.ref_table.empty())
                fj["ref"] = f.ref_table;
            fields.push_back(fj);
        }
        out[table] = {{"key", schema.key_field}, {"fields", fields}};
    }
    return out;
}

void schema_from_json(DomainDB& db, const json& value)
{
    try {
        for (const auto& [table, t] : value.items()) {
            TableSchema schema;
            schema.key_field = t.at("key").get<std::string>();
            for (const auto& f : t.at("fields")) {
                FieldDef def;
                def.name = f.at("name").get<std::string>();
                auto type = parse_field_type(f.at("type").get<std::string>());
                if (!type)
                    throw ConfigError("table " + table + ": unknown field type for " + def.name);
                def.type = *type;
                def.required = f.value("required", true);
                def.enum_values = f.value("enum", std::vector<std::string>{});
                def.ref_table = f.value("ref", "");
                schema.fields.push_back(std::move(def));
            }
            db.schema[table] = std::move(schema);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed schema: ") + e.what());
    }
}

std::vector<json> entries_to_jsonl(const DomainDB& db)
{
    std::vector<json> lines;
    for (const auto& [table, rows] : db.entries)
        for (const auto& [key, record] : rows)
            lines.push_back({{"table", table}, {"key", key}, {"fields", record}});
    return lines;
}

void entries_from_jsonl(DomainDB& db, const std::vector<json>& lines)
{
    try {
        for (const auto& line : lines) {
            std::string table = line.at("table").get<std::string>();
            std::string key = line.at("key").get<std::string>();
            auto& rows = db.entries[table];
            if (rows.count(key))
                throw ConfigError("duplicate entry " + table + "/" + key);
            rows[key] = line.at("fields");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed entry: ") + e.what());
    }
}

std::string DomainFunction::target_param() const
{
    switch (op) {
    case Op::read:
    case Op::update:
    case Op::remove: return key_param;
    case Op::list: return value_param;
    case Op::transfer: return from_param;
    case Op::create:
        for (const auto& a : set)
            if (!a.param.empty())
                return a.param;
        return {};
    }
    return {};
}

std::string DomainFunction::target_table(const DomainDB& db) const
{
    switch (op) {
    case Op::read:
    case Op::update:
    case Op::remove:
    case Op::transfer: return table;
    case Op::list:
    case Op::create: {
        auto s = db.schema.find(table);
        if (s == db.schema.end())
            return {};
        std::string field = match_field;
        if (op == Op::create) {
            std::string param = target_param();
            for (const auto& a : set)
                if (a.param == param)
                    field = a.field;
        }
        const FieldDef* def = s->second.field(field);
        if (def && def->type == FieldType::reference)
            return def->ref_table;
        return op == Op::list && field == s->second.key_field ? table : std::string{};
    }
    }
    return {};
}

DomainFunction domain_function_from_json(const json& binding)
{
    try {
        DomainFunction fn;
        std::string op = binding.at("op").get<std::string>();
        if (op == "read") fn.op = DomainFunction::Op::read;
        else if (op == "list") fn.op = DomainFunction::Op::list;
        else if (op == "update") fn.op = DomainFunction::Op::update;
        else if (op == "create") fn.op = DomainFunction::Op::create;
        else if (op == "remove") fn.op = DomainFunction::Op::remove;
        else if (op == "transfer") fn.op = DomainFunction::Op::transfer;
        else throw ConfigError("unknown db op " + op);
        fn.table = binding.at("table").get<std::string>();
        fn.key_param = binding.value("key_param", "");
        fn.fields = binding.value("fields", std::vector<std::string>{});
        fn.match_field = binding.value("match_field", "");
        fn.value_param = binding.value("value_param", "");
        for (const auto& a : binding.value("set", json::array()))
            fn.set.push_back(assignment_from_json(a));
        for (const auto& r : binding.value("require", json::array()))
            fn.require.push_back(requirement_from_json(r));
        for (const auto& e : binding.value("effects", json::array()))
            fn.effects.push_back(assignment_from_json(e));
        fn.id_prefix = binding.value("id_prefix", "");
        fn.from_param = binding.value("from_param", "");
        fn.to_param = binding.value("to_param", "");
        fn.amount_param = binding.value("amount_param", "");
        fn.amount_field = binding.value("amount_field", "");
        fn.floor = binding.value("floor", 0.0);
        fn.terminal = binding.value("terminal", false);
        return fn;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed db binding: ") + e.what());
    }
}

json to_json(const DomainFunction& fn)
{
    static const char* names[] = {"read", "list", "update", "create", "remove", "transfer"};
    json out = {{"type", "db"}, {"op", names[static_cast<int>(fn.op)]}, {"table", fn.table}};
    if (!fn.key_param.empty()) out["key_param"] = fn.key_param;
    if (!fn.fields.empty()) out["fields"] = fn.fields;
    if (!fn.match_field.empty()) out["match_field"] = fn.match_field;
    if (!fn.value_param.empty()) out["value_param"] = fn.value_param;
    auto list = [](const auto& items) {
        json arr = json::array();
        for (const auto& item : items)
            arr.push_back(to_json(item));
        return arr;
    };
    if (!fn.set.empty()) out["set"] = list(fn.set);
    if (!fn.require.empty()) out["require"] = list(fn.require);
    if (!fn.effects.empty()) out["effects"] = list(fn.effects);
    if (!fn.id_prefix.empty()) out["id_prefix"] = fn.id_prefix;
    if (fn.op == DomainFunction::Op::transfer) {
        out["from_param"] = fn.from_param;
        out["to_param"] = fn.to_param;
        out["amount_param"] = fn.amount_param;
        out["amount_field"] = fn.amount_field;
        out["floor"] = fn.floor;
    }
    if (fn.terminal) out["terminal"] = true;
    return out;
}

void EpisodeState::terminate(TerminationReason reason)
{
    if (!terminated) {
        terminated = true;
        termination = reason;
    }
}

ExecOutcome run_domain_function(EpisodeState& state, const DomainFunction& fn, const json& args)
{
    if (state.terminated)
        throw PreconditionError("episode already terminated");
    DomainDB before_db = state.db;
    EntrySet before_touched = state.touched;
    try {
        ExecOutcome out = run_ops(state, fn, args);
        if (fn.terminal)
            state.terminate(TerminationReason::env_signal);
        return out;
    } catch (const CallFailure& e) {
        state.db = std::move(before_db);
        state.touched = std::move(before_touched);
        ExecOutcome out;
        out.is_error = true;
        out.error_detail = e.what();
        return out;
    }
}

std::string render_record(const json& record)
{
    return record.dump();
}

EpisodeState fork_initial_state(const TaskSpec& task)
{
    EpisodeState state;
    if (task.initial_db)
        state.db = *task.initial_db;
    return state;
}

ToolResult apply_call(EpisodeState& state, const ToolCatalog& catalog, const ToolCall& call, ExecutionContext ctx)
{
    if (state.terminated)
        throw PreconditionError("cannot apply a call after the episode terminated");
    ctx.episode = &state;
    ToolResult result = execute(catalog, call, ctx);
    state.transcript += result.payload;
    state.transcript += '\n';
    return result;
}

bool normalized_substring_match(std::string_view required, std::string_view output)
{
    std::string needle = normalize_text(required);
    if (needle.empty())
        return true;
    return normalize_text(output).find(needle) != std::string::npos;
}

ReplayResult replay_calls(const TaskSpec& task, const std::vector<ToolCall>& calls)
{
    ReplayResult replay{fork_initial_state(task), {}};
    ExecutionContext ctx;
    ctx.task_id = task.task_id;
    ctx.instruction = task.instruction;
    ctx.gold_answer = task.gold_answer.value_or("");
    for (const auto& call : calls) {
        if (replay.state.terminated)
            break;
        try {
            replay.observations.push_back(apply_call(replay.state, task.available_tools, call, ctx));
        } catch (const ToolError& e) {
            ToolResult r;
            r.payload = std::string("error: ") + e.what();
            r.is_error = true;
            r.error_detail = e.what();
            replay.observations.push_back(std::move(r));
        }
    }
    return replay;
}

VerificationReport verify(const TaskSpec& task, const Trajectory& trajectory, const InfoMatcher& matcher)
{
    if (trajectory.task_id != task.task_id)
        throw VerificationMismatch("trajectory belongs to task " + trajectory.task_id + ", not " + task.task_id);

    std::vector<ToolCall> calls;
    for (const auto& turn : trajectory.turns)
        if (turn.action)
            calls.push_back(*turn.action);

    auto golden = replay_calls(task, task.golden_calls);
    auto actual = replay_calls(task, calls);

    VerificationReport report;
    report.task_id = task.task_id;
    report.diff = diff_entries(golden.state.db, actual.state.db);
    report.execution_correctness = report.diff.empty();
    report.process_fidelity = matcher(task.required_info, trajectory.agent_visible_output());
    for (const auto& entry : golden.state.touched)
        if (!actual.state.touched.count(entry))
            report.missing_entries.push_back(entry);
    report.operation_completeness = report.missing_entries.empty();
    report.solved = report.execution_correctness && report.process_fidelity && report.operation_completeness;
    return report;
}

json to_json(const VerificationReport& report)
{
    json diff = json::array();
    for (const auto& d : report.diff)
        diff.push_back({{"table", d.table}, {"key", d.key}, {"field", d.field}, {"expected", d.expected},
                        {"actual", d.actual}});
    json missing = json::array();
    for (const auto& e : report.missing_entries)
        missing.push_back({{"table", e.table}, {"key", e.key}});
    return {{"task_id", report.task_id},
            {"execution_correctness", report.execution_correctness},
            {"process_fidelity", report.process_fidelity},
            {"operation_completeness", report.operation_completeness},
            {"solved", report.solved},
            {"diff", diff},
            {"missing_entries", missing}};
}

}  // namespace orchestra
