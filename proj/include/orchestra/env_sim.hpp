#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "orchestra/preference.hpp"
#include "orchestra/tool_registry.hpp"
#include "orchestra/trajectory.hpp"

namespace orchestra {

enum class FieldType { string, integer, number, boolean, enumeration, reference, date };

std::string_view to_string(FieldType type);
std::optional<FieldType> parse_field_type(std::string_view text);

struct FieldDef {
    std::string name;
    FieldType type = FieldType::string;
    bool required = true;
    std::vector<std::string> enum_values;
    std::string ref_table;
};

struct TableSchema {
    std::string key_field;
    std::vector<FieldDef> fields;

    const FieldDef* field(std::string_view name) const;
};

struct EntryRef {
    std::string table;
    std::string key;

    auto operator<=>(const EntryRef&) const = default;
};

using EntrySet = std::set<EntryRef>;

struct DomainDB {
    std::map<std::string, TableSchema> schema;
    std::map<std::string, std::map<std::string, json>> entries;
    std::int64_t version = 0;

    std::size_t entry_count() const;
    const json* find(std::string_view table, std::string_view key) const;
};

// Every record has exactly the schema's fields with matching types.
std::vector<std::string> validate_records(const DomainDB& db);
// Every reference field resolves to an existing record; keys match key fields.
std::vector<std::string> validate_references(const DomainDB& db);

struct FieldDiff {
    std::string table;
    std::string key;
    std::string field;  // empty when the whole record is missing on one side
    json expected;
    json actual;
};

// Deep equality over entries (version ignored); numbers compare within tolerance.
bool entries_equal(const DomainDB& expected, const DomainDB& actual, double tolerance = 1e-9);
std::vector<FieldDiff> diff_entries(const DomainDB& expected, const DomainDB& actual, double tolerance = 1e-9);
bool json_equal(const json& a, const json& b, double tolerance = 1e-9);

json schema_to_json(const DomainDB& db);
void schema_from_json(DomainDB& db, const json& value);
// One {table, key, fields} object per record, canonical order.
std::vector<json> entries_to_jsonl(const DomainDB& db);
void entries_from_jsonl(DomainDB& db, const std::vector<json>& lines);

// Executable semantics of a DB-bound tool, parsed from ToolSpec::executor
// with type "db". Ops:
//   read      return one record (optionally projected to `fields`)
//   list      return keys whose `match_field` equals the `value_param` argument
//   update    apply `set` assignments to one record after `require` checks
//   create    insert a record with a generated key; `effects` touch referenced records
//   remove    delete one record after `require` checks
//   transfer  move a numeric amount between two records of one table
struct DomainFunction {
    enum class Op { read, list, update, create, remove, transfer };

    struct Assignment {
        std::string field;
        bool add = false;      // add (numeric delta) instead of set
        json literal;          // used when param is empty
        std::string param;
        double scale = 1.0;    // multiplies the delta in add mode
        std::optional<double> min;
        std::string ref_field;  // create effects: apply to the record referenced by this field
    };

    struct Requirement {
        std::string field;
        std::vector<json> allowed;
        std::string ref_field;  // create: check on the referenced record
    };

    Op op = Op::read;
    std::string table;
    std::string key_param;
    std::vector<std::string> fields;
    std::string match_field;
    std::string value_param;
    std::vector<Assignment> set;
    std::vector<Requirement> require;
    std::vector<Assignment> effects;
    std::string id_prefix;
    std::string from_param;
    std::string to_param;
    std::string amount_param;
    std::string amount_field;
    double floor = 0.0;  // transfer: source balance may not drop below this
    bool terminal = false;

    // Argument that names the record this call targets (the key for
    // read/update/remove, the first reference for create, the match value
    // for list, the source for transfer).
    std::string target_param() const;
    // Table that target_param's value indexes.
    std::string target_table(const DomainDB& db) const;
};

DomainFunction domain_function_from_json(const json& binding);
json to_json(const DomainFunction& fn);

struct EpisodeState {
    DomainDB db;
    EntrySet touched;
    std::string transcript;
    bool terminated = false;
    TerminationReason termination = TerminationReason::none;

    void terminate(TerminationReason reason);
};

// Runs one domain function transactionally: on error the DB and touched set
// are left exactly as they were.
ExecOutcome run_domain_function(EpisodeState& state, const DomainFunction& fn, const json& args);

// Renders a record the way observations show it; required-info strings are
// derived with the same renderer.
std::string render_record(const json& record);

struct TaskSpec {
    std::string task_id;
    std::string domain;
    std::string instruction;
    std::vector<ToolCall> golden_calls;
    std::string required_info;
    std::shared_ptr<const DomainDB> initial_db;
    ToolCatalog available_tools;
    std::optional<PreferenceProfile> preference;
    std::string preference_ref;
    // Answer-keyed tasks are judged on the final answer instead of the DB.
    std::optional<std::string> gold_answer;
    // Synthesis provenance: intent template, complication depth and bound values.
    std::string intent_id;
    int complication_level = 0;
    json bindings = json::object();

    bool answer_keyed() const { return gold_answer.has_value(); }
};

// Independent deep copy of the task's initial DB.
EpisodeState fork_initial_state(const TaskSpec& task);

// Executes the call against the episode's DB through the catalog, returning
// the observation. Throws PreconditionError once the episode is terminated.
ToolResult apply_call(EpisodeState& state, const ToolCatalog& catalog, const ToolCall& call,
                      ExecutionContext ctx = {});

using InfoMatcher = std::function<bool(std::string_view required, std::string_view output)>;

// Casefolded, whitespace-normalized substring match.
bool normalized_substring_match(std::string_view required, std::string_view output);

struct VerificationReport {
    std::string task_id;
    bool execution_correctness = false;
    bool process_fidelity = false;
    bool operation_completeness = false;
    bool solved = false;
    std::vector<FieldDiff> diff;
    std::vector<EntryRef> missing_entries;  // golden-touched entries the trajectory never touched
};

class VerificationMismatch : public Error {
public:
    using Error::Error;
};

struct ReplayResult {
    EpisodeState state;
    std::vector<ToolResult> observations;
};

// Replays calls on a fresh fork; calls to tools outside the task's catalog
// become error observations, like in a live rollout.
ReplayResult replay_calls(const TaskSpec& task, const std::vector<ToolCall>& calls);

VerificationReport verify(const TaskSpec& task, const Trajectory& trajectory,
                          const InfoMatcher& matcher = normalized_substring_match);

json to_json(const VerificationReport& report);

}  // namespace orchestra
