#include "orchestra/rewards.hpp"

#include <cctype>

namespace orchestra {

MetricVector metric_vector(const Trajectory& trajectory, const ToolCatalog& catalog, bool outcome)
{
    if (trajectory.catalog != catalog.names() || trajectory.tool_counts.size() != catalog.size())
        throw DimensionError("trajectory " + trajectory.task_id + " was not counted against this catalog");
    MetricVector v;
    v.reserve(catalog.size() + 3);
    for (auto c : trajectory.tool_counts)
        v.push_back(static_cast<double>(c));
    v.push_back(outcome ? 1.0 : 0.0);
    v.push_back(-trajectory.total_cost);
    v.push_back(-trajectory.total_latency);
    return v;
}

NormalizedBatch normalize_batch(std::span<const MetricVector> batch)
{
    if (batch.size() < 2)
        throw PreconditionError("normalization needs at least two trajectories");
    const std::size_t dim = batch.front().size();
    for (const auto& v : batch)
        if (v.size() != dim)
            throw DimensionError("metric vectors in a batch must have the same length");

    NormalizedBatch out;
    out.min.assign(batch.front().begin(), batch.front().end());
    out.max = out.min;
    for (const auto& v : batch)
        for (std::size_t k = 0; k < dim; ++k) {
            out.min[k] = std::min(out.min[k], v[k]);
            out.max[k] = std::max(out.max[k], v[k]);
        }
    for (const auto& v : batch) {
        MetricVector n(dim, 0.0);
        for (std::size_t k = 0; k < dim; ++k)
            if (out.max[k] > out.min[k])
                n[k] = (v[k] - out.min[k]) / (out.max[k] - out.min[k]);
        out.vectors.push_back(std::move(n));
    }
    return out;
}

double final_reward(std::span<const double> normalized, std::span<const double> preference, bool outcome)
{
    if (normalized.size() != preference.size())
        throw DimensionError("normalized vector has " + std::to_string(normalized.size()) +
                             " entries but the preference vector has " + std::to_string(preference.size()));
    if (!outcome)
        return 0.0;
    double r = 0.0;
    for (std::size_t k = 0; k < normalized.size(); ++k)
        r += normalized[k] * preference[k];
    return r;
}

std::string normalize_answer(std::string_view text)
{
    std::string cleaned;
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        cleaned += std::ispunct(u) ? ' ' : static_cast<char>(std::tolower(u));
    }
    std::string out;
    std::size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && std::isspace(static_cast<unsigned char>(cleaned[i])))
            ++i;
        std::size_t j = i;
        while (j < cleaned.size() && !std::isspace(static_cast<unsigned char>(cleaned[j])))
            ++j;
        std::string word = cleaned.substr(i, j - i);
        if (!word.empty() && word != "a" && word != "an" && word != "the") {
            if (!out.empty())
                out += ' ';
            out += word;
        }
        i = j;
    }
    return out;
}

bool normalized_exact_match(std::string_view predicted, std::string_view gold)
{
    return normalize_answer(predicted) == normalize_answer(gold);
}

OutcomeResult outcome_reward(const TaskSpec& task, const Trajectory& trajectory, const AnswerJudge& judge)
{
    OutcomeResult result;
    result.invalid_output = !trajectory.has_valid_output();
    if (task.answer_keyed()) {
        if (trajectory.task_id != task.task_id)
            throw VerificationMismatch("trajectory belongs to task " + trajectory.task_id + ", not " + task.task_id);
        auto answer = trajectory.final_answer();
        result.outcome = !result.invalid_output && answer && judge(*answer, *task.gold_answer);
        return result;
    }
    result.report = verify(task, trajectory);
    result.outcome = result.report->solved;
    return result;
}

BatchRewards compute_batch_rewards(std::span<const Trajectory> trajectories, const std::vector<bool>& outcomes,
                                   const ToolCatalog& catalog, std::span<const double> preference)
{
    if (trajectories.size() != outcomes.size())
        throw PreconditionError("trajectories and outcomes must have the same length");
    std::vector<MetricVector> raw;
    for (std::size_t i = 0; i < trajectories.size(); ++i)
        raw.push_back(metric_vector(trajectories[i], catalog, outcomes[i]));
    auto normalized = normalize_batch(raw);
    BatchRewards out;
    out.min = normalized.min;
    out.max = normalized.max;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        RewardBreakdown r;
        r.task_id = trajectories[i].task_id;
        r.raw = raw[i];
        r.normalized = normalized.vectors[i];
        r.final = final_reward(r.normalized, preference, outcomes[i]);
        out.rewards.push_back(std::move(r));
    }
    return out;
}

json to_json(const RewardBreakdown& reward)
{
    return {{"task_id", reward.task_id},
            {"raw", reward.raw},
            {"normalized", reward.normalized},
            {"final", reward.final},
            {"advantage", reward.advantage ? json(*reward.advantage) : json(nullptr)}};
}

json to_json(const BatchRewards& batch)
{
    json rewards = json::array();
    for (const auto& r : batch.rewards)
        rewards.push_back(to_json(r));
    return {{"rewards", rewards}, {"min", batch.min}, {"max", batch.max}};
}

MetricVector eval_metric_vector(const Trajectory& trajectory, bool outcome)
{
    MetricVector v;
    for (auto c : trajectory.tool_counts)
        v.push_back(static_cast<double>(c));
    v.push_back(outcome ? 1.0 : 0.0);
    v.push_back(trajectory.total_cost * 100.0);
    v.push_back(trajectory.total_latency);
    return v;
}

MetricVector eval_normalize(std::span<const double> current, std::span<const double> baseline)
{
    if (current.size() != baseline.size() || current.size() < 3)
        throw DimensionError("current and baseline vectors must align and hold at least the three objectives");
    const std::size_t split = current.size() - 2;  // first n+1 coordinates
    MetricVector out(current.size());
    for (std::size_t k = 0; k < current.size(); ++k)
        out[k] = k < split ? current[k] / std::max(1.0, baseline[k]) : baseline[k] / std::max(1.0, current[k]);
    return out;
}

double eval_reward(std::span<const double> current, std::span<const double> baseline,
                   std::span<const double> preference, bool outcome)
{
    auto normalized = eval_normalize(current, baseline);
    return final_reward(normalized, preference, outcome);
}

void BaselineStore::put(BaselineEntry entry)
{
    auto key = std::make_tuple(entry.benchmark, entry.example_id, entry.policy_label);
    entries_[key] = std::move(entry);
}

const BaselineEntry* BaselineStore::find(std::string_view benchmark, std::string_view example_id,
                                         std::string_view policy_label) const
{
    auto it = entries_.find({std::string(benchmark), std::string(example_id), std::string(policy_label)});
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<json> BaselineStore::to_jsonl() const
{
    std::vector<json> lines;
    for (const auto& [_, e] : entries_)
        lines.push_back({{"benchmark", e.benchmark},
                         {"example_id", e.example_id},
                         {"policy_label", e.policy_label},
                         {"vector", e.vector}});
    return lines;
}

BaselineStore BaselineStore::from_jsonl(const std::vector<json>& lines)
{
    BaselineStore store;
    try {
        for (const auto& line : lines)
            store.put({line.at("benchmark").get<std::string>(), line.at("example_id").get<std::string>(),
                       line.at("policy_label").get<std::string>(), line.at("vector").get<MetricVector>()});
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed baseline entry: ") + e.what());
    }
    return store;
}

PreferenceScore preference_score(std::span<const EvalExample> examples, const BaselineStore& store,
                                 std::string_view benchmark, std::string_view baseline_label)
{
    PreferenceScore score;
    for (const auto& ex : examples) {
        const auto* base = store.find(benchmark, ex.example_id, baseline_label);
        if (!base)
            throw PreconditionError("no baseline for example " + ex.example_id);
        score.sum += eval_reward(ex.current, base->vector, ex.preference, ex.outcome);
        score.examples += 1;
    }
    score.mean = score.examples ? score.sum / static_cast<double>(score.examples) : 0.0;
    return score;
}

}  // namespace orchestra
