#include "orchestra/executors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <httplib.h>

#include "orchestra/env_sim.hpp"

namespace orchestra {

namespace {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse()
    {
        double value = expression();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character");
        return value;
    }

private:
    double expression()
    {
        double value = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    double term()
    {
        double value = factor();
        for (;;) {
            skip_space();
            if (accept('*')) {
                value *= factor();
            } else if (accept('/')) {
                double divisor = factor();
                if (divisor == 0.0)
                    fail("division by zero");
                value /= divisor;
            } else {
                return value;
            }
        }
    }

    double factor()
    {
        skip_space();
        if (accept('-'))
            return -factor();
        if (accept('+'))
            return factor();
        if (accept('(')) {
            double value = expression();
            skip_space();
            if (!accept(')'))
                fail("missing ')'");
            return value;
        }
        return number();
    }

    double number()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        std::string token(text_.substr(start, pos_ - start));
        char* end = nullptr;
        double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size())
            fail("malformed number '" + token + "'");
        return value;
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error("expression error at " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::vector<std::string> tokenize_lower(std::string_view text)
{
    std::vector<std::string> out;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty())
        out.push_back(std::move(current));
    return out;
}

class CalculatorExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec&, const ToolCall& call, ExecutionContext&) const override
    {
        ExecOutcome out;
        out.payload = format_number(evaluate_expression(call.arguments.at("expr").get<std::string>()));
        return out;
    }
};

class ScriptedExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext&) const override
    {
        std::string text = spec.executor.value("payload", "");
        for (const auto& [key, value] : call.arguments.items()) {
            std::string placeholder = "{" + key + "}";
            std::string replacement = value_text(value);
            for (auto pos = text.find(placeholder); pos != std::string::npos;
                 pos = text.find(placeholder, pos + replacement.size()))
                text.replace(pos, placeholder.size(), replacement);
        }
        ExecOutcome out;
        out.payload = std::move(text);
        return out;
    }
};

class SearchExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext&) const override
    {
        auto query_terms = tokenize_lower(call.arguments.at("query").get<std::string>());
        std::set<std::string> query(query_terms.begin(), query_terms.end());
        const json corpus = spec.executor.value("corpus", json::array());
        std::size_t top_k = spec.executor.value("top_k", std::size_t{3});

        struct Hit {
            std::size_t score;
            std::size_t order;
        };
        std::vector<Hit> hits;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            auto doc_terms = tokenize_lower(corpus[i].value("text", ""));
            std::set<std::string> doc(doc_terms.begin(), doc_terms.end());
            std::size_t score = 0;
            for (const auto& term : query)
                score += doc.count(term);
            if (score > 0)
                hits.push_back({score, i});
        }
        std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.score > b.score; });
        ExecOutcome out;
        if (hits.empty()) {
            out.payload = "no results";
            return out;
        }
        for (std::size_t i = 0; i < hits.size() && i < top_k; ++i) {
            const auto& doc = corpus[hits[i].order];
            if (!out.payload.empty())
                out.payload += "\n";
            out.payload += "[" + doc.value("id", std::to_string(hits[i].order)) + "] " + doc.value("text", "");
        }
        return out;
    }
};

class OracleAnswerExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext& ctx) const override
    {
        double accuracy = spec.executor.value("accuracy", 1.0);
        std::uint64_t seed = mix_seed(mix_seed(mix_seed(ctx.seed, ctx.task_id), spec.name),
                                      static_cast<std::uint64_t>(call.turn));
        std::mt19937_64 rng(seed);
        bool correct = unit_uniform(rng) < accuracy;
        ExecOutcome out;
        if (ctx.gold_answer.empty()) {
            out.is_error = true;
            out.error_detail = "no answer key available for this task";
            return out;
        }
        out.payload = correct ? ctx.gold_answer : "not " + ctx.gold_answer;
        if (spec.executor.contains("tokens_in"))
            out.tokens_in = spec.executor["tokens_in"].get<std::int64_t>();
        if (spec.executor.contains("tokens_out"))
            out.tokens_out = spec.executor["tokens_out"].get<std::int64_t>();
        return out;
    }
};

class HttpChatExecutor final : public Executor {
public:
    ExecOutcome run(const ToolSpec& spec, const ToolCall& call, ExecutionContext&) const override
    {
        const auto& cfg = spec.executor;
        std::string api_key;
        if (auto env_name = cfg.value("api_key_env", ""); !env_name.empty())
            if (const char* v = std::getenv(env_name.c_str()))
                api_key = v;
        HttpChatClient client(cfg.at("url").get<std::string>(), api_key, cfg.value("timeout_s", 30.0));
        std::string param = cfg.value("prompt_param", "prompt");
        std::string prompt = call.arguments.contains(param) ? value_text(call.arguments[param]) : call.arguments.dump();
        auto completion = client.complete(cfg.value("model", spec.name), {{"user", prompt}});
        ExecOutcome out;
        out.payload = completion.content;
        out.tokens_in = completion.prompt_tokens;
        out.tokens_out = completion.completion_tokens;
        return out;
    }
};

}  // namespace

double evaluate_expression(std::string_view expr)
{
    return ExpressionParser(expr).parse();
}

std::string format_number(double value)
{
    if (std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 1e15)
        return std::to_string(static_cast<long long>(value));
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

std::shared_ptr<const Executor> make_calculator_executor() { return std::make_shared<CalculatorExecutor>(); }
std::shared_ptr<const Executor> make_scripted_executor() { return std::make_shared<ScriptedExecutor>(); }
std::shared_ptr<const Executor> make_search_executor() { return std::make_shared<SearchExecutor>(); }
std::shared_ptr<const Executor> make_oracle_answer_executor() { return std::make_shared<OracleAnswerExecutor>(); }
std::shared_ptr<const Executor> make_http_chat_executor() { return std::make_shared<HttpChatExecutor>(); }

const ExecutorRegistry& ExecutorRegistry::builtin()
{
    static const ExecutorRegistry registry = [] {
        ExecutorRegistry r;
        r.add("calculator", make_calculator_executor());
        r.add("scripted", make_scripted_executor());
        r.add("search", make_search_executor());
        r.add("oracle_answer", make_oracle_answer_executor());
        r.add("http_chat", make_http_chat_executor());
        r.add("db", make_db_executor());
        return r;
    }();
    return registry;
}

json chat_request_json(std::string_view model, const std::vector<ChatMessage>& messages)
{
    json msgs = json::array();
    for (const auto& m : messages)
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    return {{"model", model}, {"messages", msgs}};
}

ChatCompletion parse_chat_response(const json& body)
{
    try {
        ChatCompletion c;
        c.content = body.at("content").get<std::string>();
        const auto& usage = body.at("usage");
        c.prompt_tokens = usage.at("prompt_tokens").get<std::int64_t>();
        c.completion_tokens = usage.at("completion_tokens").get<std::int64_t>();
        if (c.prompt_tokens < 0 || c.completion_tokens < 0)
            throw Error("negative token usage");
        return c;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed chat response: ") + e.what());
    }
}

HttpChatClient::HttpChatClient(std::string url, std::string api_key, double timeout_seconds)
    : api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds)
{
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("endpoint url needs a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    scheme_host_port_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

ChatCompletion HttpChatClient::complete(std::string_view model, const std::vector<ChatMessage>& messages) const
{
    httplib::Client client(scheme_host_port_);
    auto seconds = static_cast<time_t>(timeout_seconds_);
    client.set_connection_timeout(seconds, 0);
    client.set_read_timeout(seconds, 0);
    httplib::Headers headers;
    if (!api_key_.empty())
        headers.emplace("Authorization", "Bearer " + api_key_);
    auto response = client.Post(path_, headers, chat_request_json(model, messages).dump(), "application/json");
    if (!response)
        throw Error("endpoint unreachable: " + httplib::to_string(response.error()));
    if (response->status != 200)
        throw Error("endpoint returned HTTP " + std::to_string(response->status));
    json body;
    try {
        body = json::parse(response->body);
    } catch (const json::exception& e) {
        throw Error(std::string("endpoint returned invalid JSON: ") + e.what());
    }
    return parse_chat_response(body);
}

}  // namespace orchestra
