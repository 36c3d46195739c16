#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "orchestra/tool_registry.hpp"

namespace orchestra {

// Arithmetic over + - * / and parentheses. Throws Error on malformed input
// or division by zero.
double evaluate_expression(std::string_view expr);

// Integral results render without a decimal point, others with %.10g.
std::string format_number(double value);

// {"type": "calculator"}; reads the `expr` argument.
std::shared_ptr<const Executor> make_calculator_executor();

// {"type": "scripted", "payload": "text with {param} placeholders"}
std::shared_ptr<const Executor> make_scripted_executor();

// {"type": "search", "corpus": [{"id", "text"}], "top_k": 3}; ranks by
// query-term overlap, ties broken by corpus order.
std::shared_ptr<const Executor> make_search_executor();

// Simulated answering model:
// {"type": "oracle_answer", "accuracy": 0.9, "tokens_in": 2000, "tokens_out": 400}.
// Returns the task's gold answer with probability `accuracy`, seeded by
// (context seed, task id, turn, tool), otherwise a wrong answer.
std::shared_ptr<const Executor> make_oracle_answer_executor();

// Chat-completions-shaped HTTP endpoint:
// {"type": "http_chat", "url": "http://host:port/path", "model": "...",
//  "api_key_env": "ENV_VAR", "timeout_s": 30, "prompt_param": "prompt"}
// Request  {model, messages:[{role, content}]}
// Response {content, usage:{prompt_tokens, completion_tokens}}
std::shared_ptr<const Executor> make_http_chat_executor();

// DomainDB-backed domain functions (see env_sim).
std::shared_ptr<const Executor> make_db_executor();

struct ChatMessage {
    std::string role;
    std::string content;
};

struct ChatCompletion {
    std::string content;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
};

json chat_request_json(std::string_view model, const std::vector<ChatMessage>& messages);
ChatCompletion parse_chat_response(const json& body);

// Minimal client for the chat-completions contract above.
class HttpChatClient {
public:
    HttpChatClient(std::string url, std::string api_key = {}, double timeout_seconds = 30.0);

    ChatCompletion complete(std::string_view model, const std::vector<ChatMessage>& messages) const;

private:
    std::string scheme_host_port_;
    std::string path_;
    std::string api_key_;
    double timeout_seconds_;
};

}  // namespace orchestra
