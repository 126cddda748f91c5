#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace krag::llm {

enum class Role { system, user, assistant, tool };

const char* role_name(Role r);
std::optional<Role> role_from_name(std::string_view name);

struct ToolCall {
    std::string id;
    std::string name;
    std::string arguments;  // serialized JSON object
};

struct ChatMessage {
    Role role{Role::user};
    std::string content;
    std::vector<ToolCall> tool_calls;
    std::string tool_call_id;  // required when role == tool

    static ChatMessage system(std::string text) { return {Role::system, std::move(text), {}, {}}; }
    static ChatMessage user(std::string text) { return {Role::user, std::move(text), {}, {}}; }
    static ChatMessage assistant(std::string text) {
        return {Role::assistant, std::move(text), {}, {}};
    }
    static ChatMessage tool(std::string call_id, std::string text) {
        return {Role::tool, std::move(text), {}, std::move(call_id)};
    }
};

struct ToolSpec {
    std::string name;
    std::string description;
    nlohmann::json parameters;  // JSON schema for the arguments object
};

struct CompletionRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    std::vector<ToolSpec> tools;
    // Which component issued the call; scripted backends key their
    // responses on (agent_role, turn index).
    std::string agent_role;
};

struct UsageRecord {
    std::int64_t prompt_tokens{0};
    std::int64_t completion_tokens{0};
    double dollar_cost{0.0};
};

struct Budget {
    double limit{0.0};
    double accrued{0.0};

    bool exhausted() const { return accrued >= limit; }
};

// Prices are dollars per 1000 tokens. Unknown models cost zero and warn.
struct PriceTable {
    struct Price {
        double input_per_1k{0.0};
        double output_per_1k{0.0};
    };
    std::map<std::string, Price> models;

    double cost(const std::string& model, std::int64_t prompt_tokens,
                std::int64_t completion_tokens) const;
};

// Crude deterministic token estimate for offline backends: ceil(chars / 4).
std::int64_t estimate_tokens(std::string_view text);
std::int64_t estimate_prompt_tokens(const CompletionRequest& request);
std::int64_t estimate_completion_tokens(const ChatMessage& message);

nlohmann::json message_to_json(const ChatMessage& m);
ChatMessage message_from_json(const nlohmann::json& j);

// Canonical digest of a request, used to key replay cassettes.
std::string request_digest(const CompletionRequest& request);

}  // namespace krag::llm
