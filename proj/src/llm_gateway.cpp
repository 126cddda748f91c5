#include "krag/llm/gateway.hpp"

#include <chrono>
#include <iostream>
#include <thread>

#include "krag/util/fnv.hpp"

namespace krag::llm {

using nlohmann::json;

const char* role_name(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
        case Role::tool: return "tool";
    }
    return "unknown";
}

std::optional<Role> role_from_name(std::string_view name) {
    if (name == "system") return Role::system;
    if (name == "user") return Role::user;
    if (name == "assistant") return Role::assistant;
    if (name == "tool") return Role::tool;
    return std::nullopt;
}

double PriceTable::cost(const std::string& model, std::int64_t prompt_tokens,
                        std::int64_t completion_tokens) const {
    auto it = models.find(model);
    if (it == models.end()) {
        std::cerr << "[gateway] WARNING: no price entry for model '" << model
                  << "'; accounting this call at $0\n";
        return 0.0;
    }
    return static_cast<double>(prompt_tokens) / 1000.0 * it->second.input_per_1k +
           static_cast<double>(completion_tokens) / 1000.0 * it->second.output_per_1k;
}

std::int64_t estimate_tokens(std::string_view text) {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::int64_t estimate_prompt_tokens(const CompletionRequest& request) {
    std::int64_t total = 0;
    for (const auto& m : request.messages) {
        total += estimate_tokens(m.content);
        for (const auto& tc : m.tool_calls) total += estimate_tokens(tc.arguments);
    }
    for (const auto& t : request.tools) total += estimate_tokens(t.description);
    return total;
}

std::int64_t estimate_completion_tokens(const ChatMessage& message) {
    std::int64_t total = estimate_tokens(message.content);
    for (const auto& tc : message.tool_calls) total += estimate_tokens(tc.arguments);
    return total;
}

json message_to_json(const ChatMessage& m) {
    json j;
    j["role"] = role_name(m.role);
    j["content"] = m.content;
    if (!m.tool_calls.empty()) {
        json calls = json::array();
        for (const auto& tc : m.tool_calls)
            calls.push_back({{"id", tc.id}, {"name", tc.name}, {"arguments", tc.arguments}});
        j["tool_calls"] = calls;
    }
    if (!m.tool_call_id.empty()) j["tool_call_id"] = m.tool_call_id;
    return j;
}

ChatMessage message_from_json(const json& j) {
    ChatMessage m;
    auto role = role_from_name(j.value("role", "assistant"));
    m.role = role.value_or(Role::assistant);
    if (j.contains("content") && !j["content"].is_null()) m.content = j["content"].get<std::string>();
    if (j.contains("tool_calls")) {
        for (const auto& c : j["tool_calls"]) {
            ToolCall tc;
            tc.id = c.value("id", "");
            tc.name = c.value("name", "");
            if (c.contains("arguments")) {
                tc.arguments = c["arguments"].is_string() ? c["arguments"].get<std::string>()
                                                          : c["arguments"].dump();
            }
            m.tool_calls.push_back(std::move(tc));
        }
    }
    m.tool_call_id = j.value("tool_call_id", "");
    return m;
}

std::string request_digest(const CompletionRequest& request) {
    std::string canon = request.model;
    canon.push_back('\x1f');
    canon += request.agent_role;
    for (const auto& m : request.messages) {
        canon.push_back('\x1e');
        canon += message_to_json(m).dump();
    }
    for (const auto& t : request.tools) {
        canon.push_back('\x1d');
        canon += t.name;
        canon.push_back('\x1f');
        canon += t.parameters.dump();
    }
    return util::fnv1a64_hex(canon);
}

Gateway::Gateway(BackendPtr backend, PriceTable prices, std::string default_model,
                 GatewayOptions options)
    : backend_(std::move(backend)),
      prices_(std::move(prices)),
      default_model_(std::move(default_model)),
      options_(std::move(options)) {
    if (!options_.sleeper)
        options_.sleeper = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
}

CompletionResult Gateway::complete(CompletionRequest request) {
    if (request.model.empty()) request.model = default_model_;

    std::lock_guard<std::mutex> lock(mu_);
    if (budget_ && budget_->exhausted()) {
        CompletionResult halt;
        halt.status = CompletionStatus::budget_halt;
        halt.error = "budget exhausted: accrued " + std::to_string(budget_->accrued) + " >= limit " +
                     std::to_string(budget_->limit);
        return halt;
    }

    BackendResponse response;
    std::string last_error;
    bool got = false;
    int backoff = options_.backoff_initial_ms;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        try {
            response = backend_->complete(request);
            got = true;
            break;
        } catch (const BackendError& e) {
            last_error = e.what();
            if (!e.retriable()) break;
            if (attempt < options_.max_attempts) {
                options_.sleeper(backoff);
                backoff *= 2;
            }
        } catch (const std::exception& e) {
            last_error = e.what();
            break;
        }
    }
    if (!got) {
        CompletionResult fail;
        fail.status = CompletionStatus::error;
        fail.error = last_error.empty() ? "backend failed" : last_error;
        return fail;
    }

    UsageRecord usage;
    if (response.usage) {
        usage = *response.usage;
    } else {
        usage.prompt_tokens = estimate_prompt_tokens(request);
        usage.completion_tokens = estimate_completion_tokens(response.message);
    }
    usage.dollar_cost = prices_.cost(request.model, usage.prompt_tokens, usage.completion_tokens);
    ledger_.push_back(usage);
    if (budget_) budget_->accrued += usage.dollar_cost;

    CompletionResult result;
    result.status = CompletionStatus::ok;
    result.message = std::move(response.message);
    result.usage = usage;
    return result;
}

double Gateway::total_cost() const {
    double total = 0;
    for (const auto& u : ledger_) total += u.dollar_cost;
    return total;
}

std::vector<ToolCall> parse_tool_calls(const ChatMessage& assistant) {
    return assistant.tool_calls;
}

ParsedArguments parse_arguments(const ToolCall& call) {
    ParsedArguments out;
    if (call.arguments.empty()) {
        out.value = json::object();
        return out;
    }
    json parsed = json::parse(call.arguments, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        out.error = "malformed tool arguments for '" + call.name + "': " + call.arguments;
        return out;
    }
    out.value = std::move(parsed);
    return out;
}

ChatMessage tool_error_message(const std::string& call_id, const std::string& text) {
    return ChatMessage::tool(call_id, "ERROR: " + text);
}

}  // namespace krag::llm
