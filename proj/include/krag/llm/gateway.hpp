#pragma once

#include <functional>
#include <mutex>

#include "krag/llm/backend.hpp"

namespace krag::llm {

enum class CompletionStatus {
    ok,
    budget_halt,  // budget exhausted before dispatch; not an error
    error,        // hard gateway failure after retries
};

struct CompletionResult {
    CompletionStatus status{CompletionStatus::error};
    ChatMessage message;
    UsageRecord usage;
    std::string error;

    bool ok() const { return status == CompletionStatus::ok; }
};

struct GatewayOptions {
    int max_attempts = 3;
    int backoff_initial_ms = 1000;
    // Injectable so tests do not sleep for real.
    std::function<void(int /*ms*/)> sleeper;
};

// Uniform completion interface: cost accounting against a price table,
// pre-dispatch budget checks, and bounded retries on retriable faults.
class Gateway {
public:
    Gateway(BackendPtr backend, PriceTable prices, std::string default_model,
            GatewayOptions options = {});

    // Budget checked before each dispatch; calls themselves are atomic, so
    // the final accrued total can overshoot by at most one call.
    void attach_budget(Budget* budget) { budget_ = budget; }

    CompletionResult complete(CompletionRequest request);

    const std::vector<UsageRecord>& ledger() const { return ledger_; }
    double total_cost() const;
    const std::string& default_model() const { return default_model_; }
    Backend& backend() { return *backend_; }

private:
    BackendPtr backend_;
    PriceTable prices_;
    std::string default_model_;
    GatewayOptions options_;
    Budget* budget_{nullptr};
    std::vector<UsageRecord> ledger_;
    std::mutex mu_;
};

// Tool-call plumbing over assistant messages.
std::vector<ToolCall> parse_tool_calls(const ChatMessage& assistant);

struct ParsedArguments {
    nlohmann::json value;
    std::string error;  // non-empty on malformed arguments

    bool ok() const { return error.empty(); }
};
ParsedArguments parse_arguments(const ToolCall& call);

// Error surfaced to the agent as an ordinary tool message, not a crash.
ChatMessage tool_error_message(const std::string& call_id, const std::string& text);

}  // namespace krag::llm
