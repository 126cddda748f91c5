#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "krag/llm/types.hpp"

namespace krag::llm {

// Raised by backends; `retriable` marks transport-level faults
// (connection errors, 5xx, 429) that the gateway may retry.
class BackendError : public std::runtime_error {
public:
    BackendError(std::string msg, bool retriable)
        : std::runtime_error(std::move(msg)), retriable_(retriable) {}
    bool retriable() const { return retriable_; }

private:
    bool retriable_;
};

struct BackendResponse {
    ChatMessage message;
    // Token counts when the backend reports them; estimated otherwise.
    std::optional<UsageRecord> usage;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendResponse complete(const CompletionRequest& request) = 0;
    virtual const char* name() const = 0;
};

using BackendPtr = std::shared_ptr<Backend>;

}  // namespace krag::llm
