#pragma once

#include <deque>
#include <filesystem>
#include <map>
#include <mutex>

#include "krag/llm/backend.hpp"

namespace krag::llm {

// Deterministic stand-in for a live model. Responses are consumed per
// agent role in turn order; exhaustion is a hard (non-retriable) error.
class ScriptedBackend final : public Backend {
public:
    struct Response {
        ChatMessage message;
        std::optional<UsageRecord> usage;
    };

    void add(const std::string& agent_role, Response response);
    void add_text(const std::string& agent_role, std::string content);
    void add_tool_call(const std::string& agent_role, const std::string& name,
                       const nlohmann::json& arguments, std::optional<UsageRecord> usage = {});

    // JSON script: {"responses": {"<role>": [{"content": ..., "tool_calls":
    // [{"name":..., "arguments": {...}}], "usage": {...}}, ...]}}
    static std::shared_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

    BackendResponse complete(const CompletionRequest& request) override;
    const char* name() const override { return "scripted"; }

private:
    std::mutex mu_;
    std::map<std::string, std::deque<Response>> scripts_;
    std::map<std::string, int> turn_;
    int call_counter_{0};
};

// Passes requests through and appends (digest, response, usage) records
// to a cassette file.
class RecordingBackend final : public Backend {
public:
    RecordingBackend(BackendPtr inner, std::filesystem::path cassette_path);

    BackendResponse complete(const CompletionRequest& request) override;
    const char* name() const override { return "recording"; }

private:
    BackendPtr inner_;
    std::filesystem::path path_;
    std::mutex mu_;
    bool truncated_{false};
};

class ReplayError : public BackendError {
public:
    explicit ReplayError(std::string msg) : BackendError(std::move(msg), false) {}
};

// Replays a cassette in order; any digest divergence is a hard error
// naming the first mismatched call.
class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(const std::filesystem::path& cassette_path);

    BackendResponse complete(const CompletionRequest& request) override;
    const char* name() const override { return "replay"; }
    std::size_t remaining() const { return entries_.size() - next_; }

private:
    struct Entry {
        std::string digest;
        ChatMessage message;
        UsageRecord usage;
    };
    std::mutex mu_;
    std::vector<Entry> entries_;
    std::size_t next_{0};
};

// POST chat-completions client. Bearer token read from `api_key_env`;
// an unset variable sends no Authorization header (for local servers).
class HttpBackend final : public Backend {
public:
    struct Options {
        std::string base_url;             // e.g. "http://127.0.0.1:8080"
        std::string path = "/v1/chat/completions";
        std::string api_key_env = "KRAG_API_KEY";
        int timeout_seconds = 120;
    };

    explicit HttpBackend(Options options) : options_(std::move(options)) {}

    BackendResponse complete(const CompletionRequest& request) override;
    const char* name() const override { return "http"; }

private:
    Options options_;
};

nlohmann::json request_to_wire_json(const CompletionRequest& request);

}  // namespace krag::llm
