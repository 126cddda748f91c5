#include "krag/llm/backends.hpp"

#include <cstdlib>

#include <httplib.h>

#include "krag/util/io.hpp"

namespace krag::llm {

using nlohmann::json;

// ---------------------------------------------------------------- scripted

void ScriptedBackend::add(const std::string& agent_role, Response response) {
    std::lock_guard<std::mutex> lock(mu_);
    scripts_[agent_role].push_back(std::move(response));
}

void ScriptedBackend::add_text(const std::string& agent_role, std::string content) {
    add(agent_role, Response{ChatMessage::assistant(std::move(content)), std::nullopt});
}

void ScriptedBackend::add_tool_call(const std::string& agent_role, const std::string& name,
                                    const json& arguments, std::optional<UsageRecord> usage) {
    ChatMessage m = ChatMessage::assistant("");
    m.tool_calls.push_back(ToolCall{"", name, arguments.dump()});
    add(agent_role, Response{std::move(m), usage});
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
    auto backend = std::make_shared<ScriptedBackend>();
    json doc = json::parse(util::read_file(path));
    for (const auto& [role, responses] : doc.at("responses").items()) {
        for (const auto& r : responses) {
            Response resp;
            if (r.contains("content") && !r["content"].is_null())
                resp.message = ChatMessage::assistant(r["content"].get<std::string>());
            else
                resp.message = ChatMessage::assistant("");
            if (r.contains("tool_calls")) {
                for (const auto& c : r["tool_calls"]) {
                    ToolCall tc;
                    tc.name = c.at("name").get<std::string>();
                    tc.arguments = c.contains("arguments")
                                       ? (c["arguments"].is_string()
                                              ? c["arguments"].get<std::string>()
                                              : c["arguments"].dump())
                                       : "{}";
                    resp.message.tool_calls.push_back(std::move(tc));
                }
            }
            if (r.contains("usage")) {
                UsageRecord u;
                u.prompt_tokens = r["usage"].value("prompt_tokens", 0);
                u.completion_tokens = r["usage"].value("completion_tokens", 0);
                resp.usage = u;
            }
            backend->add(role, std::move(resp));
        }
    }
    return backend;
}

BackendResponse ScriptedBackend::complete(const CompletionRequest& request) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = scripts_.find(request.agent_role);
    if (it == scripts_.end() || it->second.empty())
        throw BackendError("scripted backend has no response for role '" + request.agent_role +
                               "' at turn " + std::to_string(turn_[request.agent_role]),
                           /*retriable=*/false);
    Response next = std::move(it->second.front());
    it->second.pop_front();
    int turn = turn_[request.agent_role]++;

    // Stable synthetic ids keyed by (role, turn) so transcripts replay
    // byte-identically.
    int idx = 0;
    for (auto& tc : next.message.tool_calls) {
        if (tc.id.empty())
            tc.id = "call_" + request.agent_role + "_" + std::to_string(turn) + "_" +
                    std::to_string(idx);
        ++idx;
    }
    ++call_counter_;
    return BackendResponse{std::move(next.message), next.usage};
}

// --------------------------------------------------------------- recording

RecordingBackend::RecordingBackend(BackendPtr inner, std::filesystem::path cassette_path)
    : inner_(std::move(inner)), path_(std::move(cassette_path)) {}

BackendResponse RecordingBackend::complete(const CompletionRequest& request) {
    BackendResponse response = inner_->complete(request);
    UsageRecord usage = response.usage.value_or(UsageRecord{
        estimate_prompt_tokens(request), estimate_completion_tokens(response.message), 0.0});

    std::lock_guard<std::mutex> lock(mu_);
    if (!truncated_) {
        util::write_file(path_, "");
        truncated_ = true;
    }
    json rec = {{"digest", request_digest(request)},
                {"message", message_to_json(response.message)},
                {"usage",
                 {{"prompt_tokens", usage.prompt_tokens},
                  {"completion_tokens", usage.completion_tokens}}}};
    util::append_line(path_, rec.dump());
    // Recorded usage becomes authoritative so replay reproduces costs.
    response.usage = usage;
    return response;
}

// ------------------------------------------------------------------ replay

ReplayBackend::ReplayBackend(const std::filesystem::path& cassette_path) {
    for (const auto& line : util::read_lines(cassette_path)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        Entry e;
        e.digest = rec.at("digest").get<std::string>();
        e.message = message_from_json(rec.at("message"));
        e.usage.prompt_tokens = rec.at("usage").value("prompt_tokens", 0);
        e.usage.completion_tokens = rec.at("usage").value("completion_tokens", 0);
        entries_.push_back(std::move(e));
    }
}

BackendResponse ReplayBackend::complete(const CompletionRequest& request) {
    std::lock_guard<std::mutex> lock(mu_);
    std::string digest = request_digest(request);
    if (next_ >= entries_.size())
        throw ReplayError("replay cassette exhausted at call #" + std::to_string(next_ + 1) +
                          " (digest " + digest + ")");
    const Entry& entry = entries_[next_];
    if (entry.digest != digest)
        throw ReplayError("replay divergence at call #" + std::to_string(next_ + 1) +
                          ": expected digest " + entry.digest + ", got " + digest);
    ++next_;
    return BackendResponse{entry.message, entry.usage};
}

// -------------------------------------------------------------------- http

json request_to_wire_json(const CompletionRequest& request) {
    json body;
    body["model"] = request.model;
    json messages = json::array();
    for (const auto& m : request.messages) {
        json jm;
        jm["role"] = role_name(m.role);
        jm["content"] = m.content;
        if (!m.tool_calls.empty()) {
            json calls = json::array();
            for (const auto& tc : m.tool_calls)
                calls.push_back({{"id", tc.id},
                                 {"type", "function"},
                                 {"function", {{"name", tc.name}, {"arguments", tc.arguments}}}});
            jm["tool_calls"] = calls;
        }
        if (!m.tool_call_id.empty()) jm["tool_call_id"] = m.tool_call_id;
        messages.push_back(jm);
    }
    body["messages"] = messages;
    if (!request.tools.empty()) {
        json tools = json::array();
        for (const auto& t : request.tools)
            tools.push_back({{"type", "function"},
                             {"function",
                              {{"name", t.name},
                               {"description", t.description},
                               {"parameters", t.parameters}}}});
        body["tools"] = tools;
    }
    return body;
}

BackendResponse HttpBackend::complete(const CompletionRequest& request) {
    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_seconds);
    client.set_read_timeout(options_.timeout_seconds);

    httplib::Headers headers;
    if (const char* key = std::getenv(options_.api_key_env.c_str()); key && *key)
        headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = client.Post(options_.path, headers, request_to_wire_json(request).dump(),
                           "application/json");
    if (!res)
        throw BackendError("transport error: " + httplib::to_string(res.error()),
                           /*retriable=*/true);
    if (res->status == 429 || res->status >= 500)
        throw BackendError("http " + std::to_string(res->status) + ": " + res->body,
                           /*retriable=*/true);
    if (res->status != 200)
        throw BackendError("http " + std::to_string(res->status) + ": " + res->body,
                           /*retriable=*/false);

    json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("choices") || doc["choices"].empty())
        throw BackendError("malformed completion response: " + res->body, /*retriable=*/false);

    const json& wire = doc["choices"][0]["message"];
    ChatMessage message;
    message.role = Role::assistant;
    if (wire.contains("content") && !wire["content"].is_null())
        message.content = wire["content"].get<std::string>();
    if (wire.contains("tool_calls")) {
        for (const auto& c : wire["tool_calls"]) {
            ToolCall tc;
            tc.id = c.value("id", "");
            tc.name = c.contains("function") ? c["function"].value("name", "") : c.value("name", "");
            if (c.contains("function") && c["function"].contains("arguments"))
                tc.arguments = c["function"]["arguments"].is_string()
                                   ? c["function"]["arguments"].get<std::string>()
                                   : c["function"]["arguments"].dump();
            message.tool_calls.push_back(std::move(tc));
        }
    }

    std::optional<UsageRecord> usage;
    if (doc.contains("usage")) {
        UsageRecord u;
        u.prompt_tokens = doc["usage"].value("prompt_tokens", 0);
        u.completion_tokens = doc["usage"].value("completion_tokens", 0);
        usage = u;
    }
    return BackendResponse{std::move(message), usage};
}

}  // namespace krag::llm
