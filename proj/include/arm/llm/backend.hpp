#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arm/llm/client.hpp"

namespace arm::llm {

// Deterministic scripted backend for tests and offline runs. Rules are
// matched in insertion order; a rule fires when its kind and every substring
// match the request. Rules serve their responses FIFO and, once drained,
// keep serving the last one.
class ScriptedBackend : public Backend {
 public:
  struct Rule {
    std::optional<RequestKind> kind;
    std::vector<std::string> contains;
    std::optional<uint64_t> sample_index;
    std::vector<std::string> responses;
    bool sticky = true;
    size_t used = 0;
  };

  void add_rule(Rule rule);
  void respond(RequestKind kind, std::vector<std::string> contains, std::string response);
  void respond_seq(RequestKind kind, std::vector<std::string> contains,
                   std::vector<std::string> responses);

  using DefaultFn = std::function<std::string(RequestKind, const std::string&, uint64_t)>;
  void set_default(DefaultFn fn) { default_fn_ = std::move(fn); }

  // Fallback that answers any structured request with plausible per-field
  // defaults (ratings "7", flaw "None", Valid "Yes", ...), and plain steps
  // otherwise. Field names are recovered from the rendered prompt.
  void enable_auto_defaults();

  BackendResult complete(RequestKind kind, const std::string& prompt, uint64_t sample_index,
                         const std::string& request_hash) override;

  size_t calls() const;
  std::vector<std::pair<RequestKind, std::string>> seen() const;

  // "### name\nvalue" sections, the shape chat_completion parses.
  static std::string sections(const std::vector<std::pair<std::string, std::string>>& kv);

 private:
  mutable std::mutex mu_;
  std::vector<Rule> rules_;
  DefaultFn default_fn_;
  std::vector<std::pair<RequestKind, std::string>> seen_;
};

// Auto-default response used by ScriptedBackend::enable_auto_defaults; also
// handy for hand-built defaults in tests.
std::string auto_default_response(RequestKind kind, const std::string& prompt);

// Append-only JSON-lines record/replay cache keyed by request hash.
// With an inner backend it records read-through; without one every miss
// raises ReplayMiss (wrapped in ClientError by the client contract).
class CacheBackend : public Backend {
 public:
  CacheBackend(std::string path, std::shared_ptr<Backend> inner);

  BackendResult complete(RequestKind kind, const std::string& prompt, uint64_t sample_index,
                         const std::string& request_hash) override;

  size_t size() const;

 private:
  struct Entry {
    std::string response;
    long prompt_tokens;
    long completion_tokens;
    double latency_ms;
  };
  void load();
  void append(const std::string& hash, RequestKind kind, const std::string& prompt,
              const Entry& e);

  mutable std::mutex mu_;
  std::string path_;
  std::shared_ptr<Backend> inner_;
  std::map<std::string, Entry> entries_;
};

// HTTP chat-completions backend (POST {model, messages, temperature, top_p}).
// Owns retry with exponential backoff on 429/5xx/transport errors and the
// per-call rate limiter. Bearer token from the ARM_API_KEY environment
// variable.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(ClientConfig config);

  BackendResult complete(RequestKind kind, const std::string& prompt, uint64_t sample_index,
                         const std::string& request_hash) override;

 private:
  void throttle();

  ClientConfig config_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_allowed_{};
};

}  // namespace arm::llm
