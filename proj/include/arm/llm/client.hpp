#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arm::llm {

enum class RequestKind { GenerateStep, Chat, CompleteSolution };

const char* kind_name(RequestKind kind);
RequestKind kind_from_name(const std::string& name);

struct ClientConfig {
  std::string endpoint_url;
  std::string model_name = "gpt-4.1-nano";
  double temperature = 1.0;
  double top_p = 0.95;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  double rate_limit = 0.0;  // calls per second; 0 disables throttling
};

struct ContextItem {
  std::string name;
  std::string data;
  std::string description;
};

struct ResponseField {
  std::string name;
  std::string description;
};

struct StructuredRequest {
  std::vector<ContextItem> context;
  std::string instructions;
  std::vector<ResponseField> response_format;
};

// Result of chat_completion. Keys always equal the request's response_format
// names, in request order; unparseable fields are empty and flagged.
struct FieldMap {
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> missing;

  const std::string* find(const std::string& name) const;
  const std::string& at(const std::string& name) const;
  bool flagged(const std::string& name) const;
};

struct CallRecord {
  std::string request_hash;
  RequestKind kind = RequestKind::GenerateStep;
  std::string prompt;
  std::string response;
  uint64_t sample_index = 0;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  double latency_ms = 0.0;
  bool cache_hit = false;
};

using CallSink = std::function<void(const CallRecord&)>;

struct UsageSnapshot {
  uint64_t calls = 0;
  uint64_t network_calls = 0;
  uint64_t prompt_tokens = 0;
  uint64_t completion_tokens = 0;
};

struct BackendResult {
  std::string text;
  long prompt_tokens = -1;      // -1: unknown, client estimates
  long completion_tokens = -1;
  double latency_ms = 0.0;
  bool network = false;
};

// Transport layer: rendered prompt in, raw completion text out.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendResult complete(RequestKind kind, const std::string& prompt,
                                 uint64_t sample_index, const std::string& request_hash) = 0;
};

// Uniform gateway for all model interactions. Shareable across threads;
// usage counters and the budget gate are internally synchronized.
class LlmClient {
 public:
  LlmClient(ClientConfig config, std::shared_ptr<Backend> backend);

  // Hard gate: total logical calls never exceed the budget. 0 = unlimited.
  void set_budget(uint64_t max_calls) { budget_ = max_calls; }

  UsageSnapshot usage() const;
  const ClientConfig& config() const { return config_; }

  // One next-step continuation for the given problem and partial progress.
  std::string generate_step(const std::string& problem, const std::string& partial_progress,
                            uint64_t sample_index = 0, const CallSink& sink = nullptr);

  // Structured request; the result carries exactly the requested field names.
  // One reformat retry when sections are missing; MalformedResponse when the
  // response stays entirely unparseable.
  FieldMap chat_completion(const StructuredRequest& request, uint64_t sample_index = 0,
                           const CallSink& sink = nullptr);

  // Full completion that must terminate in a boxed answer; one retry with an
  // explicit instruction, then NoAnswerProduced.
  std::string complete_solution(const std::string& problem, const std::string& partial,
                                uint64_t sample_index = 0, const CallSink& sink = nullptr);

  std::string request_hash(RequestKind kind, const std::string& prompt,
                           uint64_t sample_index) const;

  static std::string render_generate_step(const std::string& problem,
                                          const std::string& partial_progress);
  static std::string render_complete_solution(const std::string& problem,
                                              const std::string& partial);
  static std::string render_chat(const StructuredRequest& request);

  // Section scan used for structured responses; exposed for the mock
  // auto-responder and tests.
  static FieldMap parse_sections(const std::string& response,
                                 const std::vector<ResponseField>& fields);

 private:
  CallRecord raw_call(RequestKind kind, const std::string& prompt, uint64_t sample_index,
                      const CallSink& sink);

  ClientConfig config_;
  std::shared_ptr<Backend> backend_;
  uint64_t budget_ = 0;
  std::atomic<uint64_t> calls_{0};
  std::atomic<uint64_t> network_calls_{0};
  std::atomic<uint64_t> prompt_tokens_{0};
  std::atomic<uint64_t> completion_tokens_{0};
};

long estimate_tokens(const std::string& text);

}  // namespace arm::llm
