#include "arm/llm/backend.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "arm/errors.hpp"
#include "arm/llm/prompts.hpp"
#include "arm/util.hpp"

namespace arm::llm {

// --- ScriptedBackend ---

void ScriptedBackend::add_rule(Rule rule) {
  std::lock_guard<std::mutex> lock(mu_);
  rules_.push_back(std::move(rule));
}

void ScriptedBackend::respond(RequestKind kind, std::vector<std::string> contains,
                              std::string response) {
  Rule r;
  r.kind = kind;
  r.contains = std::move(contains);
  r.responses = {std::move(response)};
  add_rule(std::move(r));
}

void ScriptedBackend::respond_seq(RequestKind kind, std::vector<std::string> contains,
                                  std::vector<std::string> responses) {
  Rule r;
  r.kind = kind;
  r.contains = std::move(contains);
  r.responses = std::move(responses);
  r.sticky = false;
  add_rule(std::move(r));
}

std::string ScriptedBackend::sections(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream out;
  for (const auto& [k, v] : kv) out << "### " << k << "\n" << v << "\n";
  return out.str();
}

std::string auto_default_response(RequestKind kind, const std::string& prompt) {
  if (kind != RequestKind::Chat) {
    return "Proceeding with the next step of the computation.";
  }
  // Recover the requested section names from the rendered prompt.
  std::vector<std::string> names;
  size_t pos = prompt.find(prompts::kChatResponseHeader);
  if (pos != std::string::npos) {
    for (const std::string& line : split_lines(prompt.substr(pos))) {
      if (starts_with(line, "### ")) names.push_back(trim(line.substr(4)));
    }
  }
  std::ostringstream out;
  for (const std::string& name : names) {
    std::string low = to_lower(name);
    std::string value = "ok";
    if (low.find("rating") != std::string::npos) value = "7";
    else if (low.find("critique") != std::string::npos) value = "Reasonable step.";
    else if (low.find("winner") != std::string::npos) value = "Candidate A";
    else if (low.find("justification") != std::string::npos) value = "Stronger reasoning.";
    else if (low.find("flaw") != std::string::npos) value = "None";
    else if (low.find("severity") != std::string::npos) value = "2";
    else if (low.find("confidence") != std::string::npos) value = "3";
    else if (low.find("valid") != std::string::npos) value = "Yes";
    else if (low.find("verdict") != std::string::npos) value = "CORRECT";
    else if (low.find("answer") != std::string::npos) value = "0";
    out << "### " << name << "\n" << value << "\n";
  }
  return out.str();
}

void ScriptedBackend::enable_auto_defaults() {
  set_default([](RequestKind kind, const std::string& prompt, uint64_t) {
    return auto_default_response(kind, prompt);
  });
}

BackendResult ScriptedBackend::complete(RequestKind kind, const std::string& prompt,
                                        uint64_t sample_index, const std::string&) {
  std::lock_guard<std::mutex> lock(mu_);
  seen_.emplace_back(kind, prompt);
  for (Rule& r : rules_) {
    if (r.kind && *r.kind != kind) continue;
    if (r.sample_index && *r.sample_index != sample_index) continue;
    bool match = true;
    for (const std::string& needle : r.contains) {
      if (prompt.find(needle) == std::string::npos) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    if (r.used >= r.responses.size()) {
      if (!r.sticky) continue;  // drained, fall through to later rules
      return {r.responses.back(), -1, -1, 0.0, false};
    }
    return {r.responses[r.used++], -1, -1, 0.0, false};
  }
  if (default_fn_) return {default_fn_(kind, prompt, sample_index), -1, -1, 0.0, false};
  throw ClientError("scripted backend has no rule for " + std::string(kind_name(kind)) +
                    " prompt: " + prompt.substr(0, 120));
}

size_t ScriptedBackend::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return seen_.size();
}

std::vector<std::pair<RequestKind, std::string>> ScriptedBackend::seen() const {
  std::lock_guard<std::mutex> lock(mu_);
  return seen_;
}

// --- CacheBackend ---

CacheBackend::CacheBackend(std::string path, std::shared_ptr<Backend> inner)
    : path_(std::move(path)), inner_(std::move(inner)) {
  load();
}

void CacheBackend::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;  // absent cache file is an empty cache
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      nlohmann::json rec = nlohmann::json::parse(line);
      Entry e{rec.at("response").get<std::string>(), rec.value("prompt_tokens", -1L),
              rec.value("completion_tokens", -1L), rec.value("latency_ms", 0.0)};
      entries_.emplace(rec.at("hash").get<std::string>(), std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw CorruptState(path_, "cache line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
}

void CacheBackend::append(const std::string& hash, RequestKind kind, const std::string& prompt,
                          const Entry& e) {
  nlohmann::json rec{{"hash", hash},
                     {"kind", kind_name(kind)},
                     {"prompt", prompt},
                     {"response", e.response},
                     {"prompt_tokens", e.prompt_tokens},
                     {"completion_tokens", e.completion_tokens},
                     {"latency_ms", e.latency_ms}};
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to cache: " + path_);
  out << rec.dump() << "\n";
  out.flush();
}

BackendResult CacheBackend::complete(RequestKind kind, const std::string& prompt,
                                     uint64_t sample_index, const std::string& request_hash) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(request_hash);
    if (it != entries_.end()) {
      return {it->second.response, it->second.prompt_tokens, it->second.completion_tokens,
              it->second.latency_ms, false};
    }
  }
  if (!inner_) throw ClientError(ReplayMiss(request_hash).what());
  BackendResult result = inner_->complete(kind, prompt, sample_index, request_hash);
  Entry e{result.text, result.prompt_tokens, result.completion_tokens, result.latency_ms};
  std::lock_guard<std::mutex> lock(mu_);
  if (entries_.emplace(request_hash, e).second) append(request_hash, kind, prompt, e);
  return result;
}

size_t CacheBackend::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

}  // namespace arm::llm
