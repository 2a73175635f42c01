#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "arm/errors.hpp"
#include "arm/llm/backend.hpp"

namespace arm::llm {

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint url needs a scheme: " + url);
  size_t path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpBackend::HttpBackend(ClientConfig config) : config_(std::move(config)) {
  if (config_.endpoint_url.empty()) throw ConfigError("http backend needs an endpoint url");
}

void HttpBackend::throttle() {
  if (config_.rate_limit <= 0.0) return;
  auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / config_.rate_limit));
  std::chrono::steady_clock::time_point wake;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto now = std::chrono::steady_clock::now();
    if (next_allowed_ < now) next_allowed_ = now;
    wake = next_allowed_;
    next_allowed_ += interval;
  }
  std::this_thread::sleep_until(wake);
}

BackendResult HttpBackend::complete(RequestKind, const std::string& prompt, uint64_t,
                                    const std::string&) {
  ParsedUrl url = parse_url(config_.endpoint_url);
  httplib::Client client(url.base);
  auto timeout = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  client.set_read_timeout(std::max<long>(1, timeout.count()), 0);
  client.set_connection_timeout(std::max<long>(1, timeout.count()), 0);

  httplib::Headers headers;
  if (const char* key = std::getenv("ARM_API_KEY")) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  nlohmann::json body{{"model", config_.model_name},
                      {"messages", nlohmann::json::array({nlohmann::json{
                                       {"role", "user"}, {"content", prompt}}})},
                      {"temperature", config_.temperature},
                      {"top_p", config_.top_p}};
  std::string payload = body.dump();

  std::string last_error;
  int attempts = config_.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(std::min(2000, 50 << attempt)));
    }
    throttle();
    auto t0 = std::chrono::steady_clock::now();
    httplib::Result res = client.Post(url.path, headers, payload, "application/json");
    double latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (retryable_status(res->status)) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ClientError("endpoint returned status " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 200));
    }
    try {
      nlohmann::json reply = nlohmann::json::parse(res->body);
      BackendResult out;
      out.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
      if (reply.contains("usage")) {
        out.prompt_tokens = reply["usage"].value("prompt_tokens", -1L);
        out.completion_tokens = reply["usage"].value("completion_tokens", -1L);
      }
      out.latency_ms = latency_ms;
      out.network = true;
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw ClientError(std::string("unparseable endpoint reply: ") + e.what());
    }
  }
  throw ClientError("retries exhausted (" + std::to_string(attempts) + " attempts): " + last_error);
}

}  // namespace arm::llm
