#include "arm/llm/client.hpp"

#include <sstream>

#include "arm/errors.hpp"
#include "arm/llm/prompts.hpp"
#include "arm/trace.hpp"
#include "arm/util.hpp"

namespace arm::llm {

const char* kind_name(RequestKind kind) {
  switch (kind) {
    case RequestKind::GenerateStep: return "generate_step";
    case RequestKind::Chat: return "chat";
    case RequestKind::CompleteSolution: return "complete_solution";
  }
  return "unknown";
}

RequestKind kind_from_name(const std::string& name) {
  if (name == "generate_step") return RequestKind::GenerateStep;
  if (name == "chat") return RequestKind::Chat;
  if (name == "complete_solution") return RequestKind::CompleteSolution;
  throw Error("unknown request kind: " + name);
}

const std::string* FieldMap::find(const std::string& name) const {
  for (const auto& [k, v] : fields) {
    if (k == name) return &v;
  }
  return nullptr;
}

const std::string& FieldMap::at(const std::string& name) const {
  const std::string* v = find(name);
  if (!v) throw Error("field map has no field: " + name);
  return *v;
}

bool FieldMap::flagged(const std::string& name) const {
  for (const auto& m : missing) {
    if (m == name) return true;
  }
  return false;
}

long estimate_tokens(const std::string& text) {
  return static_cast<long>((text.size() + 3) / 4);
}

namespace {

std::string substitute(std::string tmpl, const std::string& problem, const std::string& partial) {
  auto replace_once = [](std::string& s, const std::string& key, const std::string& value) {
    size_t pos = s.find(key);
    if (pos != std::string::npos) s.replace(pos, key.size(), value);
  };
  replace_once(tmpl, "{problem}", problem);
  replace_once(tmpl, "{partial_progress}", partial.empty() ? "(none yet)" : partial);
  return tmpl;
}

// Strip one leading trace header if the model echoed it; the serializer owns
// the "### Step k" framing.
std::string strip_step_header(const std::string& text) {
  std::string t = trim(text);
  if (!starts_with(t, "### Step ")) return t;
  size_t nl = t.find('\n');
  if (nl == std::string::npos) return t;
  std::string head = trim(t.substr(0, nl));
  size_t k = 9;
  while (k < head.size() && std::isdigit(static_cast<unsigned char>(head[k]))) ++k;
  if (k == 9 || k != head.size()) return t;
  return trim(t.substr(nl + 1));
}

}  // namespace

LlmClient::LlmClient(ClientConfig config, std::shared_ptr<Backend> backend)
    : config_(std::move(config)), backend_(std::move(backend)) {}

UsageSnapshot LlmClient::usage() const {
  UsageSnapshot s;
  s.calls = calls_.load();
  s.network_calls = network_calls_.load();
  s.prompt_tokens = prompt_tokens_.load();
  s.completion_tokens = completion_tokens_.load();
  return s;
}

std::string LlmClient::request_hash(RequestKind kind, const std::string& prompt,
                                    uint64_t sample_index) const {
  std::ostringstream key;
  key << kind_name(kind) << '\x1f' << config_.model_name << '\x1f' << config_.temperature << '\x1f'
      << config_.top_p << '\x1f' << sample_index << '\x1f' << prompt;
  return hash_hex(fnv1a(key.str()));
}

CallRecord LlmClient::raw_call(RequestKind kind, const std::string& prompt, uint64_t sample_index,
                               const CallSink& sink) {
  uint64_t n = calls_.fetch_add(1);
  if (budget_ != 0 && n >= budget_) {
    calls_.fetch_sub(1);
    throw BudgetExceeded(budget_);
  }

  CallRecord rec;
  rec.kind = kind;
  rec.prompt = prompt;
  rec.sample_index = sample_index;
  rec.request_hash = request_hash(kind, prompt, sample_index);

  BackendResult result = backend_->complete(kind, prompt, sample_index, rec.request_hash);
  rec.response = result.text;
  rec.latency_ms = result.latency_ms;
  rec.cache_hit = !result.network;
  rec.prompt_tokens =
      result.prompt_tokens >= 0 ? result.prompt_tokens : estimate_tokens(prompt);
  rec.completion_tokens =
      result.completion_tokens >= 0 ? result.completion_tokens : estimate_tokens(result.text);

  if (result.network) network_calls_.fetch_add(1);
  prompt_tokens_.fetch_add(static_cast<uint64_t>(rec.prompt_tokens));
  completion_tokens_.fetch_add(static_cast<uint64_t>(rec.completion_tokens));
  if (sink) sink(rec);
  return rec;
}

std::string LlmClient::render_generate_step(const std::string& problem,
                                            const std::string& partial_progress) {
  return substitute(prompts::kGenerateStep, problem, partial_progress);
}

std::string LlmClient::render_complete_solution(const std::string& problem,
                                                const std::string& partial) {
  return substitute(prompts::kCompleteSolution, problem, partial);
}

std::string LlmClient::render_chat(const StructuredRequest& request) {
  std::ostringstream out;
  for (const ContextItem& item : request.context) {
    out << "### " << item.name << "\n";
    if (!item.description.empty()) out << "(" << item.description << ")\n";
    out << item.data << "\n\n";
  }
  out << "### Instructions\n" << request.instructions << "\n\n";
  out << prompts::kChatResponseHeader << "\n";
  for (const ResponseField& f : request.response_format) {
    out << "### " << f.name << "\n(" << f.description << ")\n";
  }
  return out.str();
}

FieldMap LlmClient::parse_sections(const std::string& response,
                                   const std::vector<ResponseField>& fields) {
  FieldMap out;
  std::vector<std::string> lines = split_lines(response);

  // A line opens a section when, stripped of '#' framing and a trailing
  // colon, it case-insensitively equals a requested field name.
  auto header_field = [&](const std::string& line) -> int {
    std::string t = trim(line);
    size_t h = 0;
    while (h < t.size() && t[h] == '#') ++h;
    if (h > 0 && h < t.size() && t[h] != ' ') return -1;  // e.g. "#include"
    t = trim(t.substr(h));
    bool had_hash = h > 0;
    if (!t.empty() && t.back() == ':') t = trim(t.substr(0, t.size() - 1));
    else if (!had_hash) return -1;  // bare text lines only count with a colon
    std::string lower = to_lower(t);
    for (size_t i = 0; i < fields.size(); ++i) {
      if (to_lower(fields[i].name) == lower) return static_cast<int>(i);
    }
    return -1;
  };

  std::vector<std::string> values(fields.size());
  std::vector<bool> present(fields.size(), false);
  int current = -1;
  std::string buffer;
  auto flush = [&]() {
    if (current >= 0) {
      values[static_cast<size_t>(current)] = trim(buffer);
      present[static_cast<size_t>(current)] = true;
    }
    buffer.clear();
  };
  for (const std::string& line : lines) {
    int idx = header_field(line);
    if (idx >= 0) {
      flush();
      current = idx;
    } else if (current >= 0) {
      if (!buffer.empty()) buffer += "\n";
      buffer += line;
    }
  }
  flush();

  // Single-field requests may come back as bare text ("Output ONLY the
  // integer confidence" style instructions produce exactly that).
  if (fields.size() == 1 && !present[0] && !trim(response).empty()) {
    values[0] = trim(response);
    present[0] = true;
  }

  for (size_t i = 0; i < fields.size(); ++i) {
    out.fields.emplace_back(fields[i].name, values[i]);
    if (!present[i]) out.missing.push_back(fields[i].name);
  }
  return out;
}

std::string LlmClient::generate_step(const std::string& problem,
                                     const std::string& partial_progress, uint64_t sample_index,
                                     const CallSink& sink) {
  CallRecord rec =
      raw_call(RequestKind::GenerateStep, render_generate_step(problem, partial_progress),
               sample_index, sink);
  return strip_step_header(rec.response);
}

FieldMap LlmClient::chat_completion(const StructuredRequest& request, uint64_t sample_index,
                                    const CallSink& sink) {
  if (request.response_format.empty()) throw ClientError("chat_completion: empty response_format");

  std::string prompt = render_chat(request);
  CallRecord rec = raw_call(RequestKind::Chat, prompt, sample_index, sink);
  FieldMap parsed = parse_sections(rec.response, request.response_format);
  if (parsed.missing.empty()) return parsed;

  // One reformat retry listing the missing sections.
  std::ostringstream retry;
  retry << prompt << "\n\nYour previous response was missing the sections:";
  for (const auto& name : parsed.missing) retry << " " << name;
  retry << ". Respond again with every requested section, each under its own '### <name>' header.";
  CallRecord rec2 = raw_call(RequestKind::Chat, retry.str(), sample_index, sink);
  FieldMap reparsed = parse_sections(rec2.response, request.response_format);

  if (reparsed.missing.size() == request.response_format.size()) {
    if (parsed.missing.size() == request.response_format.size()) {
      throw MalformedResponse("no requested section recognizable after reformat retry");
    }
    return parsed;  // first response was the better one
  }
  return reparsed;
}

std::string LlmClient::complete_solution(const std::string& problem, const std::string& partial,
                                         uint64_t sample_index, const CallSink& sink) {
  std::string prompt = render_complete_solution(problem, partial);
  CallRecord rec = raw_call(RequestKind::CompleteSolution, prompt, sample_index, sink);
  if (find_last_boxed(rec.response)) return trim(rec.response);

  CallRecord rec2 = raw_call(RequestKind::CompleteSolution,
                             prompt + prompts::kCompleteSolutionRetrySuffix, sample_index, sink);
  if (find_last_boxed(rec2.response)) return trim(rec2.response);
  throw NoAnswerProduced();
}

}  // namespace arm::llm
