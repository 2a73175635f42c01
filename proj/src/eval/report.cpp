#include "arm/eval/report.hpp"

#include <json.hpp>

#include "arm/errors.hpp"

namespace arm::eval {

namespace {

nlohmann::json record_to_json(const ExecutionRecord& r) {
  return nlohmann::json{{"problem_id", r.problem_id},
                        {"reward", r.reward},
                        {"completed", r.completed},
                        {"answer", r.answer},
                        {"gold", r.gold},
                        {"authorship", r.authorship},
                        {"scaffold_i", r.scaffold_i},
                        {"scaffold_l_effective", r.scaffold_l_effective},
                        {"reference_len", r.reference_len},
                        {"calls", r.calls},
                        {"prompt_tokens", r.prompt_tokens},
                        {"completion_tokens", r.completion_tokens},
                        {"trace_text", r.trace_text},
                        {"error", r.error}};
}

ExecutionRecord record_from_json(const nlohmann::json& j) {
  ExecutionRecord r;
  r.problem_id = j.value("problem_id", "");
  r.reward = j.value("reward", 0.0);
  r.completed = j.value("completed", false);
  r.answer = j.value("answer", "");
  r.gold = j.value("gold", "");
  r.authorship = j.value("authorship", "");
  r.scaffold_i = j.value("scaffold_i", -1);
  r.scaffold_l_effective = j.value("scaffold_l_effective", -1);
  r.reference_len = j.value("reference_len", -1);
  r.calls = j.value("calls", 0LL);
  r.prompt_tokens = j.value("prompt_tokens", 0LL);
  r.completion_tokens = j.value("completion_tokens", 0LL);
  r.trace_text = j.value("trace_text", "");
  r.error = j.value("error", "");
  return r;
}

}  // namespace

std::string EvalReport::to_json_string() const {
  nlohmann::json j{{"candidate_name", candidate_name},
                   {"candidate_hash", candidate_hash},
                   {"seed", seed},
                   {"rewards", rewards},
                   {"mean_reward", mean_reward},
                   {"total_calls", total_calls},
                   {"total_prompt_tokens", total_prompt_tokens},
                   {"total_completion_tokens", total_completion_tokens}};
  j["records"] = nlohmann::json::array();
  for (const ExecutionRecord& r : records) j["records"].push_back(record_to_json(r));
  return j.dump(2);
}

EvalReport EvalReport::from_json_string(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptState(origin, e.what());
  }
  EvalReport r;
  r.candidate_name = j.value("candidate_name", "");
  r.candidate_hash = j.value("candidate_hash", "");
  r.seed = j.value("seed", 0ULL);
  r.rewards = j.value("rewards", std::vector<double>{});
  r.mean_reward = j.value("mean_reward", 0.0);
  r.total_calls = j.value("total_calls", 0LL);
  r.total_prompt_tokens = j.value("total_prompt_tokens", 0LL);
  r.total_completion_tokens = j.value("total_completion_tokens", 0LL);
  if (j.contains("records")) {
    for (const auto& rec : j["records"]) r.records.push_back(record_from_json(rec));
  }
  return r;
}

}  // namespace arm::eval
