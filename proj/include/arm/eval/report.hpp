#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arm::eval {

// Per-step authorship codes logged by splice evaluation:
// 'p' replayed CoT prefix, 'c' candidate window, 's' CoT suffix.
constexpr char kAuthorPrefix = 'p';
constexpr char kAuthorCandidate = 'c';
constexpr char kAuthorSuffix = 's';

struct ExecutionRecord {
  std::string problem_id;
  double reward = 0.0;
  bool completed = false;
  std::string answer;
  std::string gold;
  std::string authorship;  // one code per step of the final trace
  int scaffold_i = -1;
  int scaffold_l_effective = -1;
  int reference_len = -1;
  long long calls = 0;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  std::string trace_text;  // serialized final trace, critic food
  std::string error;       // containment annotation; empty on success
};

struct EvalReport {
  std::string candidate_name;
  std::string candidate_hash;
  uint64_t seed = 0;
  std::vector<double> rewards;
  double mean_reward = 0.0;
  long long total_calls = 0;
  long long total_prompt_tokens = 0;
  long long total_completion_tokens = 0;
  std::vector<ExecutionRecord> records;

  std::string to_json_string() const;
  static EvalReport from_json_string(const std::string& text, const std::string& origin);
};

}  // namespace arm::eval
