#pragma once

#include <string>
#include <vector>

#include "arm/eval/scaffold.hpp"

namespace arm::cli {

struct BenchRow {
  std::string method;
  std::string configuration;  // "CoT Baseline" | "CoT->Meta" | "Meta Policy" | "pi_rec(m)"
  double accuracy = 0.0;
  int correct = 0;
  int total = 0;
  long long calls = 0;
  long long tokens = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string dataset;
  std::string model;
  uint64_t seed = 0;
  std::string prompt_version;
  std::vector<std::pair<std::string, std::string>> program_hashes;  // fingerprint

  std::string to_json_string() const;
  std::string to_table() const;
};

BenchRow row_from_report(const std::string& method, const std::string& configuration,
                         const eval::EvalReport& report);

// The three-configuration comparison: meta with m_cot, the crossover that
// replays a baseline prefix and hands over to the step generator under the
// recursive policy, and the full pairing.
std::vector<BenchRow> three_configuration_rows(const dsl::WorkflowProgram& meta,
                                               const dsl::WorkflowProgram& step_gen,
                                               const std::vector<Problem>& dataset,
                                               llm::LlmClient& client,
                                               const eval::EvalOptions& opts, uint64_t seed,
                                               double prefix_fraction);

// Crossover only: baseline reference prefix (floor(n * fraction) steps),
// continued by `step_gen` until completion or the cap.
eval::EvalReport evaluate_crossover(const dsl::WorkflowProgram& step_gen,
                                    const std::vector<Problem>& dataset, llm::LlmClient& client,
                                    const eval::EvalOptions& opts, uint64_t seed,
                                    double prefix_fraction);

}  // namespace arm::cli
