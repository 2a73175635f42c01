#pragma once

#include <string>
#include <vector>

#include "arm/eval/report.hpp"
#include "arm/llm/client.hpp"
#include "arm/review/types.hpp"
#include "arm/search/engine.hpp"

namespace arm::review {

struct ReviewerOptions {
  int max_traces = 4;            // traces shown to the Critic, failures first
  int trace_head_chars = 2400;   // head+tail truncation of long traces
  int trace_tail_chars = 1200;
  int design_attempts = 3;       // parse/validate retries before ReviewerFailure
  int history_window = 5;        // mutation summaries embedded in the Designer prompt
};

// Two-stage mutation operator: a Critic that reflects on execution traces
// and a Designer that emits a complete replacement program.
class Reviewer : public search::ReviewerInterface {
 public:
  Reviewer(llm::LlmClient& client, ReviewerOptions options = {});

  // Critic pass. `traces` must be non-empty; excerpts in the result are
  // guaranteed substrings of the supplied trace text.
  Critique critique(const std::string& parent_source,
                    const std::vector<eval::ExecutionRecord>& traces);

  struct DesignOutcome {
    dsl::WorkflowProgram program;
    std::string rationale;
    int attempts = 0;
  };

  // Designer pass with up to design_attempts parse/validate retries; throws
  // ReviewerFailure carrying every rejected source.
  DesignOutcome design(const std::string& parent_source,
                       const std::vector<std::string>& mutation_history,
                       const Critique& critique);

  search::ExpansionResult expand(const dsl::WorkflowProgram& parent,
                                 const eval::EvalReport& parent_report,
                                 const std::vector<std::string>& mutation_history) override;

  // Trace selection + truncation used for the Critic prompt (exposed so the
  // substring property can be tested against exactly what the Critic saw).
  std::string render_traces(const std::vector<eval::ExecutionRecord>& traces) const;

 private:
  llm::LlmClient& client_;
  ReviewerOptions options_;
  uint64_t call_counter_ = 0;
};

// First fenced code block of `text`, or the trimmed text when unfenced.
std::string extract_program_block(const std::string& text);

}  // namespace arm::review
