#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "arm/dsl/builtins.hpp"
#include "arm/dsl/interpreter.hpp"
#include "arm/eval/report.hpp"
#include "arm/llm/client.hpp"
#include "arm/trace.hpp"

namespace arm::eval {

// The policy step cap shared by pi_rec, splice suffixes and crossover
// continuations: at most 30 generated steps, then one forced completion.
constexpr int kRolloutCap = 30;

struct ScaffoldSpec {
  int window = 3;            // l
  std::optional<int> start;  // fixed i; empty draws per problem from the seed
};

struct EvalOptions {
  int parallelism = 1;  // problems evaluated concurrently up to this bound
  dsl::InterpreterOptions interpreter;
};

// Memoizes pi_rec(m_cot) reference traces per problem id; their length
// defines n for the scaffold window.
class ReferenceTraceProvider {
 public:
  explicit ReferenceTraceProvider(llm::LlmClient& client,
                                  dsl::InterpreterOptions opts = {});

  // Completed reference trace (forced completion at the cap counts as the
  // final step). Calls are recorded into `record` when given.
  const ReasoningTrace& get(const Problem& problem, ExecutionRecord* record = nullptr);

 private:
  llm::LlmClient& client_;
  dsl::InterpreterOptions opts_;
  dsl::WorkflowProgram pi_rec_;
  dsl::WorkflowProgram m_cot_;
  std::mutex mu_;
  std::map<std::string, ReasoningTrace> cache_;
};

ReasoningTrace reference_trace(const Problem& problem, llm::LlmClient& client,
                               const dsl::InterpreterOptions& opts = {});

// Continues a (possibly empty) prefix with `step_gen` under the recursive
// policy: steps until completion or the cap, then one forced completion.
// Appended steps are logged into `record` with the given author code.
ReasoningTrace continue_rollout(const Problem& problem, const ReasoningTrace& prefix,
                                const dsl::WorkflowProgram& step_gen, llm::LlmClient& client,
                                ExecutionRecord* record, char author, uint64_t path_seed,
                                const dsl::InterpreterOptions& opts = {},
                                int step_cap = kRolloutCap);

// One scaffolded splice: i replayed CoT prefix steps, min(l, n-i) candidate
// steps, then m_cot until completion or the cap. Returns the full record
// including the authorship log.
ExecutionRecord splice_evaluate(const dsl::WorkflowProgram& candidate, const Problem& problem,
                                int start_index, int window, ReferenceTraceProvider& references,
                                llm::LlmClient& client, uint64_t path_seed,
                                const dsl::InterpreterOptions& opts = {});

// Scaffolded surrogate objective over a dataset: i is drawn uniformly from
// [0, n-1] keyed by (seed, problem id). Per-problem errors are contained as
// reward 0 with an annotation; only BudgetExceeded aborts the batch.
EvalReport evaluate_step_generator(const dsl::WorkflowProgram& candidate,
                                   const std::vector<Problem>& dataset, int window, uint64_t seed,
                                   llm::LlmClient& client, const EvalOptions& opts = {});

// Full-rollout objective for meta-policies, with m_cot as the step
// generator.
EvalReport evaluate_meta_policy(const dsl::WorkflowProgram& candidate,
                                const std::vector<Problem>& dataset, llm::LlmClient& client,
                                const EvalOptions& opts = {}, uint64_t seed = 0);

// General (meta-policy, step-generator) pairing over a dataset.
EvalReport evaluate_pairing(const dsl::WorkflowProgram& meta, const dsl::WorkflowProgram& step_gen,
                            const std::vector<Problem>& dataset, llm::LlmClient& client,
                            const EvalOptions& opts = {}, uint64_t seed = 0);

}  // namespace arm::eval
