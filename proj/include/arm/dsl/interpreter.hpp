#pragma once

#include <cstdint>
#include <vector>

#include "arm/dsl/ast.hpp"
#include "arm/dsl/value.hpp"
#include "arm/llm/client.hpp"
#include "arm/trace.hpp"

namespace arm::dsl {

struct InterpreterOptions {
  // 1 evaluates Parallel children sequentially in child order; >1 runs them
  // on real threads. Results and call logs are identical either way: logs
  // are merged canonically by child index and sample indices derive from the
  // execution path, not from scheduling.
  int parallel_workers = 1;
};

// Ordered record of every LLM interaction of one program execution.
struct ExecutionTrace {
  std::vector<llm::CallRecord> calls;

  long long prompt_tokens() const;
  long long completion_tokens() const;
};

// Runs a step-generator program: (problem, history) -> next step.
Step run_step_generator(const WorkflowProgram& program, const Problem& problem,
                        const ReasoningTrace& history, llm::LlmClient& client,
                        ExecutionTrace* execution = nullptr, const InterpreterOptions& opts = {},
                        uint64_t path_seed = 0);

// Runs a meta-policy program: (problem, step_generator) -> reasoning trace.
ReasoningTrace run_meta_policy(const WorkflowProgram& program, const Problem& problem,
                               const WorkflowProgram& step_generator, llm::LlmClient& client,
                               ExecutionTrace* execution = nullptr,
                               const InterpreterOptions& opts = {}, uint64_t path_seed = 0);

}  // namespace arm::dsl
