#include "arm/eval/scaffold.hpp"

#include <atomic>
#include <future>
#include <random>
#include <thread>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::eval {

namespace {

void absorb_calls(ExecutionRecord* record, const dsl::ExecutionTrace& exec) {
  if (!record) return;
  record->calls += static_cast<long long>(exec.calls.size());
  record->prompt_tokens += exec.prompt_tokens();
  record->completion_tokens += exec.completion_tokens();
}

// Uniform draw keyed by (seed, problem id): the window start is a pure
// function of the pair, so dataset permutations cannot move it.
int draw_start_index(uint64_t seed, const std::string& problem_id, int n) {
  std::mt19937_64 rng(fnv1a(problem_id, seed ^ 0xa5a5a5a5a5a5a5a5ULL));
  return static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
}

void finish_record(ExecutionRecord& record, const ReasoningTrace& trace, const Problem& problem) {
  record.completed = trace.completed();
  record.trace_text = trace.serialize();
  if (record.completed) {
    record.answer = trace.answer();
    record.reward = judge_equality(record.answer, problem.gold_answer) ? 1.0 : 0.0;
  } else {
    record.reward = 0.0;
    if (record.error.empty()) record.error = "trace did not complete";
  }
}

}  // namespace

ReferenceTraceProvider::ReferenceTraceProvider(llm::LlmClient& client, dsl::InterpreterOptions opts)
    : client_(client),
      opts_(opts),
      pi_rec_(dsl::builtin("pi_rec")),
      m_cot_(dsl::builtin("m_cot")) {}

const ReasoningTrace& ReferenceTraceProvider::get(const Problem& problem,
                                                  ExecutionRecord* record) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(problem.id);
    if (it != cache_.end()) return it->second;
  }
  dsl::ExecutionTrace exec;
  // The reference path is seeded by the problem alone so every candidate
  // splices into the same baseline trace.
  ReasoningTrace trace = dsl::run_meta_policy(pi_rec_, problem, m_cot_, client_, &exec, opts_,
                                              fnv1a(problem.id, 0x5ef17a11ULL));
  absorb_calls(record, exec);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(problem.id, std::move(trace));
  return it->second;
}

ReasoningTrace reference_trace(const Problem& problem, llm::LlmClient& client,
                               const dsl::InterpreterOptions& opts) {
  ReferenceTraceProvider provider(client, opts);
  return provider.get(problem);
}

ReasoningTrace continue_rollout(const Problem& problem, const ReasoningTrace& prefix,
                                const dsl::WorkflowProgram& step_gen, llm::LlmClient& client,
                                ExecutionRecord* record, char author, uint64_t path_seed,
                                const dsl::InterpreterOptions& opts, int step_cap) {
  ReasoningTrace trace = prefix;
  int generated = 0;
  while (!trace.completed() && static_cast<int>(trace.size()) < step_cap) {
    dsl::ExecutionTrace exec;
    Step step = dsl::run_step_generator(step_gen, problem, trace, client, &exec, opts,
                                        fnv1a("step" + std::to_string(generated), path_seed));
    absorb_calls(record, exec);
    trace = trace.append(std::move(step));
    if (record) record->authorship.push_back(author);
    ++generated;
  }
  if (!trace.completed()) {
    dsl::ExecutionTrace exec;
    std::string completion;
    llm::CallSink sink = [&exec](const llm::CallRecord& rec) { exec.calls.push_back(rec); };
    completion = client.complete_solution(problem.statement, trace.serialize(),
                                          fnv1a("force", path_seed), sink);
    absorb_calls(record, exec);
    trace = trace.append(Step{trim(completion)});
    if (record) record->authorship.push_back(author);
  }
  return trace;
}

ExecutionRecord splice_evaluate(const dsl::WorkflowProgram& candidate, const Problem& problem,
                                int start_index, int window, ReferenceTraceProvider& references,
                                llm::LlmClient& client, uint64_t path_seed,
                                const dsl::InterpreterOptions& opts) {
  ExecutionRecord record;
  record.problem_id = problem.id;
  record.gold = problem.gold_answer;

  const ReasoningTrace& reference = references.get(problem, &record);
  int n = static_cast<int>(reference.size());
  record.reference_len = n;
  if (start_index < 0 || start_index >= n) {
    throw Error("splice start index " + std::to_string(start_index) +
                " outside [0, " + std::to_string(n - 1) + "]");
  }
  record.scaffold_i = start_index;
  int l_eff = std::min(window, n - start_index);
  record.scaffold_l_effective = l_eff;

  // Replayed prefix: no client calls.
  ReasoningTrace trace = reference.prefix(static_cast<size_t>(start_index));
  record.authorship.assign(static_cast<size_t>(start_index), kAuthorPrefix);

  // Candidate window; a candidate that boxes an answer ends the trace early.
  for (int k = 0; k < l_eff && !trace.completed(); ++k) {
    dsl::ExecutionTrace exec;
    Step step = dsl::run_step_generator(candidate, problem, trace, client, &exec, opts,
                                        fnv1a("cand" + std::to_string(k), path_seed));
    absorb_calls(&record, exec);
    trace = trace.append(std::move(step));
    record.authorship.push_back(kAuthorCandidate);
  }

  // Baseline continuation to completion or the cap.
  if (!trace.completed()) {
    static const dsl::WorkflowProgram m_cot = dsl::builtin("m_cot");
    trace = continue_rollout(problem, trace, m_cot, client, &record, kAuthorSuffix,
                             fnv1a("suffix", path_seed), opts);
  }

  finish_record(record, trace, problem);
  return record;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `parallelism` worker threads.
// BudgetExceeded (or any other escaping exception) aborts the batch.
void for_each_index(size_t n, int parallelism, const std::function<void(size_t)>& fn) {
  if (parallelism <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  size_t workers = std::min<size_t>(static_cast<size_t>(parallelism), n);
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    }));
  }
  std::exception_ptr first;
  for (auto& f : futures) {
    try {
      f.get();
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

EvalReport aggregate(const dsl::WorkflowProgram& candidate, uint64_t seed,
                     std::vector<ExecutionRecord> records) {
  EvalReport report;
  report.candidate_name = candidate.name;
  report.candidate_hash = candidate.hash;
  report.seed = seed;
  double sum = 0.0;
  for (ExecutionRecord& r : records) {
    report.rewards.push_back(r.reward);
    sum += r.reward;
    report.total_calls += r.calls;
    report.total_prompt_tokens += r.prompt_tokens;
    report.total_completion_tokens += r.completion_tokens;
  }
  report.mean_reward = records.empty() ? 0.0 : sum / static_cast<double>(records.size());
  report.records = std::move(records);
  return report;
}

}  // namespace

EvalReport evaluate_step_generator(const dsl::WorkflowProgram& candidate,
                                   const std::vector<Problem>& dataset, int window, uint64_t seed,
                                   llm::LlmClient& client, const EvalOptions& opts) {
  if (dataset.empty()) throw DatasetEmpty();
  if (window < 1) throw Error("scaffold window must be >= 1");

  ReferenceTraceProvider references(client, opts.interpreter);
  std::vector<ExecutionRecord> records(dataset.size());
  for_each_index(dataset.size(), opts.parallelism, [&](size_t idx) {
    const Problem& problem = dataset[idx];
    uint64_t path_seed = fnv1a(problem.id, fnv1a(candidate.hash, seed));
    try {
      ExecutionRecord probe;
      const ReasoningTrace& reference = references.get(problem, &probe);
      int n = static_cast<int>(reference.size());
      int i = draw_start_index(seed, problem.id, n);
      records[idx] = splice_evaluate(candidate, problem, i, window, references, client, path_seed,
                                     opts.interpreter);
    } catch (const BudgetExceeded&) {
      throw;  // aborts the batch; the harness checkpoints and exits
    } catch (const std::exception& e) {
      ExecutionRecord r;
      r.problem_id = problem.id;
      r.gold = problem.gold_answer;
      r.reward = 0.0;
      r.error = e.what();
      records[idx] = std::move(r);
    }
  });
  return aggregate(candidate, seed, std::move(records));
}

EvalReport evaluate_pairing(const dsl::WorkflowProgram& meta, const dsl::WorkflowProgram& step_gen,
                            const std::vector<Problem>& dataset, llm::LlmClient& client,
                            const EvalOptions& opts, uint64_t seed) {
  if (dataset.empty()) throw DatasetEmpty();
  if (meta.kind != dsl::ProgramKind::MetaPolicy) {
    throw Error("evaluate_pairing: '" + meta.name + "' is not a meta policy");
  }

  std::vector<ExecutionRecord> records(dataset.size());
  for_each_index(dataset.size(), opts.parallelism, [&](size_t idx) {
    const Problem& problem = dataset[idx];
    ExecutionRecord r;
    r.problem_id = problem.id;
    r.gold = problem.gold_answer;
    try {
      dsl::ExecutionTrace exec;
      ReasoningTrace trace = dsl::run_meta_policy(
          meta, problem, step_gen, client, &exec, opts.interpreter,
          fnv1a(problem.id, fnv1a(step_gen.hash, fnv1a(meta.hash, seed))));
      absorb_calls(&r, exec);
      finish_record(r, trace, problem);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      r.reward = 0.0;
      r.error = e.what();
    }
    records[idx] = std::move(r);
  });
  return aggregate(meta, seed, std::move(records));
}

EvalReport evaluate_meta_policy(const dsl::WorkflowProgram& candidate,
                                const std::vector<Problem>& dataset, llm::LlmClient& client,
                                const EvalOptions& opts, uint64_t seed) {
  static const dsl::WorkflowProgram m_cot = dsl::builtin("m_cot");
  return evaluate_pairing(candidate, m_cot, dataset, client, opts, seed);
}

}  // namespace arm::eval
