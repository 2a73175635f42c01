#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "arm/eval/report.hpp"
#include "arm/review/types.hpp"
#include "arm/search/tree.hpp"

namespace arm::search {

struct SearchConfig {
  int iterations = 20;                 // K
  double selection_temperature = 0.1;  // T; the paper leaves it unstated
  double exploration_c = 1.0;          // declared by the algorithm, unused by its body
  uint64_t seed = 0;
  int eval_batch = 64;  // recorded; the harness slices the dataset with it
};

struct ExpansionResult {
  dsl::WorkflowProgram child;
  review::MutationRecord record;
};

// Mutation operator interface; the production reviewer and scripted test
// reviewers both implement it. Throws ReviewerFailure when no valid child
// could be produced.
class ReviewerInterface {
 public:
  virtual ~ReviewerInterface() = default;
  virtual ExpansionResult expand(const dsl::WorkflowProgram& parent,
                                 const eval::EvalReport& parent_report,
                                 const std::vector<std::string>& mutation_history) = 0;
};

using Evaluator = std::function<eval::EvalReport(const dsl::WorkflowProgram&)>;

struct SearchResult {
  int best_node_id = 0;
  dsl::WorkflowProgram best_program;
  SearchTree tree;
};

// Reflection-guided search: evaluate the root once, then K iterations of
// select -> expand -> evaluate -> update. Reviewer failures consume their
// iteration and are recorded without adding a node. When `run_dir` is
// non-empty the tree is checkpointed after every iteration and an existing
// tree.json is resumed (continuing the saved RNG stream).
SearchResult run_search(const dsl::WorkflowProgram& root, const SearchConfig& config,
                        const Evaluator& evaluate, ReviewerInterface& reviewer,
                        const std::string& run_dir = "");

// --- persistence (tree.json, programs/<hash>.dsl, reports/<hash>.json,
//     mutations/<hash>.json, rng_state) ---

void persist_tree(const SearchTree& tree, const SearchConfig& config, const std::mt19937_64& rng,
                  const std::string& run_dir);

struct ResumedState {
  SearchTree tree;
  SearchConfig config;
  std::mt19937_64 rng;
};

// Throws CorruptState when any file is missing, truncated or inconsistent
// (program hash mismatches included).
ResumedState resume_tree(const std::string& run_dir);

bool run_dir_has_tree(const std::string& run_dir);

// Stored EvalReport for a node (reports/<hash>.json).
eval::EvalReport load_report(const std::string& run_dir, const std::string& report_ref);
void store_report(const std::string& run_dir, const std::string& report_ref,
                  const eval::EvalReport& report);
void store_mutation(const std::string& run_dir, const std::string& child_hash,
                    const review::MutationRecord& record);

}  // namespace arm::search
