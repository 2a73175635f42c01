#pragma once

#include <random>
#include <string>
#include <vector>

#include "arm/dsl/ast.hpp"

namespace arm::search {

struct SearchNode {
  int id = 0;
  dsl::WorkflowProgram program;
  double mean_reward = 0.0;  // R-bar
  int visits = 1;            // N
  int parent = -1;
  std::vector<int> children;
  std::string mutation_summary;  // empty for the root
  std::string report_ref;        // reports/<hash>.json
  int created_iteration = 0;
};

struct ReviewerFailureRecord {
  int iteration = 0;
  int parent_id = -1;
  std::string error;
};

class SearchTree {
 public:
  int add_root(dsl::WorkflowProgram program, double mean_reward, std::string report_ref);
  int add_child(int parent_id, dsl::WorkflowProgram program, double mean_reward,
                std::string report_ref, std::string mutation_summary, int iteration);

  const std::vector<SearchNode>& nodes() const { return nodes_; }
  SearchNode& node(int id) { return nodes_.at(static_cast<size_t>(id)); }
  const SearchNode& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
  bool empty() const { return nodes_.empty(); }
  size_t size() const { return nodes_.size(); }

  // argmax over mean rewards; exact ties go to the earliest-created node.
  int best() const;

  // Mutation summaries along the root -> node path (root excluded since it
  // was not produced by a mutation), oldest first.
  std::vector<std::string> mutation_history(int id) const;

  std::vector<ReviewerFailureRecord> failures;
  int completed_iterations = 0;

 private:
  std::vector<SearchNode> nodes_;
};

// Softmax selection probabilities over all nodes, exp((R - max R)/T)
// normalized; T > 0.
std::vector<double> selection_probabilities(const SearchTree& tree, double temperature);

// Samples a node id with exactly those probabilities using one uniform draw.
int select_parent(const SearchTree& tree, double temperature, std::mt19937_64& rng);

}  // namespace arm::search
