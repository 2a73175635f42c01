#include "arm/search/tree.hpp"

#include <algorithm>
#include <cmath>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::search {

int SearchTree::add_root(dsl::WorkflowProgram program, double mean_reward,
                         std::string report_ref) {
  if (!nodes_.empty()) throw Error("search tree already has a root");
  SearchNode n;
  n.id = 0;
  n.program = std::move(program);
  n.mean_reward = mean_reward;
  n.visits = 1;
  n.report_ref = std::move(report_ref);
  nodes_.push_back(std::move(n));
  return 0;
}

int SearchTree::add_child(int parent_id, dsl::WorkflowProgram program, double mean_reward,
                          std::string report_ref, std::string mutation_summary, int iteration) {
  SearchNode& parent = node(parent_id);
  SearchNode n;
  n.id = static_cast<int>(nodes_.size());
  n.program = std::move(program);
  n.mean_reward = mean_reward;
  n.visits = 1;
  n.parent = parent_id;
  n.report_ref = std::move(report_ref);
  n.mutation_summary = std::move(mutation_summary);
  n.created_iteration = iteration;
  parent.children.push_back(n.id);
  parent.visits += 1;
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

int SearchTree::best() const {
  if (nodes_.empty()) throw Error("search tree is empty");
  int best_id = 0;
  for (const SearchNode& n : nodes_) {
    if (n.mean_reward > nodes_[static_cast<size_t>(best_id)].mean_reward) best_id = n.id;
  }
  return best_id;
}

std::vector<std::string> SearchTree::mutation_history(int id) const {
  std::vector<std::string> chain;
  for (int cur = id; cur >= 0; cur = node(cur).parent) {
    if (node(cur).parent >= 0) chain.push_back(node(cur).mutation_summary);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<double> selection_probabilities(const SearchTree& tree, double temperature) {
  if (tree.empty()) throw Error("select_parent over an empty tree");
  if (temperature <= 0.0) throw Error("selection temperature must be > 0");
  // Softmax over ALL nodes; max-subtraction keeps the exponentials bounded
  // without changing the distribution.
  double max_r = tree.nodes()[0].mean_reward;
  for (const SearchNode& n : tree.nodes()) max_r = std::max(max_r, n.mean_reward);
  std::vector<double> probs;
  probs.reserve(tree.size());
  double sum = 0.0;
  for (const SearchNode& n : tree.nodes()) {
    double w = std::exp((n.mean_reward - max_r) / temperature);
    probs.push_back(w);
    sum += w;
  }
  for (double& p : probs) p /= sum;
  return probs;
}

int select_parent(const SearchTree& tree, double temperature, std::mt19937_64& rng) {
  std::vector<double> probs = selection_probabilities(tree, temperature);
  double u = uniform01(rng);
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);  // u landed on accumulated rounding
}

}  // namespace arm::search
