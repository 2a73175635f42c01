#include "arm/search/engine.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "arm/dsl/parser.hpp"
#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::search {

namespace fs = std::filesystem;

namespace {

std::string rng_to_string(const std::mt19937_64& rng) {
  std::ostringstream out;
  out << rng;
  return out.str();
}

std::mt19937_64 rng_from_string(const std::string& text, const std::string& origin) {
  std::mt19937_64 rng;
  std::istringstream in(text);
  in >> rng;
  if (in.fail()) throw CorruptState(origin, "unreadable rng state");
  return rng;
}

std::string report_path_for(const std::string& hash) { return "reports/" + hash + ".json"; }

void write_program_file(const std::string& run_dir, const dsl::WorkflowProgram& program) {
  write_file_atomic(run_dir + "/programs/" + program.hash + ".dsl", program.canonical);
}

}  // namespace

void persist_tree(const SearchTree& tree, const SearchConfig& config, const std::mt19937_64& rng,
                  const std::string& run_dir) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["completed_iterations"] = tree.completed_iterations;
  j["config"] = {{"iterations", config.iterations},
                 {"selection_temperature", config.selection_temperature},
                 {"exploration_c", config.exploration_c},
                 {"seed", config.seed},
                 {"eval_batch", config.eval_batch}};
  j["nodes"] = nlohmann::json::array();
  for (const SearchNode& n : tree.nodes()) {
    j["nodes"].push_back({{"id", n.id},
                          {"program_hash", n.program.hash},
                          {"program_name", n.program.name},
                          {"mean_reward", n.mean_reward},
                          {"visits", n.visits},
                          {"parent", n.parent},
                          {"children", n.children},
                          {"mutation_summary", n.mutation_summary},
                          {"report_ref", n.report_ref},
                          {"created_iteration", n.created_iteration}});
  }
  j["failures"] = nlohmann::json::array();
  for (const ReviewerFailureRecord& f : tree.failures) {
    j["failures"].push_back(
        {{"iteration", f.iteration}, {"parent_id", f.parent_id}, {"error", f.error}});
  }
  write_file_atomic(run_dir + "/tree.json", j.dump(2) + "\n");
  write_file_atomic(run_dir + "/rng_state", rng_to_string(rng) + "\n");
}

bool run_dir_has_tree(const std::string& run_dir) {
  return fs::exists(fs::path(run_dir) / "tree.json");
}

ResumedState resume_tree(const std::string& run_dir) {
  std::string tree_path = run_dir + "/tree.json";
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(tree_path));
  } catch (const std::exception& e) {
    throw CorruptState(tree_path, e.what());
  }

  ResumedState state;
  try {
    state.tree.completed_iterations = j.at("completed_iterations").get<int>();
    const auto& cfg = j.at("config");
    state.config.iterations = cfg.at("iterations").get<int>();
    state.config.selection_temperature = cfg.at("selection_temperature").get<double>();
    state.config.exploration_c = cfg.at("exploration_c").get<double>();
    state.config.seed = cfg.at("seed").get<uint64_t>();
    state.config.eval_batch = cfg.at("eval_batch").get<int>();

    std::vector<nlohmann::json> node_records(j.at("nodes").begin(), j.at("nodes").end());
    std::sort(node_records.begin(), node_records.end(),
              [](const nlohmann::json& a, const nlohmann::json& b) {
                return a.at("id").get<int>() < b.at("id").get<int>();
              });
    for (const auto& jn : node_records) {
      std::string hash = jn.at("program_hash").get<std::string>();
      std::string source = read_file(run_dir + "/programs/" + hash + ".dsl");
      dsl::WorkflowProgram program = dsl::parse_program(source);
      if (program.hash != hash) {
        throw CorruptState(run_dir + "/programs/" + hash + ".dsl",
                           "program hash mismatch (" + program.hash + ")");
      }
      int id = jn.at("id").get<int>();
      if (id == 0) {
        state.tree.add_root(std::move(program), jn.at("mean_reward").get<double>(),
                            jn.at("report_ref").get<std::string>());
      } else {
        state.tree.add_child(jn.at("parent").get<int>(), std::move(program),
                             jn.at("mean_reward").get<double>(),
                             jn.at("report_ref").get<std::string>(),
                             jn.at("mutation_summary").get<std::string>(),
                             jn.at("created_iteration").get<int>());
      }
    }
    // add_child rederives visit counts from the edges; restore the saved
    // counts afterwards so the formats stay decoupled.
    for (const auto& jn : node_records) {
      state.tree.node(jn.at("id").get<int>()).visits = jn.at("visits").get<int>();
    }
    for (const auto& jf : j.value("failures", nlohmann::json::array())) {
      state.tree.failures.push_back(ReviewerFailureRecord{jf.at("iteration").get<int>(),
                                                          jf.at("parent_id").get<int>(),
                                                          jf.at("error").get<std::string>()});
    }
  } catch (const CorruptState&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptState(tree_path, e.what());
  }
  state.rng = rng_from_string(read_file(run_dir + "/rng_state"), run_dir + "/rng_state");
  return state;
}

eval::EvalReport load_report(const std::string& run_dir, const std::string& report_ref) {
  std::string path = run_dir + "/" + report_ref;
  return eval::EvalReport::from_json_string(read_file(path), path);
}

void store_report(const std::string& run_dir, const std::string& report_ref,
                  const eval::EvalReport& report) {
  write_file_atomic(run_dir + "/" + report_ref, report.to_json_string() + "\n");
}

void store_mutation(const std::string& run_dir, const std::string& child_hash,
                    const review::MutationRecord& record) {
  write_file_atomic(run_dir + "/mutations/" + child_hash + ".json",
                    record.to_json_string() + "\n");
}

SearchResult run_search(const dsl::WorkflowProgram& root, const SearchConfig& config,
                        const Evaluator& evaluate, ReviewerInterface& reviewer,
                        const std::string& run_dir) {
  bool persist = !run_dir.empty();
  SearchTree tree;
  SearchConfig effective = config;
  std::mt19937_64 rng(config.seed);
  // Reports are kept in memory so the reviewer can read parent traces
  // without re-parsing files; persisted copies are the audit trail.
  std::map<std::string, eval::EvalReport> reports;

  if (persist) {
    fs::create_directories(fs::path(run_dir) / "programs");
    fs::create_directories(fs::path(run_dir) / "reports");
    fs::create_directories(fs::path(run_dir) / "mutations");
  }

  if (persist && run_dir_has_tree(run_dir)) {
    ResumedState state = resume_tree(run_dir);
    tree = std::move(state.tree);
    effective = state.config;
    effective.iterations = config.iterations;  // the caller's K stays the budget
    rng = state.rng;
    for (const SearchNode& n : tree.nodes()) {
      reports.emplace(n.program.hash, load_report(run_dir, n.report_ref));
    }
  } else {
    eval::EvalReport root_report = evaluate(root);
    std::string ref = report_path_for(root.hash);
    tree.add_root(root, root_report.mean_reward, ref);
    if (persist) {
      write_program_file(run_dir, root);
      store_report(run_dir, ref, root_report);
      persist_tree(tree, effective, rng, run_dir);
    }
    reports.emplace(root.hash, std::move(root_report));
  }

  for (int t = tree.completed_iterations + 1; t <= config.iterations; ++t) {
    int parent_id = select_parent(tree, effective.selection_temperature, rng);
    const SearchNode& parent = tree.node(parent_id);

    ExpansionResult expansion;
    try {
      expansion = reviewer.expand(parent.program, reports.at(parent.program.hash),
                                  tree.mutation_history(parent_id));
    } catch (const ReviewerFailure& e) {
      tree.failures.push_back(ReviewerFailureRecord{t, parent_id, e.what()});
      tree.completed_iterations = t;
      if (persist) persist_tree(tree, effective, rng, run_dir);
      continue;
    }

    eval::EvalReport child_report;
    try {
      child_report = evaluate(expansion.child);
    } catch (const BudgetExceeded&) {
      // Leave the half-expanded iteration out of the checkpoint; a resumed
      // run redoes it against the call cache.
      if (persist) persist_tree(tree, effective, rng, run_dir);
      throw;
    }

    std::string ref = report_path_for(expansion.child.hash);
    tree.add_child(parent_id, expansion.child, child_report.mean_reward, ref,
                   expansion.record.summary, t);
    tree.completed_iterations = t;
    if (persist) {
      write_program_file(run_dir, expansion.child);
      store_report(run_dir, ref, child_report);
      store_mutation(run_dir, expansion.child.hash, expansion.record);
      persist_tree(tree, effective, rng, run_dir);
    }
    reports[expansion.child.hash] = std::move(child_report);
  }

  SearchResult result;
  result.best_node_id = tree.best();
  result.best_program = tree.node(result.best_node_id).program;
  result.tree = std::move(tree);
  return result;
}

}  // namespace arm::search
