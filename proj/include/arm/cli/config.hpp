#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arm/dsl/ast.hpp"
#include "arm/llm/backend.hpp"
#include "arm/mdp/checks.hpp"
#include "arm/search/engine.hpp"

namespace arm::cli {

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kBudgetExhausted = 3,
  kVerificationFailed = 4,
  kCorruptState = 5,
};

struct RunConfig {
  std::string dataset_path;
  std::string run_dir = "run";
  uint64_t budget = 1000000;
  int parallelism = 8;

  std::string backend = "mock";  // mock | http | replay
  llm::ClientConfig client;
  std::string cache_path;        // default <run_dir>/cache.jsonl; "none" disables
  std::string mock_world_json;   // inline mock-world object, may be empty

  search::SearchConfig search;
  int scaffold_window = 3;

  std::vector<std::string> methods;  // evaluate: program refs
  std::string step_gen_ref;          // evaluate: pairing step generator
  double crossover_prefix_fraction = 0.5;

  mdp::VerifyParams mdp;
  std::vector<std::string> mdp_instance_files;
  std::string mdp_report_path;
};

struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<uint64_t> budget;
  std::optional<std::string> run_dir;
  std::vector<std::string> methods;
  std::optional<std::string> step_gen;
  std::optional<int> mdp_instances;
};

// Config file with CLI flag overrides; flags win. Empty path = defaults.
RunConfig load_config(const std::string& path, const Overrides& overrides);

std::string config_to_json(const RunConfig& config);

// Backend chain per config (mock world / http, wrapped in the record/replay
// cache unless disabled) with the budget gate armed.
std::shared_ptr<llm::LlmClient> make_client(const RunConfig& config);

// Builtin name or path to a program file.
dsl::WorkflowProgram resolve_program(const std::string& ref);

// Exclusive lock on a run directory (directory-creation based); released on
// destruction. Raises ConfigError when already locked.
class RunLock {
 public:
  explicit RunLock(const std::string& run_dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  std::string path_;
};

}  // namespace arm::cli
