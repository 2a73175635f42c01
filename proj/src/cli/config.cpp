#include "arm/cli/config.hpp"

#include <filesystem>

#include <json.hpp>

#include "arm/dsl/builtins.hpp"
#include "arm/dsl/parser.hpp"
#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::cli {

namespace fs = std::filesystem;

namespace {

void apply_client_json(const nlohmann::json& j, RunConfig& cfg) {
  cfg.backend = j.value("backend", cfg.backend);
  cfg.client.endpoint_url = j.value("endpoint_url", cfg.client.endpoint_url);
  cfg.client.model_name = j.value("model_name", cfg.client.model_name);
  cfg.client.temperature = j.value("temperature", cfg.client.temperature);
  cfg.client.top_p = j.value("top_p", cfg.client.top_p);
  cfg.client.max_retries = j.value("max_retries", cfg.client.max_retries);
  cfg.client.timeout = std::chrono::milliseconds(
      j.value("timeout_ms", static_cast<long>(cfg.client.timeout.count())));
  cfg.client.rate_limit = j.value("rate_limit", cfg.client.rate_limit);
  cfg.cache_path = j.value("cache", cfg.cache_path);
  if (j.contains("mock_world")) cfg.mock_world_json = j["mock_world"].dump();
}

}  // namespace

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  RunConfig cfg;
  if (!path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(path));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("cannot load config: ") + e.what());
    }
    cfg.dataset_path = j.value("dataset", cfg.dataset_path);
    cfg.run_dir = j.value("run_dir", cfg.run_dir);
    cfg.budget = j.value("budget", cfg.budget);
    cfg.parallelism = j.value("parallelism", cfg.parallelism);
    if (j.contains("client")) apply_client_json(j["client"], cfg);
    if (j.contains("search")) {
      const auto& s = j["search"];
      cfg.search.iterations = s.value("iterations", cfg.search.iterations);
      cfg.search.selection_temperature =
          s.value("selection_temperature", cfg.search.selection_temperature);
      cfg.search.exploration_c = s.value("exploration_c", cfg.search.exploration_c);
      cfg.search.seed = s.value("seed", cfg.search.seed);
      cfg.search.eval_batch = s.value("eval_batch", cfg.search.eval_batch);
    }
    if (j.contains("scaffold")) {
      cfg.scaffold_window = j["scaffold"].value("window", cfg.scaffold_window);
    }
    if (j.contains("evaluate")) {
      const auto& e = j["evaluate"];
      cfg.methods = e.value("methods", cfg.methods);
      cfg.step_gen_ref = e.value("step_gen", cfg.step_gen_ref);
      cfg.crossover_prefix_fraction =
          e.value("crossover_prefix_fraction", cfg.crossover_prefix_fraction);
    }
    if (j.contains("mdp")) {
      const auto& m = j["mdp"];
      cfg.mdp.seed = m.value("seed", cfg.mdp.seed);
      cfg.mdp.instances = m.value("instances", cfg.mdp.instances);
      cfg.mdp.max_states = m.value("max_states", cfg.mdp.max_states);
      cfg.mdp.horizon = m.value("horizon", cfg.mdp.horizon);
      cfg.mdp.mc_episodes = m.value("mc_episodes", cfg.mdp.mc_episodes);
      cfg.mdp.oracle_fixtures = m.value("oracle_fixtures", cfg.mdp.oracle_fixtures);
      cfg.mdp.perturbation = m.value("perturbation", cfg.mdp.perturbation);
      cfg.mdp.perturbed_instances = m.value("perturbed_instances", cfg.mdp.perturbed_instances);
      cfg.mdp.prop2_c = m.value("prop2_c", cfg.mdp.prop2_c);
      cfg.mdp_instance_files = m.value("instance_files", cfg.mdp_instance_files);
      cfg.mdp_report_path = m.value("report", cfg.mdp_report_path);
    }
  }

  if (overrides.seed) {
    cfg.search.seed = *overrides.seed;
    cfg.mdp.seed = *overrides.seed;
  }
  if (overrides.budget) cfg.budget = *overrides.budget;
  if (overrides.run_dir) cfg.run_dir = *overrides.run_dir;
  if (!overrides.methods.empty()) cfg.methods = overrides.methods;
  if (overrides.step_gen) cfg.step_gen_ref = *overrides.step_gen;
  if (overrides.mdp_instances) cfg.mdp.instances = *overrides.mdp_instances;

  if (cfg.budget == 0) throw ConfigError("budget must be > 0");
  if (cfg.scaffold_window < 1) throw ConfigError("scaffold window must be >= 1");
  if (cfg.cache_path.empty()) cfg.cache_path = cfg.run_dir + "/cache.jsonl";
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["dataset"] = cfg.dataset_path;
  j["run_dir"] = cfg.run_dir;
  j["budget"] = cfg.budget;
  j["parallelism"] = cfg.parallelism;
  j["client"] = {{"backend", cfg.backend},
                 {"endpoint_url", cfg.client.endpoint_url},
                 {"model_name", cfg.client.model_name},
                 {"temperature", cfg.client.temperature},
                 {"top_p", cfg.client.top_p},
                 {"max_retries", cfg.client.max_retries},
                 {"timeout_ms", static_cast<long>(cfg.client.timeout.count())},
                 {"rate_limit", cfg.client.rate_limit},
                 {"cache", cfg.cache_path}};
  if (!cfg.mock_world_json.empty()) {
    j["client"]["mock_world"] = nlohmann::json::parse(cfg.mock_world_json);
  }
  j["search"] = {{"iterations", cfg.search.iterations},
                 {"selection_temperature", cfg.search.selection_temperature},
                 {"exploration_c", cfg.search.exploration_c},
                 {"seed", cfg.search.seed},
                 {"eval_batch", cfg.search.eval_batch}};
  j["scaffold"] = {{"window", cfg.scaffold_window}};
  j["evaluate"] = {{"methods", cfg.methods},
                   {"step_gen", cfg.step_gen_ref},
                   {"crossover_prefix_fraction", cfg.crossover_prefix_fraction}};
  j["mdp"] = {{"seed", cfg.mdp.seed},
              {"instances", cfg.mdp.instances},
              {"max_states", cfg.mdp.max_states},
              {"horizon", cfg.mdp.horizon},
              {"mc_episodes", cfg.mdp.mc_episodes},
              {"oracle_fixtures", cfg.mdp.oracle_fixtures},
              {"perturbation", cfg.mdp.perturbation},
              {"perturbed_instances", cfg.mdp.perturbed_instances},
              {"prop2_c", cfg.mdp.prop2_c},
              {"instance_files", cfg.mdp_instance_files},
              {"report", cfg.mdp_report_path}};
  return j.dump(2);
}

namespace {

// Content-keyed mock world: answers are looked up by substring markers in
// the rendered prompt, so replay and concurrent scheduling stay
// deterministic.
llm::ScriptedBackend::DefaultFn make_mock_world_fn(const std::string& world_json) {
  int steps_before_answer = 2;
  std::string default_answer = "42";
  std::vector<std::pair<std::string, std::string>> matchers;
  if (!world_json.empty()) {
    nlohmann::json w = nlohmann::json::parse(world_json);
    steps_before_answer = w.value("steps_before_answer", steps_before_answer);
    default_answer = w.value("default_answer", default_answer);
    for (const auto& p : w.value("problems", nlohmann::json::array())) {
      matchers.emplace_back(p.at("match").get<std::string>(), p.at("answer").get<std::string>());
    }
  }

  return [steps_before_answer, default_answer, matchers](llm::RequestKind kind,
                                                         const std::string& prompt, uint64_t) {
    std::string answer = default_answer;
    for (const auto& [match, ans] : matchers) {
      if (prompt.find(match) != std::string::npos) {
        answer = ans;
        break;
      }
    }
    switch (kind) {
      case llm::RequestKind::GenerateStep: {
        size_t steps = 0, pos = 0;
        while ((pos = prompt.find("### Step ", pos)) != std::string::npos) {
          ++steps;
          pos += 9;
        }
        if (static_cast<int>(steps) + 1 >= steps_before_answer) {
          return "Combining the progress so far, the final answer is \\boxed{" + answer + "}.";
        }
        return std::string("Working through the next stage of the computation.");
      }
      case llm::RequestKind::CompleteSolution:
        return "Wrapping up: the final answer is \\boxed{" + answer + "}.";
      case llm::RequestKind::Chat: {
        std::string base = llm::auto_default_response(llm::RequestKind::Chat, prompt);
        // Feed the world answer into answer-like fields.
        size_t at = base.find("### answer\n");
        if (at != std::string::npos) {
          size_t vstart = at + 11;
          size_t vend = base.find('\n', vstart);
          base.replace(vstart, vend - vstart, answer);
        }
        return base;
      }
    }
    return std::string("ok");
  };
}

}  // namespace

std::shared_ptr<llm::LlmClient> make_client(const RunConfig& cfg) {
  std::shared_ptr<llm::Backend> backend;
  if (cfg.backend == "mock") {
    auto scripted = std::make_shared<llm::ScriptedBackend>();
    scripted->set_default(make_mock_world_fn(cfg.mock_world_json));
    backend = scripted;
  } else if (cfg.backend == "http") {
    backend = std::make_shared<llm::HttpBackend>(cfg.client);
  } else if (cfg.backend == "replay") {
    backend = nullptr;  // cache only
  } else {
    throw ConfigError("unknown backend '" + cfg.backend + "' (mock | http | replay)");
  }

  if (cfg.backend == "replay") {
    backend = std::make_shared<llm::CacheBackend>(cfg.cache_path, nullptr);
  } else if (cfg.cache_path != "none") {
    fs::create_directories(fs::path(cfg.cache_path).parent_path());
    backend = std::make_shared<llm::CacheBackend>(cfg.cache_path, backend);
  }

  auto client = std::make_shared<llm::LlmClient>(cfg.client, backend);
  client->set_budget(cfg.budget);
  return client;
}

dsl::WorkflowProgram resolve_program(const std::string& ref) {
  for (const std::string& name : dsl::builtin_names()) {
    if (name == ref) return dsl::builtin(ref);
  }
  if (fs::exists(ref)) return dsl::parse_program(read_file(ref));
  throw ConfigError("program ref '" + ref + "' is neither a builtin nor a file");
}

RunLock::RunLock(const std::string& run_dir) : path_(run_dir + "/.lock") {
  fs::create_directories(run_dir);
  std::error_code ec;
  if (!fs::create_directory(path_, ec) || ec) {
    throw ConfigError("run directory is locked by another process (remove " + path_ +
                      " if that process is gone)");
  }
}

RunLock::~RunLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

}  // namespace arm::cli
