#include "arm/dataset.hpp"

#include <set>

#include <json.hpp>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm {

std::vector<Problem> parse_dataset(const std::string& jsonl, const std::string& origin) {
  std::vector<Problem> out;
  std::set<std::string> seen;
  size_t lineno = 0;
  for (const std::string& line : split_lines(jsonl)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.contains("id") || !rec.contains("problem") || !rec.contains("answer")) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": record needs fields id, problem, answer");
    }
    Problem p{rec["id"].get<std::string>(), rec["problem"].get<std::string>(),
              rec["answer"].get<std::string>()};
    if (p.statement.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty problem statement");
    }
    if (!seen.insert(p.id).second) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate problem id " + p.id);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Problem> load_dataset(const std::string& path) {
  return parse_dataset(read_file(path), path);
}

}  // namespace arm
