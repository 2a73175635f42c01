#pragma once

#include <string>
#include <vector>

#include "arm/trace.hpp"

namespace arm {

// JSON-lines dataset: one record per line with fields `id`, `problem`,
// `answer`. Blank lines are skipped; malformed lines raise ConfigError.
std::vector<Problem> load_dataset(const std::string& path);

std::vector<Problem> parse_dataset(const std::string& jsonl, const std::string& origin);

}  // namespace arm
