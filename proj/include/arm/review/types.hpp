#pragma once

#include <string>
#include <vector>

namespace arm::review {

struct CritiqueWeakness {
  std::string text;
  bool speculative = false;  // set when no trace excerpt backs it
};

struct Critique {
  std::string analysis;
  std::vector<CritiqueWeakness> weaknesses;
  std::vector<std::string> excerpts;  // verbatim substrings of supplied traces
};

// Audit record of one expansion, serialized beside the child program.
struct MutationRecord {
  std::string parent_hash;
  Critique critique;
  std::string designer_rationale;
  std::string child_source;
  int parse_attempts = 0;
  bool success = false;
  bool no_op = false;   // child hash equals parent hash
  std::string summary;  // one line for GetMutationHistory

  std::string to_json_string() const;
  static MutationRecord from_json_string(const std::string& text, const std::string& origin);
};

}  // namespace arm::review
