#pragma once

#include <optional>
#include <string>
#include <vector>

namespace arm {

struct Problem {
  std::string id;
  std::string statement;
  std::string gold_answer;
};

// One reasoning step. Serialized under a "### Step k" header; the content
// itself never carries the header.
struct Step {
  std::string content;
};

struct BoxedMarker {
  size_t begin = 0;  // offset of the backslash in "\boxed{"
  size_t end = 0;    // offset one past the closing brace
  std::string content;
};

// Scans for `\boxed{...}` with balanced braces. Returns the last well-formed
// occurrence, if any.
std::optional<BoxedMarker> find_last_boxed(const std::string& text);

// Immutable reasoning trace. Completion is a pure function of step contents:
// the trace is completed iff any step carries a well-formed boxed marker.
class ReasoningTrace {
 public:
  ReasoningTrace() = default;
  explicit ReasoningTrace(std::string problem_id) : problem_id_(std::move(problem_id)) {}

  const std::string& problem_id() const { return problem_id_; }
  const std::vector<Step>& steps() const { return steps_; }
  size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  bool completed() const;

  // Innermost content of the last boxed marker, whitespace-trimmed.
  // Throws NotCompleted when no marker exists.
  std::string answer() const;

  // Throws AppendAfterCompletion when the trace already carries an answer.
  ReasoningTrace append(Step step) const;

  // First n steps (n clamped to size).
  ReasoningTrace prefix(size_t n) const;

  // Steps joined with blank lines under "### Step k" headers.
  std::string serialize() const;

  // Inverse of serialize(): splits on sequential "### Step k" headers.
  // Text without any header becomes a single step. Empty text -> empty trace.
  static ReasoningTrace parse(const std::string& text, std::string problem_id = "");

 private:
  std::string problem_id_;
  std::vector<Step> steps_;
};

struct Reward {
  double value = 0.0;  // binary: 1.0 iff judged equal to gold
};

// Default answer normalizer: trim, strip surrounding '$', collapse internal
// whitespace, case-fold. No symbolic equivalence ("0.5" != "1/2").
std::string normalize_answer(const std::string& text);

bool judge_equality(const std::string& candidate, const std::string& gold);

}  // namespace arm
