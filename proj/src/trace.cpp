#include "arm/trace.hpp"

#include <sstream>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm {

namespace {

constexpr std::string_view kBoxedToken = "\\boxed{";

// Balanced-brace scan from the character after "\boxed{". Returns the offset
// of the matching close brace, or npos when unbalanced.
size_t match_brace(const std::string& text, size_t open) {
  int depth = 1;
  for (size_t i = open; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}') {
      --depth;
      if (depth == 0) return i;
    }
  }
  return std::string::npos;
}

}  // namespace

std::optional<BoxedMarker> find_last_boxed(const std::string& text) {
  std::optional<BoxedMarker> last;
  size_t pos = 0;
  while ((pos = text.find(kBoxedToken, pos)) != std::string::npos) {
    size_t content_begin = pos + kBoxedToken.size();
    size_t close = match_brace(text, content_begin);
    if (close == std::string::npos) {
      ++pos;
      continue;
    }
    last = BoxedMarker{pos, close + 1, text.substr(content_begin, close - content_begin)};
    pos = close + 1;
  }
  return last;
}

bool ReasoningTrace::completed() const {
  for (const Step& s : steps_) {
    if (find_last_boxed(s.content).has_value()) return true;
  }
  return false;
}

std::string ReasoningTrace::answer() const {
  // Last marker in serialized order; nested \boxed{\boxed{x}} unwraps to x.
  std::optional<BoxedMarker> found;
  for (const Step& s : steps_) {
    if (auto m = find_last_boxed(s.content)) found = m;
  }
  if (!found) throw NotCompleted();
  std::string content = found->content;
  while (auto inner = find_last_boxed(content)) content = inner->content;
  return trim(content);
}

ReasoningTrace ReasoningTrace::append(Step step) const {
  if (completed()) throw AppendAfterCompletion();
  ReasoningTrace next = *this;
  next.steps_.push_back(std::move(step));
  return next;
}

ReasoningTrace ReasoningTrace::prefix(size_t n) const {
  ReasoningTrace out(problem_id_);
  if (n > steps_.size()) n = steps_.size();
  out.steps_.assign(steps_.begin(), steps_.begin() + static_cast<long>(n));
  return out;
}

std::string ReasoningTrace::serialize() const {
  std::ostringstream out;
  for (size_t i = 0; i < steps_.size(); ++i) {
    if (i > 0) out << "\n\n";
    out << "### Step " << (i + 1) << "\n" << steps_[i].content;
  }
  return out.str();
}

ReasoningTrace ReasoningTrace::parse(const std::string& text, std::string problem_id) {
  ReasoningTrace out(std::move(problem_id));
  if (trim(text).empty()) return out;

  // Header lines must carry the next sequential index so step contents that
  // merely mention "### Step 99" do not split the trace.
  auto is_header = [](const std::string& line, size_t expect) {
    return line == "### Step " + std::to_string(expect);
  };

  std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || !is_header(lines[0], 1)) {
    out.steps_.push_back(Step{text});
    return out;
  }

  std::vector<std::string> current;
  size_t next_index = 2;
  auto flush = [&]() {
    // Drop the blank separator line serialize() placed before each header.
    while (!current.empty() && current.back().empty()) current.pop_back();
    std::string content;
    for (size_t i = 0; i < current.size(); ++i) {
      if (i > 0) content += "\n";
      content += current[i];
    }
    out.steps_.push_back(Step{content});
    current.clear();
  };

  for (size_t i = 1; i < lines.size(); ++i) {
    if (is_header(lines[i], next_index)) {
      flush();
      ++next_index;
    } else {
      current.push_back(lines[i]);
    }
  }
  flush();
  return out;
}

std::string normalize_answer(const std::string& text) {
  std::string s = trim(text);
  size_t b = 0, e = s.size();
  while (b < e && s[b] == '$') ++b;
  while (e > b && s[e - 1] == '$') --e;
  return to_lower(collapse_whitespace(trim(s.substr(b, e - b))));
}

bool judge_equality(const std::string& candidate, const std::string& gold) {
  return normalize_answer(candidate) == normalize_answer(gold);
}

}  // namespace arm
