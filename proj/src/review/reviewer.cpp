#include "arm/review/reviewer.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "arm/dsl/parser.hpp"
#include "arm/errors.hpp"
#include "arm/review/prompts.hpp"
#include "arm/util.hpp"

namespace arm::review {

// --- MutationRecord serialization ---

std::string MutationRecord::to_json_string() const {
  nlohmann::json weaknesses = nlohmann::json::array();
  for (const CritiqueWeakness& w : critique.weaknesses) {
    weaknesses.push_back({{"text", w.text}, {"speculative", w.speculative}});
  }
  nlohmann::json j{{"parent_hash", parent_hash},
                   {"critique",
                    {{"analysis", critique.analysis},
                     {"weaknesses", weaknesses},
                     {"excerpts", critique.excerpts}}},
                   {"designer_rationale", designer_rationale},
                   {"child_source", child_source},
                   {"parse_attempts", parse_attempts},
                   {"success", success},
                   {"no_op", no_op},
                   {"summary", summary}};
  return j.dump(2);
}

MutationRecord MutationRecord::from_json_string(const std::string& text,
                                                const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptState(origin, e.what());
  }
  MutationRecord r;
  r.parent_hash = j.value("parent_hash", "");
  if (j.contains("critique")) {
    const auto& c = j["critique"];
    r.critique.analysis = c.value("analysis", "");
    for (const auto& w : c.value("weaknesses", nlohmann::json::array())) {
      r.critique.weaknesses.push_back(
          CritiqueWeakness{w.value("text", ""), w.value("speculative", false)});
    }
    r.critique.excerpts = c.value("excerpts", std::vector<std::string>{});
  }
  r.designer_rationale = j.value("designer_rationale", "");
  r.child_source = j.value("child_source", "");
  r.parse_attempts = j.value("parse_attempts", 0);
  r.success = j.value("success", false);
  r.no_op = j.value("no_op", false);
  r.summary = j.value("summary", "");
  return r;
}

// --- Reviewer ---

Reviewer::Reviewer(llm::LlmClient& client, ReviewerOptions options)
    : client_(client), options_(options) {}

std::string extract_program_block(const std::string& text) {
  size_t open = text.find("```");
  if (open == std::string::npos) return trim(text);
  size_t body_start = text.find('\n', open);
  if (body_start == std::string::npos) return trim(text);
  size_t close = text.find("```", body_start);
  if (close == std::string::npos) return trim(text.substr(body_start + 1));
  return trim(text.substr(body_start + 1, close - body_start - 1));
}

namespace {

std::string truncate_head_tail(const std::string& text, int head, int tail) {
  if (static_cast<int>(text.size()) <= head + tail) return text;
  return text.substr(0, static_cast<size_t>(head)) + "\n[... trace truncated ...]\n" +
         text.substr(text.size() - static_cast<size_t>(tail));
}

std::string first_line(const std::string& text, size_t limit) {
  std::string line = text.substr(0, text.find('\n'));
  if (line.size() > limit) line = line.substr(0, limit - 3) + "...";
  return line;
}

}  // namespace

std::string Reviewer::render_traces(const std::vector<eval::ExecutionRecord>& traces) const {
  // Failures first (stable), then cap at max_traces.
  std::vector<const eval::ExecutionRecord*> ordered;
  for (const auto& r : traces) {
    if (r.reward < 0.5) ordered.push_back(&r);
  }
  for (const auto& r : traces) {
    if (r.reward >= 0.5) ordered.push_back(&r);
  }
  if (static_cast<int>(ordered.size()) > options_.max_traces) {
    ordered.resize(static_cast<size_t>(options_.max_traces));
  }

  std::ostringstream out;
  for (size_t i = 0; i < ordered.size(); ++i) {
    const eval::ExecutionRecord& r = *ordered[i];
    out << "--- Trace " << (i + 1) << " | problem " << r.problem_id << " | reward " << r.reward;
    if (!r.error.empty()) out << " | error: " << r.error;
    out << "\n";
    out << truncate_head_tail(r.trace_text, options_.trace_head_chars, options_.trace_tail_chars)
        << "\n";
  }
  return out.str();
}

Critique Reviewer::critique(const std::string& parent_source,
                            const std::vector<eval::ExecutionRecord>& traces) {
  if (traces.empty()) throw Error("critique requires at least one execution trace");
  std::string rendered = render_traces(traces);

  llm::StructuredRequest req;
  req.context.push_back({"Parent Program", parent_source, "The program under review."});
  req.context.push_back(
      {"Execution Traces", rendered, "Reasoning traces from its latest evaluation."});
  req.instructions = prompts::kCriticInstructions;
  req.response_format = {{"analysis", "Concise analysis of strengths and weaknesses."},
                         {"weaknesses", "Concrete weaknesses, one per line, '- ' prefixed."},
                         {"excerpts", "Verbatim trace excerpts separated by '---' lines."}};
  llm::FieldMap response = client_.chat_completion(req, call_counter_++);

  Critique critique;
  critique.analysis = trim(response.at("analysis"));
  if (critique.analysis.empty()) critique.analysis = "(critic produced no analysis)";

  for (const std::string& line : split_lines(response.at("weaknesses"))) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (starts_with(t, "- ")) t = trim(t.substr(2));
    critique.weaknesses.push_back(CritiqueWeakness{t, false});
  }

  // The excerpt contract is substring-of-supplied-traces; anything the model
  // paraphrased is dropped rather than kept as fake evidence.
  std::string current;
  auto flush = [&]() {
    std::string e = trim(current);
    current.clear();
    if (e.empty()) return;
    if (rendered.find(e) != std::string::npos) critique.excerpts.push_back(e);
  };
  for (const std::string& line : split_lines(response.at("excerpts"))) {
    if (trim(line) == "---") {
      flush();
    } else {
      if (!current.empty()) current += "\n";
      current += line;
    }
  }
  flush();

  if (critique.excerpts.empty()) {
    for (CritiqueWeakness& w : critique.weaknesses) w.speculative = true;
  }
  return critique;
}

Reviewer::DesignOutcome Reviewer::design(const std::string& parent_source,
                                         const std::vector<std::string>& mutation_history,
                                         const Critique& critique) {
  std::ostringstream critique_text;
  critique_text << critique.analysis << "\n";
  for (const CritiqueWeakness& w : critique.weaknesses) {
    critique_text << "- " << w.text << (w.speculative ? " (speculative)" : "") << "\n";
  }

  std::ostringstream history_text;
  size_t start = mutation_history.size() > static_cast<size_t>(options_.history_window)
                     ? mutation_history.size() - static_cast<size_t>(options_.history_window)
                     : 0;
  for (size_t i = start; i < mutation_history.size(); ++i) {
    history_text << (i - start + 1) << ". " << mutation_history[i] << "\n";
  }
  if (mutation_history.empty()) history_text << "(none: this is the first mutation)\n";

  std::vector<std::string> rejected;
  std::string feedback;
  for (int attempt = 1; attempt <= options_.design_attempts; ++attempt) {
    llm::StructuredRequest req;
    req.context.push_back({"Parent Program", parent_source, "The program to mutate."});
    req.context.push_back({"Critique", critique_text.str(), "The Critic's analysis."});
    req.context.push_back(
        {"Mutation History", history_text.str(), "Most recent mutations along this lineage."});
    req.context.push_back({"Language Reference", prompts::kGrammarCrib,
                           "Summary of the workflow language."});
    if (!feedback.empty()) {
      req.context.push_back({"Previous Attempt Rejected", feedback,
                             "Fix this error and emit the corrected program."});
    }
    req.instructions = prompts::kDesignerInstructions;
    req.response_format = {{"rationale", "One or two sentences naming the single change."},
                           {"program", "The complete program in one fenced code block."}};
    llm::FieldMap response = client_.chat_completion(req, call_counter_++);

    std::string source = extract_program_block(response.at("program"));
    try {
      DesignOutcome outcome;
      outcome.program = dsl::parse_program(source);
      outcome.rationale = trim(response.at("rationale"));
      outcome.attempts = attempt;
      return outcome;
    } catch (const Error& e) {
      rejected.push_back(source);
      feedback = e.what();
    }
  }
  throw ReviewerFailure("designer produced no valid program in " +
                            std::to_string(options_.design_attempts) + " attempts (last: " +
                            feedback + ")",
                        std::move(rejected));
}

search::ExpansionResult Reviewer::expand(const dsl::WorkflowProgram& parent,
                                         const eval::EvalReport& parent_report,
                                         const std::vector<std::string>& mutation_history) {
  if (parent_report.records.empty()) {
    throw Error("expand requires a parent EvalReport with traces");
  }
  Critique crit = critique(parent.canonical, parent_report.records);
  DesignOutcome designed = design(parent.canonical, mutation_history, crit);

  search::ExpansionResult result;
  result.child = std::move(designed.program);
  result.record.parent_hash = parent.hash;
  result.record.critique = std::move(crit);
  result.record.designer_rationale = designed.rationale;
  result.record.child_source = result.child.source;
  result.record.parse_attempts = designed.attempts;
  result.record.success = true;
  result.record.no_op = result.child.hash == parent.hash;
  std::string summary = first_line(designed.rationale, 160);
  if (summary.empty()) summary = "(no rationale given)";
  if (result.record.no_op) summary += " [no_op_mutation]";
  result.record.summary = summary;
  return result;
}

}  // namespace arm::review
