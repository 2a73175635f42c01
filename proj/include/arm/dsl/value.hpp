#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "arm/llm/client.hpp"
#include "arm/trace.hpp"

namespace arm::dsl {

class Value;
using ValueList = std::vector<Value>;
using TracePtr = std::shared_ptr<const ReasoningTrace>;

// Result record of vote_report: winning answer plus the weights the
// adaptive-sampling policies branch on.
struct VoteReport {
  std::string answer;
  long long best_weight = 0;
  long long total_weight = 0;
  long long best_index = 0;  // index into the original input list
};

class Value {
 public:
  using Variant = std::variant<std::string, long long, bool, TracePtr, llm::FieldMap,
                               std::shared_ptr<const ValueList>, std::shared_ptr<const VoteReport>>;

  Value() : v_(std::string()) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(long long i) : v_(i) {}
  explicit Value(bool b) : v_(b) {}
  explicit Value(ReasoningTrace t) : v_(std::make_shared<const ReasoningTrace>(std::move(t))) {}
  explicit Value(TracePtr t) : v_(std::move(t)) {}
  explicit Value(llm::FieldMap m) : v_(std::move(m)) {}
  explicit Value(ValueList l) : v_(std::make_shared<const ValueList>(std::move(l))) {}
  explicit Value(VoteReport r) : v_(std::make_shared<const VoteReport>(std::move(r))) {}

  bool is_text() const { return std::holds_alternative<std::string>(v_); }
  bool is_int() const { return std::holds_alternative<long long>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_trace() const { return std::holds_alternative<TracePtr>(v_); }
  bool is_field_map() const { return std::holds_alternative<llm::FieldMap>(v_); }
  bool is_list() const { return std::holds_alternative<std::shared_ptr<const ValueList>>(v_); }
  bool is_report() const { return std::holds_alternative<std::shared_ptr<const VoteReport>>(v_); }

  const std::string& text() const { return std::get<std::string>(v_); }
  long long int_value() const { return std::get<long long>(v_); }
  bool bool_value() const { return std::get<bool>(v_); }
  const ReasoningTrace& trace() const { return *std::get<TracePtr>(v_); }
  const TracePtr& trace_ptr() const { return std::get<TracePtr>(v_); }
  const llm::FieldMap& field_map() const { return std::get<llm::FieldMap>(v_); }
  const ValueList& list() const { return *std::get<std::shared_ptr<const ValueList>>(v_); }
  const VoteReport& report() const { return *std::get<std::shared_ptr<const VoteReport>>(v_); }

  const char* type_name() const;

 private:
  Variant v_;
};

}  // namespace arm::dsl
