#include <set>
#include <string>
#include <vector>

#include "arm/dsl/ast.hpp"
#include "arm/errors.hpp"

namespace arm::dsl {

namespace {

// Statement/expression category used to keep control flow well-formed:
// both branches of an If must agree, loop bodies must end in break/continue,
// and the program body must end in Return on every path.
enum class Cat { Value, Returns, LoopExit };

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {
      "program", "step_generator", "meta_policy", "let", "return", "break", "continue",
      "if", "else", "loop", "max", "parallel", "chat", "context", "item", "desc",
      "instructions", "fields", "field", "true", "false", "problem", "history",
      "partial_progress"};
  return names;
}

class Validator {
 public:
  explicit Validator(const WorkflowProgram& p) : program_(p) {}

  void run() {
    std::vector<std::string> scope;
    scope.push_back("problem");
    if (program_.kind == ProgramKind::StepGenerator) {
      scope.push_back("history");
      scope.push_back("partial_progress");
    }
    Cat cat = check(*program_.root, scope);
    if (cat != Cat::Returns) {
      fail(*program_.root, "program body must end in a return on every path (missing Return)");
    }
  }

 private:
  [[noreturn]] void fail(const AstNode& n, const std::string& msg) {
    throw ValidationError(msg, n.line, n.col);
  }

  bool in_scope(const std::vector<std::string>& scope, const std::string& name) {
    for (const auto& s : scope) {
      if (s == name) return true;
    }
    return false;
  }

  void bind(const AstNode& at, std::vector<std::string>& scope, const std::string& name) {
    if (reserved_names().count(name)) fail(at, "cannot bind reserved name '" + name + "'");
    if (in_scope(scope, name)) fail(at, "name '" + name + "' is already bound");
    scope.push_back(name);
  }

  void expect_value(const AstNode& n, const std::vector<std::string>& scope) {
    std::vector<std::string> inner = scope;
    if (check(n, inner) != Cat::Value) {
      fail(n, "control flow (return/break/continue) is not allowed here");
    }
  }

  Cat check(const AstNode& n, std::vector<std::string>& scope) {
    switch (n.kind) {
      case NodeKind::Sequence: return check_sequence(n, scope);
      case NodeKind::Let: fail(n, "let outside statement sequence");
      case NodeKind::Return: {
        expect_value(*n.children[0], scope);
        if (loop_depth_ > 0) fail(n, "return is not allowed inside a loop body");
        if (parallel_depth_ > 0) fail(n, "return is not allowed inside a parallel child");
        return Cat::Returns;
      }
      case NodeKind::Break:
      case NodeKind::Continue: {
        const char* what = n.kind == NodeKind::Break ? "break" : "continue";
        if (loop_depth_ == 0) fail(n, std::string(what) + " outside a loop");
        if (parallel_depth_ > 0) fail(n, std::string(what) + " cannot cross a parallel block");
        if (n.children.size() != loop_arity_.back()) {
          fail(n, std::string(what) + " arity " + std::to_string(n.children.size()) +
                      " does not match loop accumulator count " +
                      std::to_string(loop_arity_.back()));
        }
        for (const AstPtr& c : n.children) expect_value(*c, scope);
        return Cat::LoopExit;
      }
      case NodeKind::If: {
        expect_value(*n.children[0], scope);
        std::vector<std::string> s1 = scope, s2 = scope;
        Cat a = check(*n.children[1], s1);
        Cat b = check(*n.children[2], s2);
        if (a != b) fail(n, "if branches disagree: one yields a value, the other exits");
        return a;
      }
      case NodeKind::Loop: return check_loop(n, scope);
      case NodeKind::Parallel: {
        ++parallel_depth_;
        for (const AstPtr& c : n.children) expect_value(*c, scope);
        --parallel_depth_;
        return Cat::Value;
      }
      case NodeKind::FieldRef: {
        if (!in_scope(scope, n.names[0])) {
          fail(n, "unbound reference '" + n.names[0] + "'");
        }
        return Cat::Value;
      }
      case NodeKind::Format: {
        for (const std::string& slot : n.names) {
          if (!in_scope(scope, slot)) {
            fail(n, "format placeholder '{" + slot + "}' is unbound");
          }
        }
        return Cat::Value;
      }
      case NodeKind::LlmGenerateStep: {
        if (program_.kind != ProgramKind::StepGenerator) {
          fail(n, "generate_step is only available in step_generator programs");
        }
        break;
      }
      case NodeKind::CallStepGenerator:
      case NodeKind::Rollout: {
        if (program_.kind != ProgramKind::MetaPolicy) {
          fail(n, "step-generator orchestration is only available in meta_policy programs");
        }
        if (n.kind == NodeKind::Rollout && n.rollout_max < 1) {
          fail(n, "rollout bound must be at least 1");
        }
        break;
      }
      case NodeKind::LlmChat: {
        std::set<std::string> seen;
        for (const auto& [name, desc] : n.chat_fields) {
          (void)desc;
          if (name.empty()) fail(n, "chat response field name must be non-empty");
          if (!seen.insert(name).second) fail(n, "duplicate chat response field '" + name + "'");
        }
        for (const ChatContextItem& item : n.chat_context) {
          if (item.name.empty()) fail(n, "chat context item name must be non-empty");
        }
        break;
      }
      case NodeKind::ParseInt: {
        if (n.clamp_lo > n.clamp_hi) fail(n, "parse_int clamp range is empty");
        break;
      }
      case NodeKind::Vote: {
        if (n.children.empty() || n.children.size() > 3) {
          fail(n, "vote takes 1..3 arguments");
        }
        break;
      }
      default: break;
    }
    for (const AstPtr& c : n.children) expect_value(*c, scope);
    return Cat::Value;
  }

  Cat check_sequence(const AstNode& seq, std::vector<std::string>& scope) {
    if (seq.children.empty()) fail(seq, "empty block");
    for (size_t i = 0; i < seq.children.size(); ++i) {
      const AstNode& stmt = *seq.children[i];
      bool last = i + 1 == seq.children.size();
      if (stmt.kind == NodeKind::Let) {
        if (last) fail(stmt, "a block cannot end with a let binding");
        check_let(stmt, scope);
        continue;
      }
      if (!last) fail(stmt, "only let bindings may precede the final statement of a block");
      return check(stmt, scope);
    }
    fail(seq, "empty block");
  }

  void check_let(const AstNode& let, std::vector<std::string>& scope) {
    const AstNode& value = *let.children[0];
    expect_value(value, scope);
    if (let.names.size() > 1) {
      size_t arity = 0;
      bool known = true;
      switch (value.kind) {
        case NodeKind::Parallel:
        case NodeKind::ListOf: arity = value.children.size(); break;
        case NodeKind::Loop: arity = value.names.size(); break;
        default: known = false;
      }
      if (known && arity != let.names.size()) {
        fail(let, "destructuring arity " + std::to_string(let.names.size()) +
                      " does not match value arity " + std::to_string(arity));
      }
    }
    for (const std::string& name : let.names) bind(let, scope, name);
  }

  Cat check_loop(const AstNode& loop, std::vector<std::string>& scope) {
    if (loop.loop_max < 1) fail(loop, "loop requires a finite max bound");
    size_t arity = loop.names.size();
    if (loop.children.size() != arity + 1) {
      fail(loop, "loop initializer count " + std::to_string(loop.children.size() - 1) +
                     " does not match accumulator count " + std::to_string(arity));
    }
    for (size_t i = 0; i < arity; ++i) expect_value(*loop.children[i], scope);

    std::vector<std::string> body_scope = scope;
    for (const std::string& name : loop.names) bind(loop, body_scope, name);
    loop_arity_.push_back(arity);
    ++loop_depth_;
    Cat body = check(*loop.children.back(), body_scope);
    --loop_depth_;
    loop_arity_.pop_back();
    if (body != Cat::LoopExit) {
      fail(*loop.children.back(), "loop body must end in break or continue on every path");
    }
    return Cat::Value;
  }

  const WorkflowProgram& program_;
  int loop_depth_ = 0;
  int parallel_depth_ = 0;
  std::vector<size_t> loop_arity_;
};

}  // namespace

void validate_program(const WorkflowProgram& program) { Validator(program).run(); }

}  // namespace arm::dsl
