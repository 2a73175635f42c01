#include "arm/dsl/interpreter.hpp"

#include <future>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::dsl {

const char* value_type_name_for(const Value& v);

long long ExecutionTrace::prompt_tokens() const {
  long long total = 0;
  for (const auto& c : calls) total += c.prompt_tokens;
  return total;
}

long long ExecutionTrace::completion_tokens() const {
  long long total = 0;
  for (const auto& c : calls) total += c.completion_tokens;
  return total;
}

const char* Value::type_name() const {
  if (is_text()) return "text";
  if (is_int()) return "int";
  if (is_bool()) return "bool";
  if (is_trace()) return "trace";
  if (is_field_map()) return "field_map";
  if (is_list()) return "list";
  return "vote_report";
}

namespace {

struct Scope {
  std::shared_ptr<const Scope> parent;
  std::map<std::string, Value> vars;

  const Value* lookup(const std::string& name) const {
    auto it = vars.find(name);
    if (it != vars.end()) return &it->second;
    return parent ? parent->lookup(name) : nullptr;
  }
};

struct Outcome {
  enum Kind { Val, Ret, Brk, Cont } kind = Val;
  Value value;
  std::vector<Value> tuple;  // break/continue payload
};

class Engine {
 public:
  Engine(const WorkflowProgram& program, const Problem& problem, llm::LlmClient& client,
         const WorkflowProgram* step_gen, const InterpreterOptions& opts, uint64_t path_seed)
      : program_(program),
        problem_(problem),
        client_(client),
        step_gen_(step_gen),
        opts_(opts),
        path_seed_(path_seed) {}

  struct Frame {
    std::shared_ptr<Scope> scope;
    std::vector<uint32_t> path;
    std::vector<llm::CallRecord> log;
  };

  Value run(const ReasoningTrace* history) {
    Frame frame;
    frame.scope = std::make_shared<Scope>();
    frame.scope->vars.emplace("problem", Value(problem_.statement));
    if (history) {
      frame.scope->vars.emplace("history", Value(*history));
      frame.scope->vars.emplace("partial_progress", Value(history->serialize()));
    }
    Outcome out = eval(*program_.root, frame);
    log = std::move(frame.log);
    if (out.kind != Outcome::Ret) {
      throw InterpreterError("program finished without return", program_.root->line,
                             program_.root->col);
    }
    return out.value;
  }

  std::vector<llm::CallRecord> log;

 private:
  [[noreturn]] void fail(const AstNode& n, const std::string& msg) const {
    throw InterpreterError(msg, n.line, n.col);
  }

  uint64_t sample_index(const AstNode& n, const Frame& frame) const {
    std::string key;
    key.reserve(frame.path.size() * 4 + 8);
    for (uint32_t p : frame.path) {
      key.push_back(static_cast<char>(p & 0xff));
      key.push_back(static_cast<char>((p >> 8) & 0xff));
      key.push_back(static_cast<char>((p >> 16) & 0xff));
      key.push_back(static_cast<char>((p >> 24) & 0xff));
    }
    key.push_back(static_cast<char>(n.id & 0xff));
    key.push_back(static_cast<char>((n.id >> 8) & 0xff));
    return fnv1a(key, path_seed_ ^ 0x9e3779b97f4a7c15ULL);
  }

  llm::CallSink sink(Frame& frame) const {
    return [&frame](const llm::CallRecord& rec) { frame.log.push_back(rec); };
  }

  // --- coercion helpers ---

  std::string want_text(const AstNode& n, const Value& v) const {
    if (v.is_text()) return v.text();
    if (v.is_trace()) return v.trace().serialize();
    if (v.is_int()) return std::to_string(v.int_value());
    if (v.is_bool()) return v.bool_value() ? "true" : "false";
    fail(n, std::string("expected text, got ") + v.type_name());
  }

  long long want_int(const AstNode& n, const Value& v) const {
    if (!v.is_int()) fail(n, std::string("expected int, got ") + v.type_name());
    return v.int_value();
  }

  bool want_bool(const AstNode& n, const Value& v) const {
    if (!v.is_bool()) fail(n, std::string("expected bool, got ") + v.type_name());
    return v.bool_value();
  }

  const ValueList& want_list(const AstNode& n, const Value& v) const {
    if (!v.is_list()) fail(n, std::string("expected list, got ") + v.type_name());
    return v.list();
  }

  ReasoningTrace want_trace(const AstNode& n, const Value& v) const {
    if (!v.is_trace()) fail(n, std::string("expected trace, got ") + v.type_name());
    return v.trace();
  }

  Value eval_value(const AstNode& n, Frame& frame) {
    Outcome out = eval(n, frame);
    if (out.kind != Outcome::Val) fail(n, "unexpected control flow");
    return std::move(out.value);
  }

  // --- evaluation ---

  Outcome eval(const AstNode& n, Frame& frame) {
    switch (n.kind) {
      case NodeKind::Sequence: return eval_sequence(n, frame);
      case NodeKind::Literal: {
        if (n.literal_type == LiteralType::Text) return {Outcome::Val, Value(n.text), {}};
        if (n.literal_type == LiteralType::Int) return {Outcome::Val, Value(n.int_value), {}};
        return {Outcome::Val, Value(n.bool_value), {}};
      }
      case NodeKind::FieldRef: return {Outcome::Val, eval_field_ref(n, frame), {}};
      case NodeKind::Return: {
        Outcome out;
        out.kind = Outcome::Ret;
        out.value = eval_value(*n.children[0], frame);
        return out;
      }
      case NodeKind::Break:
      case NodeKind::Continue: {
        Outcome out;
        out.kind = n.kind == NodeKind::Break ? Outcome::Brk : Outcome::Cont;
        for (const AstPtr& c : n.children) out.tuple.push_back(eval_value(*c, frame));
        return out;
      }
      case NodeKind::If: {
        bool cond = want_bool(*n.children[0], eval_value(*n.children[0], frame));
        return eval(*n.children[cond ? 1 : 2], frame);
      }
      case NodeKind::Loop: return eval_loop(n, frame);
      case NodeKind::Parallel: return {Outcome::Val, eval_parallel(n, frame), {}};
      case NodeKind::BinOp: return {Outcome::Val, eval_binop(n, frame), {}};
      case NodeKind::Format: return {Outcome::Val, eval_format(n, frame), {}};
      case NodeKind::ListOf: {
        ValueList items;
        for (const AstPtr& c : n.children) items.push_back(eval_value(*c, frame));
        return {Outcome::Val, Value(std::move(items)), {}};
      }
      case NodeKind::Append: {
        ValueList items = want_list(n, eval_value(*n.children[0], frame));
        items.push_back(eval_value(*n.children[1], frame));
        return {Outcome::Val, Value(std::move(items)), {}};
      }
      case NodeKind::Index: {
        const Value list_v = eval_value(*n.children[0], frame);
        const ValueList& items = want_list(n, list_v);
        long long i = want_int(n, eval_value(*n.children[1], frame));
        if (i < 0 || static_cast<size_t>(i) >= items.size()) {
          fail(n, "index " + std::to_string(i) + " out of range for list of " +
                      std::to_string(items.size()));
        }
        return {Outcome::Val, items[static_cast<size_t>(i)], {}};
      }
      case NodeKind::Len: {
        const Value list_v = eval_value(*n.children[0], frame);
        return {Outcome::Val, Value(static_cast<long long>(want_list(n, list_v).size())), {}};
      }
      case NodeKind::JudgeEqual: {
        std::string a = want_text(n, eval_value(*n.children[0], frame));
        std::string b = want_text(n, eval_value(*n.children[1], frame));
        return {Outcome::Val, Value(judge_equality(a, b)), {}};
      }
      case NodeKind::ParseInt: {
        Value in = eval_value(*n.children[0], frame);
        long long parsed = n.clamp_lo;
        if (in.is_int()) parsed = in.int_value();
        else {
          long long scanned;
          if (scan_first_int(want_text(n, in), scanned)) parsed = scanned;
        }
        parsed = std::max(n.clamp_lo, std::min(parsed, n.clamp_hi));
        return {Outcome::Val, Value(parsed), {}};
      }
      case NodeKind::ParseYesNo: {
        std::string t = to_lower(trim(want_text(n, eval_value(*n.children[0], frame))));
        return {Outcome::Val, Value(starts_with(t, "y")), {}};
      }
      case NodeKind::EmptyTrace:
        return {Outcome::Val, Value(ReasoningTrace(problem_.id)), {}};
      case NodeKind::ParseTrace: {
        std::string text = want_text(n, eval_value(*n.children[0], frame));
        return {Outcome::Val, Value(ReasoningTrace::parse(text, problem_.id)), {}};
      }
      case NodeKind::AppendStep: {
        ReasoningTrace t = want_trace(n, eval_value(*n.children[0], frame));
        std::string content = trim(want_text(n, eval_value(*n.children[1], frame)));
        if (content.empty()) fail(n, "append_step with empty step content");
        try {
          return {Outcome::Val, Value(t.append(Step{std::move(content)})), {}};
        } catch (const AppendAfterCompletion& e) {
          fail(n, e.what());
        }
      }
      case NodeKind::Vote: return {Outcome::Val, eval_vote(n, frame), {}};
      case NodeKind::LlmGenerateStep: {
        std::string problem = want_text(n, eval_value(*n.children[0], frame));
        std::string progress = want_text(n, eval_value(*n.children[1], frame));
        std::string step =
            client_.generate_step(problem, progress, sample_index(n, frame), sink(frame));
        return {Outcome::Val, Value(std::move(step)), {}};
      }
      case NodeKind::LlmCompleteSolution: {
        std::string problem = want_text(n, eval_value(*n.children[0], frame));
        std::string partial = want_text(n, eval_value(*n.children[1], frame));
        std::string full =
            client_.complete_solution(problem, partial, sample_index(n, frame), sink(frame));
        return {Outcome::Val, Value(std::move(full)), {}};
      }
      case NodeKind::LlmChat: return {Outcome::Val, eval_chat(n, frame), {}};
      case NodeKind::CallStepGenerator: {
        ReasoningTrace history = want_trace(n, eval_value(*n.children[0], frame));
        return {Outcome::Val, Value(nested_step(n, frame, history)), {}};
      }
      case NodeKind::Rollout: return {Outcome::Val, eval_rollout(n, frame), {}};
      case NodeKind::Let:
        fail(n, "let outside a block");
      default:
        fail(n, std::string("unhandled node ") + node_kind_name(n.kind));
    }
  }

  Outcome eval_sequence(const AstNode& seq, Frame& frame) {
    std::shared_ptr<Scope> saved = frame.scope;
    auto local = std::make_shared<Scope>();
    local->parent = saved;
    frame.scope = local;

    Outcome out;
    for (const AstPtr& child : seq.children) {
      if (child->kind == NodeKind::Let) {
        bind_let(*child, frame);
        continue;
      }
      out = eval(*child, frame);
      break;
    }
    frame.scope = saved;
    return out;
  }

  void bind_let(const AstNode& let, Frame& frame) {
    Value v = eval_value(*let.children[0], frame);
    if (let.names.size() == 1) {
      frame.scope->vars[let.names[0]] = std::move(v);
      return;
    }
    const ValueList& items = want_list(let, v);
    if (items.size() != let.names.size()) {
      fail(let, "destructuring arity " + std::to_string(let.names.size()) +
                    " does not match list of " + std::to_string(items.size()));
    }
    for (size_t i = 0; i < let.names.size(); ++i) frame.scope->vars[let.names[i]] = items[i];
  }

  Value eval_field_ref(const AstNode& n, Frame& frame) {
    const Value* head = frame.scope->lookup(n.names[0]);
    if (!head) fail(n, "unbound name '" + n.names[0] + "'");
    Value current = *head;
    for (size_t i = 1; i < n.names.size(); ++i) {
      const std::string& field = n.names[i];
      if (current.is_field_map()) {
        const std::string* v = current.field_map().find(field);
        if (!v) fail(n, "response has no field '" + field + "'");
        current = Value(*v);
      } else if (current.is_trace()) {
        const ReasoningTrace& t = current.trace();
        if (field == "text") current = Value(t.serialize());
        else if (field == "completed") current = Value(t.completed());
        else if (field == "num_steps") current = Value(static_cast<long long>(t.size()));
        else if (field == "answer") {
          try {
            current = Value(t.answer());
          } catch (const NotCompleted& e) {
            fail(n, e.what());
          }
        } else fail(n, "trace has no field '" + field + "' (text, completed, answer, num_steps)");
      } else if (current.is_report()) {
        const VoteReport& r = current.report();
        if (field == "answer") current = Value(r.answer);
        else if (field == "best_weight") current = Value(r.best_weight);
        else if (field == "total_weight") current = Value(r.total_weight);
        else if (field == "best_index") current = Value(r.best_index);
        else fail(n, "vote report has no field '" + field + "'");
      } else {
        fail(n, std::string("cannot access field '") + field + "' on " + current.type_name());
      }
    }
    return current;
  }

  Outcome eval_loop(const AstNode& n, Frame& frame) {
    size_t arity = n.names.size();
    std::vector<Value> acc;
    for (size_t i = 0; i < arity; ++i) acc.push_back(eval_value(*n.children[i], frame));

    const AstNode& body = *n.children.back();
    for (int iter = 0; iter < n.loop_max; ++iter) {
      std::shared_ptr<Scope> saved = frame.scope;
      auto local = std::make_shared<Scope>();
      local->parent = saved;
      for (size_t i = 0; i < arity; ++i) local->vars[n.names[i]] = acc[i];
      frame.scope = local;
      frame.path.push_back(static_cast<uint32_t>(iter));
      Outcome out = eval(body, frame);
      frame.path.pop_back();
      frame.scope = saved;
      if (out.kind == Outcome::Brk) {
        acc = std::move(out.tuple);
        break;
      }
      if (out.kind == Outcome::Cont) {
        if (out.tuple.size() != arity) fail(n, "continue arity mismatch");
        acc = std::move(out.tuple);
        continue;
      }
      fail(body, "loop body must end in break or continue");
    }
    if (arity == 1) return {Outcome::Val, std::move(acc[0]), {}};
    return {Outcome::Val, Value(ValueList(acc.begin(), acc.end())), {}};
  }

  Value eval_parallel(const AstNode& n, Frame& frame) {
    size_t k = n.children.size();
    std::vector<Value> results(k);
    std::vector<std::vector<llm::CallRecord>> logs(k);

    auto run_child = [&](size_t i) {
      Frame child;
      child.scope = std::make_shared<Scope>();
      child.scope->parent = frame.scope;
      child.path = frame.path;
      child.path.push_back(static_cast<uint32_t>(i));
      results[i] = eval_value(*n.children[i], child);
      logs[i] = std::move(child.log);
    };

    if (opts_.parallel_workers > 1) {
      std::vector<std::future<void>> futures;
      futures.reserve(k);
      for (size_t i = 0; i < k; ++i) {
        futures.push_back(std::async(std::launch::async, run_child, i));
      }
      for (auto& f : futures) f.get();
    } else {
      for (size_t i = 0; i < k; ++i) run_child(i);
    }

    // Canonical log order: by child index, not by completion time.
    for (size_t i = 0; i < k; ++i) {
      for (auto& rec : logs[i]) frame.log.push_back(std::move(rec));
    }
    return Value(ValueList(std::make_move_iterator(results.begin()),
                           std::make_move_iterator(results.end())));
  }

  Value eval_binop(const AstNode& n, Frame& frame) {
    if (n.op == BinOpKind::Not) {
      return Value(!want_bool(n, eval_value(*n.children[0], frame)));
    }
    Value a = eval_value(*n.children[0], frame);
    Value b = eval_value(*n.children[1], frame);
    switch (n.op) {
      case BinOpKind::Add: return Value(want_int(n, a) + want_int(n, b));
      case BinOpKind::Sub: return Value(want_int(n, a) - want_int(n, b));
      case BinOpKind::Mul: return Value(want_int(n, a) * want_int(n, b));
      case BinOpKind::Lt: return Value(want_int(n, a) < want_int(n, b));
      case BinOpKind::Le: return Value(want_int(n, a) <= want_int(n, b));
      case BinOpKind::Gt: return Value(want_int(n, a) > want_int(n, b));
      case BinOpKind::Ge: return Value(want_int(n, a) >= want_int(n, b));
      case BinOpKind::And: return Value(want_bool(n, a) && want_bool(n, b));
      case BinOpKind::Or: return Value(want_bool(n, a) || want_bool(n, b));
      case BinOpKind::Eq:
      case BinOpKind::Ne: {
        bool eq;
        if (a.is_int() && b.is_int()) eq = a.int_value() == b.int_value();
        else if (a.is_bool() && b.is_bool()) eq = a.bool_value() == b.bool_value();
        else if (a.is_text() && b.is_text()) eq = trim(a.text()) == trim(b.text());
        else fail(n, std::string("eq between ") + a.type_name() + " and " + b.type_name());
        return Value(n.op == BinOpKind::Eq ? eq : !eq);
      }
      default: fail(n, "unhandled operator");
    }
  }

  Value eval_format(const AstNode& n, Frame& frame) {
    std::string out;
    out.reserve(n.text.size());
    size_t slot = 0;
    for (size_t i = 0; i < n.text.size(); ++i) {
      char c = n.text[i];
      if (c == '{') {
        if (i + 1 < n.text.size() && n.text[i + 1] == '{') {
          out.push_back('{');
          ++i;
          continue;
        }
        size_t close = n.text.find('}', i);
        const std::string& name = n.names[slot++];
        const Value* v = frame.scope->lookup(name);
        if (!v) fail(n, "unbound name '" + name + "'");
        out += want_text(n, *v);
        i = close;
      } else if (c == '}') {
        out.push_back('}');
        if (i + 1 < n.text.size() && n.text[i + 1] == '}') ++i;
      } else {
        out.push_back(c);
      }
    }
    return Value(std::move(out));
  }

  std::string vote_answer_of(const AstNode& n, const Value& v) {
    if (v.is_text()) return v.text();
    if (v.is_trace()) {
      try {
        return v.trace().answer();
      } catch (const NotCompleted& e) {
        fail(n, std::string("vote over incomplete trace: ") + e.what());
      }
    }
    fail(n, std::string("vote items must be text or traces, got ") + v.type_name());
  }

  Value eval_vote(const AstNode& n, Frame& frame) {
    const Value items_v = eval_value(*n.children[0], frame);
    const ValueList& items = want_list(n, items_v);
    if (items.empty()) fail(n, "vote over empty list");

    std::vector<long long> weights(items.size(), 1);
    if (n.children.size() >= 2) {
      const Value w_v = eval_value(*n.children[1], frame);
      const ValueList& ws = want_list(n, w_v);
      if (ws.size() != items.size()) fail(n, "vote weights length mismatch");
      for (size_t i = 0; i < ws.size(); ++i) weights[i] = want_int(n, ws[i]);
    }

    // Gating (Appendix-D semantics): when validity flags are supplied and at
    // least one is true, only flagged entries take part; otherwise all do.
    std::vector<size_t> considered;
    if (n.children.size() == 3) {
      const Value f_v = eval_value(*n.children[2], frame);
      const ValueList& fs = want_list(n, f_v);
      if (fs.size() != items.size()) fail(n, "vote flags length mismatch");
      for (size_t i = 0; i < fs.size(); ++i) {
        if (want_bool(n, fs[i])) considered.push_back(i);
      }
      if (considered.empty()) {
        for (size_t i = 0; i < items.size(); ++i) considered.push_back(i);
      }
    } else {
      for (size_t i = 0; i < items.size(); ++i) considered.push_back(i);
    }

    struct Group {
      std::string rep;
      long long weight = 0;
      long long best_member_weight = 0;
      size_t best_member = 0;
    };
    std::vector<Group> groups;
    long long total = 0;
    for (size_t idx : considered) {
      std::string ans = vote_answer_of(n, items[idx]);
      long long w = weights[idx];
      total += w;
      Group* g = nullptr;
      for (Group& cand : groups) {
        if (judge_equality(ans, cand.rep)) {
          g = &cand;
          break;
        }
      }
      if (!g) {
        groups.push_back(Group{ans, 0, std::numeric_limits<long long>::min(), idx});
        g = &groups.back();
      }
      g->weight += w;
      if (w > g->best_member_weight) {
        g->best_member_weight = w;
        g->best_member = idx;
      }
    }

    // Strict comparison: exact ties go to the earliest-created group.
    size_t win = 0;
    for (size_t i = 1; i < groups.size(); ++i) {
      if (groups[i].weight > groups[win].weight) win = i;
    }

    if (!n.report) return Value(groups[win].rep);
    VoteReport r;
    r.answer = groups[win].rep;
    r.best_weight = groups[win].weight;
    r.total_weight = total;
    r.best_index = static_cast<long long>(groups[win].best_member);
    return Value(std::move(r));
  }

  Value eval_chat(const AstNode& n, Frame& frame) {
    llm::StructuredRequest req;
    for (size_t i = 0; i < n.chat_context.size(); ++i) {
      llm::ContextItem item;
      item.name = n.chat_context[i].name;
      item.description = n.chat_context[i].description;
      item.data = want_text(n, eval_value(*n.children[i], frame));
      req.context.push_back(std::move(item));
    }
    req.instructions = want_text(n, eval_value(*n.children[n.chat_context.size()], frame));
    for (const auto& [name, desc] : n.chat_fields) {
      req.response_format.push_back(llm::ResponseField{name, desc});
    }
    return Value(client_.chat_completion(req, sample_index(n, frame), sink(frame)));
  }

  std::string nested_step(const AstNode& n, Frame& frame, const ReasoningTrace& history) {
    if (!step_gen_) fail(n, "no step generator bound");
    Engine nested(*step_gen_, problem_, client_, nullptr, opts_, sample_index(n, frame));
    Value v = nested.run(&history);
    for (auto& rec : nested.log) frame.log.push_back(std::move(rec));
    if (!v.is_text()) fail(n, std::string("step generator returned ") + v.type_name());
    std::string content = trim(v.text());
    if (content.empty()) fail(n, "step generator returned an empty step");
    return content;
  }

  Value eval_rollout(const AstNode& n, Frame& frame) {
    ReasoningTrace trace(problem_.id);
    if (!n.children.empty()) trace = want_trace(n, eval_value(*n.children[0], frame));

    for (int k = 0; k < n.rollout_max && !trace.completed(); ++k) {
      frame.path.push_back(static_cast<uint32_t>(k));
      std::string content = nested_step(n, frame, trace);
      frame.path.pop_back();
      trace = trace.append(Step{std::move(content)});
    }
    if (!trace.completed()) {
      // Forced completion appended as one final step.
      frame.path.push_back(static_cast<uint32_t>(n.rollout_max));
      std::string completion = client_.complete_solution(
          problem_.statement, trace.serialize(), sample_index(n, frame), sink(frame));
      frame.path.pop_back();
      trace = trace.append(Step{trim(completion)});
    }
    return Value(std::move(trace));
  }

  const WorkflowProgram& program_;
  const Problem& problem_;
  llm::LlmClient& client_;
  const WorkflowProgram* step_gen_;
  InterpreterOptions opts_;
  uint64_t path_seed_;
};

}  // namespace

Step run_step_generator(const WorkflowProgram& program, const Problem& problem,
                        const ReasoningTrace& history, llm::LlmClient& client,
                        ExecutionTrace* execution, const InterpreterOptions& opts,
                        uint64_t path_seed) {
  if (program.kind != ProgramKind::StepGenerator) {
    throw InterpreterError("program '" + program.name + "' is not a step generator", 0, 0);
  }
  Engine engine(program, problem, client, nullptr, opts, path_seed);
  Value v = engine.run(&history);
  if (execution) execution->calls = std::move(engine.log);
  if (!v.is_text()) {
    throw InterpreterError(std::string("step generator returned ") + v.type_name() +
                               ", expected text",
                           0, 0);
  }
  std::string content = trim(v.text());
  if (content.empty()) throw InterpreterError("step generator returned an empty step", 0, 0);
  return Step{content};
}

ReasoningTrace run_meta_policy(const WorkflowProgram& program, const Problem& problem,
                               const WorkflowProgram& step_generator, llm::LlmClient& client,
                               ExecutionTrace* execution, const InterpreterOptions& opts,
                               uint64_t path_seed) {
  if (program.kind != ProgramKind::MetaPolicy) {
    throw InterpreterError("program '" + program.name + "' is not a meta policy", 0, 0);
  }
  if (step_generator.kind != ProgramKind::StepGenerator) {
    throw InterpreterError("program '" + step_generator.name + "' is not a step generator", 0, 0);
  }
  Engine engine(program, problem, client, &step_generator, opts, path_seed);
  Value v = engine.run(nullptr);
  if (execution) execution->calls = std::move(engine.log);
  if (!v.is_trace()) {
    throw InterpreterError(std::string("meta policy returned ") + v.type_name() +
                               ", expected a trace",
                           0, 0);
  }
  return v.trace();
}

}  // namespace arm::dsl
