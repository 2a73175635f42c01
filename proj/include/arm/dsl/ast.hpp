#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace arm::dsl {

// Core node inventory plus the small expression plumbing (arithmetic,
// comparisons, string formatting, lists, loop control) the appendix programs
// need to be expressible.
enum class NodeKind {
  Sequence,
  Parallel,
  LlmGenerateStep,
  LlmChat,
  LlmCompleteSolution,
  CallStepGenerator,
  Loop,
  If,
  Vote,
  Let,
  FieldRef,
  Literal,
  JudgeEqual,
  ParseInt,
  Return,
  // expression plumbing
  BinOp,
  Format,
  ListOf,
  Append,
  Index,
  Len,
  Break,
  Continue,
  Rollout,
  AppendStep,
  EmptyTrace,
  ParseTrace,
  ParseYesNo,
};

const char* node_kind_name(NodeKind kind);

enum class BinOpKind { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not };

const char* binop_name(BinOpKind op);

enum class LiteralType { Text, Int, Bool };

struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

struct ChatContextItem {
  std::string name;
  std::string description;  // data expression lives in children
};

struct AstNode {
  NodeKind kind;
  int id = 0;  // stable preorder id; feeds deterministic sample indices
  int line = 0;
  int col = 0;
  std::vector<AstPtr> children;

  // attributes (meaning depends on kind)
  std::string text;                // Literal text / Format template
  long long int_value = 0;         // Literal int
  bool bool_value = false;         // Literal bool
  LiteralType literal_type = LiteralType::Text;
  std::vector<std::string> names;  // Let binders / Loop binders / FieldRef path / Format slots
  BinOpKind op = BinOpKind::Add;
  int loop_max = 0;                // Loop: 0 means the bound was omitted (rejected on validate)
  int rollout_max = 0;
  long long clamp_lo = 0;          // ParseInt
  long long clamp_hi = 0;
  bool weighted = false;  // Vote
  bool report = false;    // Vote

  std::vector<ChatContextItem> chat_context;  // LlmChat; data exprs are children[0..n)
  std::vector<std::pair<std::string, std::string>> chat_fields;  // (name, description)
};

enum class ProgramKind { StepGenerator, MetaPolicy };

const char* program_kind_name(ProgramKind kind);

struct WorkflowProgram {
  std::string name;
  ProgramKind kind = ProgramKind::StepGenerator;
  std::string source;     // as given
  std::string canonical;  // pretty-printed normal form
  std::string hash;       // fnv-1a of the canonical form
  AstPtr root;            // Sequence
};

// AST inspection helpers, mostly for tests and conformance checks.
int count_nodes(const AstPtr& root, NodeKind kind);
const AstNode* find_first(const AstPtr& root, NodeKind kind);

}  // namespace arm::dsl
