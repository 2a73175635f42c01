#include "arm/dsl/ast.hpp"

namespace arm::dsl {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Sequence: return "Sequence";
    case NodeKind::Parallel: return "Parallel";
    case NodeKind::LlmGenerateStep: return "LlmGenerateStep";
    case NodeKind::LlmChat: return "LlmChat";
    case NodeKind::LlmCompleteSolution: return "LlmCompleteSolution";
    case NodeKind::CallStepGenerator: return "CallStepGenerator";
    case NodeKind::Loop: return "Loop";
    case NodeKind::If: return "If";
    case NodeKind::Vote: return "Vote";
    case NodeKind::Let: return "Let";
    case NodeKind::FieldRef: return "FieldRef";
    case NodeKind::Literal: return "Literal";
    case NodeKind::JudgeEqual: return "JudgeEqual";
    case NodeKind::ParseInt: return "ParseInt";
    case NodeKind::Return: return "Return";
    case NodeKind::BinOp: return "BinOp";
    case NodeKind::Format: return "Format";
    case NodeKind::ListOf: return "ListOf";
    case NodeKind::Append: return "Append";
    case NodeKind::Index: return "Index";
    case NodeKind::Len: return "Len";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
    case NodeKind::Rollout: return "Rollout";
    case NodeKind::AppendStep: return "AppendStep";
    case NodeKind::EmptyTrace: return "EmptyTrace";
    case NodeKind::ParseTrace: return "ParseTrace";
    case NodeKind::ParseYesNo: return "ParseYesNo";
  }
  return "?";
}

const char* binop_name(BinOpKind op) {
  switch (op) {
    case BinOpKind::Add: return "add";
    case BinOpKind::Sub: return "sub";
    case BinOpKind::Mul: return "mul";
    case BinOpKind::Eq: return "eq";
    case BinOpKind::Ne: return "ne";
    case BinOpKind::Lt: return "lt";
    case BinOpKind::Le: return "le";
    case BinOpKind::Gt: return "gt";
    case BinOpKind::Ge: return "ge";
    case BinOpKind::And: return "and";
    case BinOpKind::Or: return "or";
    case BinOpKind::Not: return "not";
  }
  return "?";
}

const char* program_kind_name(ProgramKind kind) {
  return kind == ProgramKind::StepGenerator ? "step_generator" : "meta_policy";
}

int count_nodes(const AstPtr& root, NodeKind kind) {
  if (!root) return 0;
  int n = root->kind == kind ? 1 : 0;
  for (const AstPtr& c : root->children) n += count_nodes(c, kind);
  return n;
}

const AstNode* find_first(const AstPtr& root, NodeKind kind) {
  if (!root) return nullptr;
  if (root->kind == kind) return root.get();
  for (const AstPtr& c : root->children) {
    if (const AstNode* hit = find_first(c, kind)) return hit;
  }
  return nullptr;
}

}  // namespace arm::dsl
