#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace arm {

// Base for every error the engine raises deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- trace-core ---

class AppendAfterCompletion : public Error {
 public:
  AppendAfterCompletion() : Error("append_step: trace already completed") {}
};

class NotCompleted : public Error {
 public:
  NotCompleted() : Error("extract_answer: trace has no boxed answer") {}
};

// --- dsl ---

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, int line, int column)
      : Error("validation error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

class UnknownBuiltin : public Error {
 public:
  explicit UnknownBuiltin(const std::string& name) : Error("unknown builtin program: " + name) {}
};

class InterpreterError : public Error {
 public:
  InterpreterError(const std::string& msg, int line, int column)
      : Error("interpreter error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// --- llm-client ---

class ClientError : public Error {
 public:
  explicit ClientError(const std::string& msg) : Error("client error: " + msg) {}
};

class MalformedResponse : public Error {
 public:
  explicit MalformedResponse(const std::string& msg) : Error("malformed response: " + msg) {}
};

class NoAnswerProduced : public Error {
 public:
  NoAnswerProduced() : Error("complete_solution produced no boxed answer after retry") {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(uint64_t budget)
      : Error("global call budget of " + std::to_string(budget) + " calls exhausted") {}
};

class ReplayMiss : public Error {
 public:
  explicit ReplayMiss(const std::string& hash)
      : Error("replay cache has no record for request " + hash) {}
};

// --- scaffold-eval ---

class DatasetEmpty : public Error {
 public:
  DatasetEmpty() : Error("evaluation dataset is empty") {}
};

// --- search / reviewer ---

class ReviewerFailure : public Error {
 public:
  ReviewerFailure(const std::string& msg, std::vector<std::string> rejected)
      : Error("reviewer failure: " + msg), rejected_sources(std::move(rejected)) {}
  std::vector<std::string> rejected_sources;
};

class CorruptState : public Error {
 public:
  CorruptState(const std::string& path, const std::string& msg)
      : Error("corrupt state in " + path + ": " + msg), path(path) {}
  std::string path;
};

// --- mdp-lab ---

class SingularSystem : public Error {
 public:
  explicit SingularSystem(const std::string& msg) : Error("singular system: " + msg) {}
};

class DegenerateDistribution : public Error {
 public:
  explicit DegenerateDistribution(const std::string& msg)
      : Error("degenerate distribution: " + msg) {}
};

// --- harness ---

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

}  // namespace arm
