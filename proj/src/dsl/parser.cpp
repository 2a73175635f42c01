#include "arm/dsl/parser.hpp"

#include <cctype>
#include <memory>
#include <sstream>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::dsl {

void validate_program(const WorkflowProgram& program);  // validate.cpp

namespace {

// --- lexer ---

struct Token {
  enum Type { Ident, Int, Str, Punct, End };
  Type type = End;
  std::string text;
  long long int_value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t = next_token();
      bool end = t.type == Token::End;
      out.push_back(std::move(t));
      if (end) break;
    }
    return out;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.type = Token::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text.push_back(src_[pos_]);
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      t.type = Token::Int;
      if (c == '-') {
        t.text.push_back(c);
        advance();
      }
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        t.text.push_back(src_[pos_]);
        advance();
      }
      t.int_value = std::stoll(t.text);
      return t;
    }
    if (c == '"') {
      t.type = Token::Str;
      advance();
      while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.col);
        char d = src_[pos_];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          if (pos_ >= src_.size()) throw ParseError("unterminated escape", line_, col_);
          char e = src_[pos_];
          switch (e) {
            case 'n': t.text.push_back('\n'); break;
            case 't': t.text.push_back('\t'); break;
            case 'r': t.text.push_back('\r'); break;
            case '"': t.text.push_back('"'); break;
            case '\\': t.text.push_back('\\'); break;
            default:
              throw ParseError(std::string("unknown escape \\") + e, line_, col_);
          }
          advance();
          continue;
        }
        t.text.push_back(d);
        advance();
      }
      return t;
    }
    if (std::string("{}(),:=.").find(c) != std::string::npos) {
      t.type = Token::Punct;
      t.text.push_back(c);
      advance();
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// --- parser ---

using MutableNode = std::shared_ptr<AstNode>;

class Parser {
 public:
  explicit Parser(const std::string& source) : source_(source), tokens_(Lexer(source).run()) {}

  WorkflowProgram parse() {
    WorkflowProgram p;
    p.source = source_;
    expect_ident("program");
    p.name = expect_type(Token::Ident, "program name").text;
    expect_punct(":");
    std::string kind = expect_type(Token::Ident, "program kind").text;
    if (kind == "step_generator") p.kind = ProgramKind::StepGenerator;
    else if (kind == "meta_policy") p.kind = ProgramKind::MetaPolicy;
    else throw ParseError("program kind must be step_generator or meta_policy", prev().line, prev().col);
    p.root = parse_stmts(/*closing_brace=*/false);
    if (!at_end()) throw ParseError("trailing input after program body", peek().line, peek().col);
    return p;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& prev() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
  bool at_end() const { return peek().type == Token::End; }

  const Token& take() {
    const Token& t = peek();
    if (t.type != Token::End) ++pos_;
    return t;
  }

  bool peek_ident(const std::string& word, size_t ahead = 0) const {
    return peek(ahead).type == Token::Ident && peek(ahead).text == word;
  }
  bool peek_punct(const std::string& p, size_t ahead = 0) const {
    return peek(ahead).type == Token::Punct && peek(ahead).text == p;
  }

  const Token& expect_type(Token::Type type, const std::string& what) {
    if (peek().type != type) {
      throw ParseError("expected " + what, peek().line, peek().col);
    }
    return take();
  }
  void expect_ident(const std::string& word) {
    if (!peek_ident(word)) throw ParseError("expected '" + word + "'", peek().line, peek().col);
    take();
  }
  void expect_punct(const std::string& p) {
    if (!peek_punct(p)) throw ParseError("expected '" + p + "'", peek().line, peek().col);
    take();
  }

  MutableNode node(NodeKind kind, const Token& at) {
    auto n = std::make_shared<AstNode>();
    n->kind = kind;
    n->id = next_id_++;
    n->line = at.line;
    n->col = at.col;
    return n;
  }

  // A sequence of statements: `let` bindings followed by one tail statement.
  AstPtr parse_stmts(bool closing_brace) {
    MutableNode seq = node(NodeKind::Sequence, peek());
    while (true) {
      if (closing_brace && peek_punct("}")) break;
      if (!closing_brace && at_end()) break;
      seq->children.push_back(parse_stmt());
    }
    return seq;
  }

  AstPtr parse_stmt() {
    if (peek_ident("let")) return parse_let();
    if (peek_ident("return")) {
      MutableNode n = node(NodeKind::Return, take());
      n->children.push_back(parse_expr());
      return n;
    }
    if (peek_ident("break") || peek_ident("continue")) {
      bool is_break = peek().text == "break";
      MutableNode n = node(is_break ? NodeKind::Break : NodeKind::Continue, take());
      n->children = parse_value_tuple();
      return n;
    }
    return parse_expr();
  }

  AstPtr parse_let() {
    MutableNode n = node(NodeKind::Let, take());  // 'let'
    n->names = parse_binder();
    expect_punct("=");
    n->children.push_back(parse_expr());
    return n;
  }

  std::vector<std::string> parse_binder() {
    std::vector<std::string> names;
    if (peek_punct("(")) {
      take();
      while (true) {
        names.push_back(expect_type(Token::Ident, "binder name").text);
        if (peek_punct(",")) {
          take();
          continue;
        }
        break;
      }
      expect_punct(")");
    } else {
      names.push_back(expect_type(Token::Ident, "binder name").text);
    }
    return names;
  }

  // `break v` / `break (a, b, c)`
  std::vector<AstPtr> parse_value_tuple() {
    std::vector<AstPtr> out;
    if (peek_punct("(")) {
      take();
      while (true) {
        out.push_back(parse_expr());
        if (peek_punct(",")) {
          take();
          continue;
        }
        break;
      }
      expect_punct(")");
    } else {
      out.push_back(parse_expr());
    }
    return out;
  }

  AstPtr parse_expr() {
    const Token& t = peek();
    if (t.type == Token::Str) {
      MutableNode n = node(NodeKind::Literal, take());
      n->literal_type = LiteralType::Text;
      n->text = prev().text;
      return n;
    }
    if (t.type == Token::Int) {
      MutableNode n = node(NodeKind::Literal, take());
      n->literal_type = LiteralType::Int;
      n->int_value = prev().int_value;
      return n;
    }
    if (t.type == Token::Punct && t.text == "{") return parse_block_expr();
    if (t.type != Token::Ident) {
      throw ParseError("expected expression", t.line, t.col);
    }
    if (t.text == "true" || t.text == "false") {
      MutableNode n = node(NodeKind::Literal, take());
      n->literal_type = LiteralType::Bool;
      n->bool_value = prev().text == "true";
      return n;
    }
    if (t.text == "if") return parse_if();
    if (t.text == "loop") return parse_loop();
    if (t.text == "parallel") return parse_parallel();
    if (t.text == "chat") return parse_chat();
    if (peek_punct("(", 1)) return parse_call();
    return parse_field_ref();
  }

  AstPtr parse_block_expr() {
    expect_punct("{");
    AstPtr body = parse_stmts(true);
    expect_punct("}");
    return body;
  }

  AstPtr parse_if() {
    MutableNode n = node(NodeKind::If, take());  // 'if'
    n->children.push_back(parse_expr());
    n->children.push_back(parse_block_expr());
    expect_ident("else");
    n->children.push_back(parse_block_expr());
    return n;
  }

  AstPtr parse_loop() {
    MutableNode n = node(NodeKind::Loop, take());  // 'loop'
    n->names = parse_binder();
    expect_punct("=");
    std::vector<AstPtr> inits = parse_value_tuple();
    if (peek_ident("max")) {
      take();
      const Token& m = expect_type(Token::Int, "loop bound");
      n->loop_max = static_cast<int>(m.int_value);
    }
    n->children = std::move(inits);
    n->children.push_back(parse_block_expr());
    return n;
  }

  AstPtr parse_parallel() {
    MutableNode n = node(NodeKind::Parallel, take());  // 'parallel'
    expect_punct("{");
    while (!peek_punct("}")) {
      if (at_end()) throw ParseError("unterminated parallel block", n->line, n->col);
      n->children.push_back(parse_expr());
    }
    take();  // '}'
    if (n->children.empty()) {
      throw ParseError("parallel block needs at least one child", n->line, n->col);
    }
    return n;
  }

  AstPtr parse_chat() {
    MutableNode n = node(NodeKind::LlmChat, take());  // 'chat'
    expect_punct("{");
    expect_ident("context");
    expect_punct("{");
    while (peek_ident("item")) {
      take();
      ChatContextItem item;
      item.name = expect_type(Token::Str, "context item name string").text;
      expect_punct(":");
      n->children.push_back(parse_expr());
      if (peek_ident("desc")) {
        take();
        item.description = expect_type(Token::Str, "context item description string").text;
      }
      n->chat_context.push_back(std::move(item));
    }
    expect_punct("}");
    expect_ident("instructions");
    n->children.push_back(parse_expr());
    expect_ident("fields");
    expect_punct("{");
    while (peek_ident("field")) {
      take();
      std::string name = expect_type(Token::Ident, "field name").text;
      expect_punct(":");
      std::string desc = expect_type(Token::Str, "field description string").text;
      n->chat_fields.emplace_back(std::move(name), std::move(desc));
    }
    expect_punct("}");
    expect_punct("}");
    if (n->chat_fields.empty()) {
      throw ParseError("chat needs at least one response field", n->line, n->col);
    }
    return n;
  }

  std::vector<AstPtr> parse_call_args() {
    std::vector<AstPtr> args;
    expect_punct("(");
    if (!peek_punct(")")) {
      while (true) {
        args.push_back(parse_expr());
        if (peek_punct(",")) {
          take();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    return args;
  }

  AstPtr synth_field_ref(const Token& at, std::initializer_list<std::string> path) {
    MutableNode n = node(NodeKind::FieldRef, at);
    n->names.assign(path);
    return n;
  }

  AstPtr synth_text(const Token& at, const std::string& text) {
    MutableNode n = node(NodeKind::Literal, at);
    n->literal_type = LiteralType::Text;
    n->text = text;
    return n;
  }

  [[noreturn]] void arity_error(const std::string& name, const Token& at) {
    throw ParseError("wrong number of arguments for " + name, at.line, at.col);
  }

  long long literal_int_arg(const AstPtr& arg, const std::string& name, const Token& at) {
    if (arg->kind != NodeKind::Literal || arg->literal_type != LiteralType::Int) {
      throw ParseError(name + " expects an integer literal here", at.line, at.col);
    }
    return arg->int_value;
  }

  AstPtr parse_call() {
    const Token& name_tok = take();
    const std::string& name = name_tok.text;
    std::vector<AstPtr> args = parse_call_args();
    auto want = [&](size_t lo, size_t hi) {
      if (args.size() < lo || args.size() > hi) arity_error(name, name_tok);
    };

    static const std::vector<std::pair<std::string, BinOpKind>> binops = {
        {"add", BinOpKind::Add}, {"sub", BinOpKind::Sub}, {"mul", BinOpKind::Mul},
        {"eq", BinOpKind::Eq},   {"ne", BinOpKind::Ne},   {"lt", BinOpKind::Lt},
        {"le", BinOpKind::Le},   {"gt", BinOpKind::Gt},   {"ge", BinOpKind::Ge},
        {"and", BinOpKind::And}, {"or", BinOpKind::Or},   {"not", BinOpKind::Not}};
    for (const auto& [op_name, op] : binops) {
      if (name != op_name) continue;
      want(op == BinOpKind::Not ? 1 : 2, op == BinOpKind::Not ? 1 : 2);
      MutableNode n = node(NodeKind::BinOp, name_tok);
      n->op = op;
      n->children = std::move(args);
      return n;
    }

    if (name == "generate_step") {
      if (args.size() != 0 && args.size() != 2) arity_error(name, name_tok);
      MutableNode n = node(NodeKind::LlmGenerateStep, name_tok);
      if (args.empty()) {
        n->children.push_back(synth_field_ref(name_tok, {"problem"}));
        n->children.push_back(synth_field_ref(name_tok, {"partial_progress"}));
      } else {
        n->children = std::move(args);
      }
      return n;
    }
    if (name == "complete_solution") {
      want(0, 2);
      MutableNode n = node(NodeKind::LlmCompleteSolution, name_tok);
      if (args.size() == 2) {
        n->children = std::move(args);
      } else {
        n->children.push_back(synth_field_ref(name_tok, {"problem"}));
        n->children.push_back(args.empty() ? synth_text(name_tok, "") : std::move(args[0]));
      }
      return n;
    }
    if (name == "call_step_generator") {
      want(1, 1);
      MutableNode n = node(NodeKind::CallStepGenerator, name_tok);
      n->children = std::move(args);
      return n;
    }
    if (name == "rollout") {
      want(1, 2);
      MutableNode n = node(NodeKind::Rollout, name_tok);
      n->rollout_max = static_cast<int>(literal_int_arg(args[0], name, name_tok));
      if (args.size() == 2) n->children.push_back(std::move(args[1]));
      return n;
    }
    if (name == "parse_int") {
      want(3, 3);
      MutableNode n = node(NodeKind::ParseInt, name_tok);
      n->clamp_lo = literal_int_arg(args[1], name, name_tok);
      n->clamp_hi = literal_int_arg(args[2], name, name_tok);
      n->children.push_back(std::move(args[0]));
      return n;
    }
    if (name == "vote" || name == "vote_report") {
      want(1, 3);
      MutableNode n = node(NodeKind::Vote, name_tok);
      n->weighted = args.size() >= 2;
      n->report = name == "vote_report";
      n->children = std::move(args);
      return n;
    }
    if (name == "format") {
      want(1, 1);
      if (args[0]->kind != NodeKind::Literal || args[0]->literal_type != LiteralType::Text) {
        throw ParseError("format expects a string literal template", name_tok.line, name_tok.col);
      }
      MutableNode n = node(NodeKind::Format, name_tok);
      n->text = args[0]->text;
      n->names = extract_placeholders(n->text, name_tok);
      return n;
    }

    struct Simple {
      const char* name;
      NodeKind kind;
      size_t lo, hi;
    };
    static const Simple simple[] = {
        {"judge_equal", NodeKind::JudgeEqual, 2, 2}, {"parse_yes_no", NodeKind::ParseYesNo, 1, 1},
        {"parse_trace", NodeKind::ParseTrace, 1, 1}, {"append_step", NodeKind::AppendStep, 2, 2},
        {"empty_trace", NodeKind::EmptyTrace, 0, 0}, {"list_of", NodeKind::ListOf, 0, SIZE_MAX},
        {"append", NodeKind::Append, 2, 2},          {"index", NodeKind::Index, 2, 2},
        {"len", NodeKind::Len, 1, 1}};
    for (const Simple& s : simple) {
      if (name != s.name) continue;
      want(s.lo, s.hi);
      MutableNode n = node(s.kind, name_tok);
      n->children = std::move(args);
      return n;
    }

    throw ParseError("unknown operation '" + name + "'", name_tok.line, name_tok.col);
  }

  std::vector<std::string> extract_placeholders(const std::string& tmpl, const Token& at) {
    std::vector<std::string> names;
    for (size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] == '{') {
        if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
          ++i;
          continue;
        }
        size_t close = tmpl.find('}', i);
        if (close == std::string::npos) {
          throw ParseError("unterminated { placeholder in format template", at.line, at.col);
        }
        std::string name = tmpl.substr(i + 1, close - i - 1);
        if (name.empty()) throw ParseError("empty format placeholder", at.line, at.col);
        names.push_back(std::move(name));
        i = close;
      } else if (tmpl[i] == '}') {
        if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
          ++i;
          continue;
        }
        throw ParseError("unmatched } in format template", at.line, at.col);
      }
    }
    return names;
  }

  AstPtr parse_field_ref() {
    MutableNode n = node(NodeKind::FieldRef, peek());
    n->names.push_back(expect_type(Token::Ident, "name").text);
    while (peek_punct(".")) {
      take();
      n->names.push_back(expect_type(Token::Ident, "field name").text);
    }
    return n;
  }

  const std::string& source_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  int next_id_ = 1;
};

// --- canonical printer ---

class Printer {
 public:
  std::string print(const WorkflowProgram& p) {
    out_ << "program " << p.name << " : " << program_kind_name(p.kind) << "\n\n";
    print_stmts(*p.root, 0, /*braces=*/false);
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  static std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        default: out.push_back(c);
      }
    }
    out.push_back('"');
    return out;
  }

  void print_stmts(const AstNode& seq, int depth, bool braces) {
    if (braces) out_ << "{\n";
    for (const AstPtr& child : seq.children) {
      indent(depth + (braces ? 1 : 0));
      print_stmt(*child, depth + (braces ? 1 : 0));
      out_ << "\n";
    }
    if (braces) {
      indent(depth);
      out_ << "}";
    }
  }

  void print_binder(const std::vector<std::string>& names) {
    if (names.size() == 1) {
      out_ << names[0];
      return;
    }
    out_ << "(";
    for (size_t i = 0; i < names.size(); ++i) {
      if (i) out_ << ", ";
      out_ << names[i];
    }
    out_ << ")";
  }

  void print_tuple(const std::vector<AstPtr>& values, int depth) {
    if (values.size() == 1) {
      print_expr(*values[0], depth);
      return;
    }
    out_ << "(";
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ", ";
      print_expr(*values[i], depth);
    }
    out_ << ")";
  }

  void print_stmt(const AstNode& n, int depth) {
    switch (n.kind) {
      case NodeKind::Let:
        out_ << "let ";
        print_binder(n.names);
        out_ << " = ";
        print_expr(*n.children[0], depth);
        return;
      case NodeKind::Return:
        out_ << "return ";
        print_expr(*n.children[0], depth);
        return;
      case NodeKind::Break:
      case NodeKind::Continue:
        out_ << (n.kind == NodeKind::Break ? "break " : "continue ");
        print_tuple(n.children, depth);
        return;
      default:
        print_expr(n, depth);
    }
  }

  void print_call(const char* name, const AstNode& n, int depth) {
    out_ << name << "(";
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (i) out_ << ", ";
      print_expr(*n.children[i], depth);
    }
    out_ << ")";
  }

  void print_expr(const AstNode& n, int depth) {
    switch (n.kind) {
      case NodeKind::Literal:
        if (n.literal_type == LiteralType::Text) out_ << escape(n.text);
        else if (n.literal_type == LiteralType::Int) out_ << n.int_value;
        else out_ << (n.bool_value ? "true" : "false");
        return;
      case NodeKind::FieldRef:
        for (size_t i = 0; i < n.names.size(); ++i) {
          if (i) out_ << ".";
          out_ << n.names[i];
        }
        return;
      case NodeKind::Sequence:
        print_stmts(n, depth, /*braces=*/true);
        return;
      case NodeKind::If:
        out_ << "if ";
        print_expr(*n.children[0], depth);
        out_ << " ";
        print_branch(*n.children[1], depth);
        out_ << " else ";
        print_branch(*n.children[2], depth);
        return;
      case NodeKind::Loop:
        out_ << "loop ";
        print_binder(n.names);
        out_ << " = ";
        print_tuple(std::vector<AstPtr>(n.children.begin(), n.children.end() - 1), depth);
        out_ << " max " << n.loop_max << " ";
        print_branch(*n.children.back(), depth);
        return;
      case NodeKind::Parallel:
        out_ << "parallel {\n";
        for (const AstPtr& c : n.children) {
          indent(depth + 1);
          print_expr(*c, depth + 1);
          out_ << "\n";
        }
        indent(depth);
        out_ << "}";
        return;
      case NodeKind::LlmChat:
        print_chat(n, depth);
        return;
      case NodeKind::LlmGenerateStep:
        print_call("generate_step", n, depth);
        return;
      case NodeKind::LlmCompleteSolution:
        print_call("complete_solution", n, depth);
        return;
      case NodeKind::CallStepGenerator:
        print_call("call_step_generator", n, depth);
        return;
      case NodeKind::Rollout:
        out_ << "rollout(" << n.rollout_max;
        if (!n.children.empty()) {
          out_ << ", ";
          print_expr(*n.children[0], depth);
        }
        out_ << ")";
        return;
      case NodeKind::ParseInt:
        out_ << "parse_int(";
        print_expr(*n.children[0], depth);
        out_ << ", " << n.clamp_lo << ", " << n.clamp_hi << ")";
        return;
      case NodeKind::Vote:
        print_call(n.report ? "vote_report" : "vote", n, depth);
        return;
      case NodeKind::Format:
        out_ << "format(" << escape(n.text) << ")";
        return;
      case NodeKind::BinOp:
        print_call(binop_name(n.op), n, depth);
        return;
      case NodeKind::JudgeEqual:
        print_call("judge_equal", n, depth);
        return;
      case NodeKind::ParseYesNo:
        print_call("parse_yes_no", n, depth);
        return;
      case NodeKind::ParseTrace:
        print_call("parse_trace", n, depth);
        return;
      case NodeKind::AppendStep:
        print_call("append_step", n, depth);
        return;
      case NodeKind::EmptyTrace:
        print_call("empty_trace", n, depth);
        return;
      case NodeKind::ListOf:
        print_call("list_of", n, depth);
        return;
      case NodeKind::Append:
        print_call("append", n, depth);
        return;
      case NodeKind::Index:
        print_call("index", n, depth);
        return;
      case NodeKind::Len:
        print_call("len", n, depth);
        return;
      default:
        throw Error(std::string("printer: unexpected node ") + node_kind_name(n.kind));
    }
  }

  // If/loop bodies print as braced statement lists even when they are a
  // single expression.
  void print_branch(const AstNode& n, int depth) {
    if (n.kind == NodeKind::Sequence) {
      print_stmts(n, depth, /*braces=*/true);
      return;
    }
    out_ << "{\n";
    indent(depth + 1);
    print_stmt(n, depth + 1);
    out_ << "\n";
    indent(depth);
    out_ << "}";
  }

  void print_chat(const AstNode& n, int depth) {
    out_ << "chat {\n";
    indent(depth + 1);
    out_ << "context {\n";
    for (size_t i = 0; i < n.chat_context.size(); ++i) {
      indent(depth + 2);
      out_ << "item " << escape(n.chat_context[i].name) << ": ";
      print_expr(*n.children[i], depth + 2);
      if (!n.chat_context[i].description.empty()) {
        out_ << " desc " << escape(n.chat_context[i].description);
      }
      out_ << "\n";
    }
    indent(depth + 1);
    out_ << "}\n";
    indent(depth + 1);
    out_ << "instructions ";
    print_expr(*n.children[n.chat_context.size()], depth + 1);
    out_ << "\n";
    indent(depth + 1);
    out_ << "fields {\n";
    for (const auto& [name, desc] : n.chat_fields) {
      indent(depth + 2);
      out_ << "field " << name << ": " << escape(desc) << "\n";
    }
    indent(depth + 1);
    out_ << "}\n";
    indent(depth);
    out_ << "}";
  }

  std::ostringstream out_;
};

}  // namespace

std::string canonical_print(const WorkflowProgram& program) {
  return Printer().print(program);
}

WorkflowProgram parse_program(const std::string& source) {
  WorkflowProgram p = Parser(source).parse();
  validate_program(p);
  p.canonical = canonical_print(p);
  p.hash = hash_hex(fnv1a(p.canonical));
  return p;
}

}  // namespace arm::dsl
