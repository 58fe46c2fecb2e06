#include "viewcheck/litmus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "viewcheck/error.hpp"

namespace viewcheck {

const Assertion* ProofOutline::at(int thread, int label) const {
  auto it = annotations.find({thread, label});
  return it == annotations.end() ? nullptr : it->second.get();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* multi[] = {":=", "<-", "=>", "&&", "||", "!=", "<=", ">=", "=="};
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    t.kind = Tok::Sym;
    std::string sym(1, c);
    for (const char* m : multi)
      if (src.compare(i, 2, m) == 0) sym = m;
    // ":=R" and "<-A" annotate the access; the suffix must stand alone.
    if ((sym == ":=" || sym == "<-") && i + 2 < src.size() && src[i + 2] == (sym == ":=" ? 'R' : 'A') &&
        (i + 3 >= src.size() || !ident_char(src[i + 3])))
      sym += src[i + 2];
    if (std::string("{}();:,.=<>!+-*@").find(c) == std::string::npos && sym.size() == 1)
      throw InputError(std::string("unexpected character '") + c + "'", line, col);
    t.text = sym;
    advance(sym.size());
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct PendingThread {
  ThreadId id;
  CmdPtr program;
  std::vector<std::pair<int, AssertPtr>> notes;
  Token where;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  LitmusFile file();

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_sym(const std::string& s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool at_word(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept(const std::string& s) {
    if (!at_sym(s)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw InputError(msg, t.line, t.col); }
  std::string describe(const Token& t) const {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  const Token& expect(const std::string& s) {
    if (!at_sym(s)) fail(peek(), "expected '" + s + "' but found " + describe(peek()));
    return next();
  }
  const Token& expect_word(const std::string& s) {
    if (!at_word(s)) fail(peek(), "expected '" + s + "' but found " + describe(peek()));
    return next();
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what + " but found " + describe(peek()));
    return next().text;
  }
  std::int64_t integer(const std::string& what) {
    const bool neg = accept("-");
    if (peek().kind != Tok::Int) fail(peek(), "expected " + what + " but found " + describe(peek()));
    const std::int64_t n = std::stoll(next().text);
    return neg ? -n : n;
  }

  Value literal_value();
  bool is_global(const std::string& name) const { return file_.sys.vars.find(name).has_value(); }
  bool is_object(const std::string& name) const {
    auto x = file_.sys.vars.find(name);
    return x && file_.sys.vars[*x].kind != VarKind::Plain;
  }
  VarId plain_var(const Token& t) const;

  void init_section();
  void object_decl();

  // program text
  CmdPtr stmts(PendingThread& th);
  CmdPtr block(PendingThread& th);
  CmdPtr stmt(PendingThread& th);
  bool at_call() const { return peek().kind == Tok::Ident && is_object(peek().text) && at_sym(".", 1); }
  ObjCall call();
  ExprPtr expr();
  ExprPtr expr_or();
  ExprPtr expr_and();
  ExprPtr expr_not();
  ExprPtr expr_cmp();
  ExprPtr expr_add();
  ExprPtr expr_mul();
  ExprPtr expr_unary();
  ExprPtr expr_atom();
  ExprPtr required_expr(const Token& after);

  // assertions
  AssertPtr assertion();
  AssertPtr a_or();
  AssertPtr a_and();
  AssertPtr a_unary();
  AssertPtr a_primary();
  AssertPtr a_comparison();
  AssertPtr a_atom(const std::string& kw);
  OpPattern op_pattern();
  TermPtr term();
  TermPtr term_atom();
  AssertPtr braced_assertion();
  bool at_cmp() const;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  LitmusFile file_;
  std::vector<std::pair<std::string, Value>> reg_inits_;
  std::vector<Token> reg_init_tokens_;
  std::vector<std::pair<VarId, Value>> inits_;
  std::vector<PendingThread> threads_;
  Token observe_token_;
  AssertPtr pre_, inv_, final_;
};

Value Parser::literal_value() {
  if (at_word("true") || at_word("false")) return Value::boolean(next().text == "true");
  if (at_word("bot")) {
    next();
    return Value::bot();
  }
  if (at_word("EMPTY")) {
    next();
    return Value::empty();
  }
  return Value::integer(integer("a value"));
}

VarId Parser::plain_var(const Token& t) const {
  auto x = file_.sys.vars.find(t.text);
  if (!x) fail(t, "undeclared variable '" + t.text + "'");
  if (file_.sys.vars[*x].kind != VarKind::Plain) fail(t, "'" + t.text + "' is an object");
  return *x;
}

void Parser::init_section() {
  expect("{");
  while (!accept("}")) {
    if (at_word("reg")) {
      next();
      reg_init_tokens_.push_back(peek());
      const std::string r = ident("a register name");
      expect("=");
      reg_inits_.emplace_back(r, literal_value());
    } else {
      const Token& t = peek();
      const std::string x = ident("a variable name");
      if (is_global(x)) fail(t, "duplicate initialisation of '" + x + "'");
      expect("=");
      const VarId id = file_.sys.vars.add(x, Component::Client);
      inits_.emplace_back(id, literal_value());
    }
    if (!at_sym("}")) expect(";");
  }
}

void Parser::object_decl() {
  const Token& t = peek();
  const std::string name = ident("an object name");
  if (is_global(name)) fail(t, "'" + name + "' is already declared");
  expect(":");
  const Token& kt = peek();
  const std::string kind = ident("'lock' or 'queue'");
  if (kind != "lock" && kind != "queue") fail(kt, "unknown object kind '" + kind + "'");
  file_.sys.vars.add(name, Component::Library, kind == "lock" ? VarKind::Lock : VarKind::Queue);
  if (at_word("impl")) {
    next();
    file_.impl = ident("an implementation name");
    while (at_sym("-")) {
      next();
      file_.impl += "-" + ident("an implementation name");
    }
  }
}

ObjCall Parser::call() {
  ObjCall c;
  const Token& ot = peek();
  c.obj_name = ident("an object");
  auto x = file_.sys.vars.find(c.obj_name);
  if (!x || file_.sys.vars[*x].kind == VarKind::Plain) fail(ot, "'" + c.obj_name + "' is not an object");
  c.obj = *x;
  expect(".");
  const Token& mt = peek();
  std::string m = ident("a method name");
  std::transform(m.begin(), m.end(), m.begin(), [](unsigned char ch) { return std::tolower(ch); });
  const VarKind kind = file_.sys.vars[c.obj].kind;
  if (kind == VarKind::Lock && m == "acquire")
    c.method = Method::Acquire;
  else if (kind == VarKind::Lock && m == "release")
    c.method = Method::Release;
  else if (kind == VarKind::Queue && m == "enq")
    c.method = Method::Enq;
  else if (kind == VarKind::Queue && m == "deq")
    c.method = Method::Deq;
  else
    fail(mt, "object '" + c.obj_name + "' has no method '" + m + "'");
  expect("(");
  if (c.method == Method::Enq) {
    c.arg = expr();
  } else if (c.method == Method::Acquire && peek().kind == Tok::Ident) {
    const Token& rt = peek();
    c.version_reg = next().text;
    if (is_global(c.version_reg)) fail(rt, "version register '" + c.version_reg + "' is a global");
  }
  expect(")");
  return c;
}

ExprPtr Parser::required_expr(const Token& after) {
  const Token& t = peek();
  if (t.kind == Tok::End || at_sym(";") || at_sym("}")) {
    // point at the '=' of an assignment operator
    Token at = after;
    const auto eq = after.text.find('=');
    if (eq != std::string::npos) at.col += static_cast<int>(eq);
    fail(at, "expected expression after '" + after.text + "'");
  }
  return expr();
}

CmdPtr Parser::stmt(PendingThread& th) {
  if (peek().kind == Tok::Int && at_sym(":", 1)) {
    const Token& lt = peek();
    const int label = static_cast<int>(std::stoll(next().text));
    next();
    for (const auto& [l, a] : th.notes)
      if (l == label) fail(lt, "duplicate label " + std::to_string(label));
    if (at_sym("{")) {
      th.notes.emplace_back(label, braced_assertion());
    } else {
      th.notes.emplace_back(label, nullptr);
    }
    return Cmd::labelled(label, stmt(th));
  }
  if (at_word("skip")) {
    next();
    return Cmd::skip();
  }
  if (at_word("if")) {
    next();
    CmdPtr cond_hole;
    ExprPtr cond;
    if (at_call())
      cond_hole = Cmd::call_hole(call());
    else
      cond = expr();
    expect_word("then");
    CmdPtr then_branch = block(th);
    CmdPtr else_branch = Cmd::skip();
    if (at_word("else")) {
      next();
      else_branch = block(th);
    }
    return cond_hole ? Cmd::if_call(cond_hole, then_branch, else_branch) : Cmd::if_(cond, then_branch, else_branch);
  }
  if (at_word("while")) {
    next();
    if (at_call()) fail(peek(), "method calls are not allowed in loop conditions");
    ExprPtr cond = expr();
    expect_word("do");
    return Cmd::while_(cond, block(th));
  }
  if (at_word("do")) {
    next();
    CmdPtr body = block(th);
    expect_word("until");
    if (at_call()) fail(peek(), "method calls are not allowed in loop conditions");
    return Cmd::do_until(body, expr());
  }
  if (at_call()) return Cmd::call_hole(call());

  const Token& lhs_tok = peek();
  const std::string lhs = ident("a statement");
  const Token& op = peek();
  if (at_sym(":=") || at_sym(":=R")) {
    next();
    const bool release = op.text == ":=R";
    if (is_global(lhs)) {
      const VarId x = plain_var(lhs_tok);
      return Cmd::write(lhs, x, required_expr(op), release);
    }
    if (release) fail(op, "':=R' needs a global variable on the left");
    if (at_call()) return Cmd::assign_call(lhs, Cmd::call_hole(call()));
    return Cmd::assign(lhs, required_expr(op));
  }
  if (at_sym("<-") || at_sym("<-A")) {
    next();
    const bool acquire = op.text == "<-A";
    if (is_global(lhs)) fail(lhs_tok, "cannot read into global '" + lhs + "'");
    if (!acquire && at_call()) return Cmd::assign_call(lhs, Cmd::call_hole(call()));
    if (!acquire && (at_word("CAS") || at_word("FAI")) && at_sym("(", 1)) {
      const bool cas = next().text == "CAS";
      expect("(");
      const Token& vt = peek();
      const std::string var = ident("a global variable");
      const VarId x = plain_var(vt);
      if (!cas) {
        expect(")");
        return Cmd::fai(lhs, var, x);
      }
      expect(",");
      ExprPtr expected = expr();
      expect(",");
      ExprPtr desired = expr();
      expect(")");
      return Cmd::cas(lhs, var, x, expected, desired);
    }
    const Token& vt = peek();
    const std::string var = ident("a global variable");
    const VarId x = plain_var(vt);
    return Cmd::read(lhs, var, x, acquire);
  }
  fail(op, "expected ':=' or '<-' after '" + lhs + "' but found " + describe(op));
}

CmdPtr Parser::stmts(PendingThread& th) {
  std::vector<CmdPtr> out{stmt(th)};
  while (accept(";")) {
    if (at_sym("}")) break;
    out.push_back(stmt(th));
  }
  return sequence(out);
}

CmdPtr Parser::block(PendingThread& th) {
  expect("{");
  if (accept("}")) return Cmd::skip();
  CmdPtr c = stmts(th);
  expect("}");
  return c;
}

// Expressions: || < && < ! < comparison < + - < * < unary minus.

ExprPtr Parser::expr() { return expr_or(); }

ExprPtr Parser::expr_or() {
  ExprPtr e = expr_and();
  while (accept("||")) e = Expr::binary(ExprOp::Or, e, expr_and());
  return e;
}

ExprPtr Parser::expr_and() {
  ExprPtr e = expr_not();
  while (accept("&&")) e = Expr::binary(ExprOp::And, e, expr_not());
  return e;
}

ExprPtr Parser::expr_not() {
  if (accept("!")) return Expr::unary(ExprOp::Not, expr_not());
  return expr_cmp();
}

ExprPtr Parser::expr_cmp() {
  ExprPtr e = expr_add();
  static const std::pair<const char*, ExprOp> ops[] = {{"=", ExprOp::Eq},  {"==", ExprOp::Eq}, {"!=", ExprOp::Ne},
                                                       {"<", ExprOp::Lt},  {"<=", ExprOp::Le}, {">", ExprOp::Gt},
                                                       {">=", ExprOp::Ge}};
  for (const auto& [s, op] : ops)
    if (accept(s)) return Expr::binary(op, e, expr_add());
  return e;
}

ExprPtr Parser::expr_add() {
  ExprPtr e = expr_mul();
  for (;;) {
    if (accept("+"))
      e = Expr::binary(ExprOp::Add, e, expr_mul());
    else if (accept("-"))
      e = Expr::binary(ExprOp::Sub, e, expr_mul());
    else
      return e;
  }
}

ExprPtr Parser::expr_mul() {
  ExprPtr e = expr_unary();
  while (accept("*")) e = Expr::binary(ExprOp::Mul, e, expr_unary());
  return e;
}

ExprPtr Parser::expr_unary() {
  if (at_sym("-") && peek(1).kind == Tok::Int) {
    next();
    return Expr::literal(Value::integer(-std::stoll(next().text)));
  }
  if (accept("-")) return Expr::unary(ExprOp::Neg, expr_unary());
  if (accept("!")) return Expr::unary(ExprOp::Not, expr_unary());
  return expr_atom();
}

ExprPtr Parser::expr_atom() {
  const Token& t = peek();
  if (t.kind == Tok::Int) return Expr::literal(Value::integer(std::stoll(next().text)));
  if (accept("(")) {
    ExprPtr e = expr();
    expect(")");
    return e;
  }
  if (t.kind != Tok::Ident) fail(t, "expected expression but found " + describe(t));
  if (t.text == "true" || t.text == "false" || t.text == "bot" || t.text == "EMPTY") return Expr::literal(literal_value());
  if ((t.text == "even" || t.text == "odd") && at_sym("(", 1)) {
    const ExprOp op = next().text == "even" ? ExprOp::Even : ExprOp::Odd;
    expect("(");
    ExprPtr e = expr();
    expect(")");
    return Expr::unary(op, e);
  }
  next();
  if (is_global(t.text)) fail(t, "global '" + t.text + "' used in an expression (read it into a register first)");
  return Expr::reg(t.text);
}

// Assertions: => (right assoc) < || < && < ! < atoms and comparisons.

AssertPtr Parser::braced_assertion() {
  expect("{");
  AssertPtr a = assertion();
  expect("}");
  return a;
}

AssertPtr Parser::assertion() {
  AssertPtr a = a_or();
  if (accept("=>")) return Assertion::implies(a, assertion());
  return a;
}

AssertPtr Parser::a_or() {
  std::vector<AssertPtr> ps{a_and()};
  while (accept("||")) ps.push_back(a_and());
  return Assertion::disj(std::move(ps));
}

AssertPtr Parser::a_and() {
  std::vector<AssertPtr> ps{a_unary()};
  while (accept("&&")) ps.push_back(a_unary());
  return Assertion::conj(std::move(ps));
}

AssertPtr Parser::a_unary() {
  if (accept("!")) return Assertion::negate(a_unary());
  if (at_word("forall") || at_word("exists")) {
    const AKind kind = next().text == "forall" ? AKind::Forall : AKind::Exists;
    const std::string meta = ident("a metavariable");
    std::vector<Value> range;
    if (at_word("in")) {
      next();
      expect("{");
      if (!at_sym("}")) {
        range.push_back(literal_value());
        while (accept(",")) range.push_back(literal_value());
      }
      expect("}");
    }
    expect(":");
    return Assertion::quantify(kind, meta, std::move(range), assertion());
  }
  return a_primary();
}

bool Parser::at_cmp() const {
  static const char* ops[] = {"=", "==", "!=", "<", "<=", ">", ">="};
  for (const char* s : ops)
    if (at_sym(s)) return true;
  return at_word("in");
}

AssertPtr Parser::a_primary() {
  const Token& t = peek();
  if ((t.text == "true" || t.text == "false") && t.kind == Tok::Ident) {
    const std::size_t save = pos_;
    next();
    if (!at_cmp()) return Assertion::truth(t.text == "true");
    pos_ = save;
  }
  if (t.kind == Tok::Ident && at_sym("(", 1) &&
      (t.text == "pobs" || t.text == "dobs" || t.text == "cond" || t.text == "cvd" || t.text == "cvv")) {
    next();
    return a_atom(t.text);
  }
  if (at_sym("(")) {
    const std::size_t save = pos_;
    try {
      return a_comparison();
    } catch (const InputError&) {
      pos_ = save;
    }
    next();
    AssertPtr a = assertion();
    expect(")");
    return a;
  }
  return a_comparison();
}

AssertPtr Parser::a_comparison() {
  TermPtr a = term();
  if (at_word("in")) {
    next();
    expect("{");
    std::vector<TermPtr> set;
    if (!at_sym("}")) {
      set.push_back(term());
      while (accept(",")) set.push_back(term());
    }
    expect("}");
    return Assertion::member(a, std::move(set));
  }
  static const std::pair<const char*, ExprOp> ops[] = {{"=", ExprOp::Eq},  {"==", ExprOp::Eq}, {"!=", ExprOp::Ne},
                                                       {"<", ExprOp::Lt},  {"<=", ExprOp::Le}, {">", ExprOp::Gt},
                                                       {">=", ExprOp::Ge}};
  for (const auto& [s, op] : ops)
    if (accept(s)) return Assertion::compare(op, a, term());
  fail(peek(), "expected a comparison but found " + describe(peek()));
}

OpPattern Parser::op_pattern() {
  OpPattern p;
  const Token& ot = peek();
  p.obj_name = ident("an object");
  if (!is_object(p.obj_name)) fail(ot, "'" + p.obj_name + "' is not an object");
  expect(".");
  const Token& mt = peek();
  const std::string full = ident("an operation name");
  const auto us = full.find('_');
  const std::string m = full.substr(0, us);
  std::string arg = us == std::string::npos ? "" : full.substr(us + 1);
  // A metavariable or negative index may also follow as a separate token.
  if (m == "init")
    p.kind = ActionKind::LockInit;
  else if (m == "acquire")
    p.kind = ActionKind::LockAcquire;
  else if (m == "release")
    p.kind = ActionKind::LockRelease;
  else if (m == "enq")
    p.kind = ActionKind::Enqueue;
  else if (m == "deq")
    p.kind = ActionKind::Dequeue;
  else
    fail(mt, "unknown operation '" + full + "'");
  if (p.kind == ActionKind::Dequeue && arg == "empty") {
    p.empty = true;
    arg.clear();
  }
  if (!arg.empty()) {
    if (std::all_of(arg.begin(), arg.end(), [](unsigned char c) { return std::isdigit(c); }))
      p.arg = Term::literal(Value::integer(std::stoll(arg)));
    else
      p.arg = Term::named(arg);
  }
  return p;
}

AssertPtr Parser::a_atom(const std::string& kw) {
  expect("(");
  AssertPtr out;
  if (kw == "cvd" || kw == "cvv") {
    OpPattern p = op_pattern();
    out = kw == "cvd" ? Assertion::covered(p) : Assertion::hidden(p);
  } else {
    const ThreadId t = static_cast<ThreadId>(integer("a thread id"));
    expect(",");
    std::optional<OpPattern> op;
    std::string x;
    TermPtr u;
    if (peek().kind == Tok::Ident && at_sym(".", 1)) {
      op = op_pattern();
    } else {
      x = ident("a variable");
      expect("=");
      u = term();
    }
    if (kw == "cond") {
      expect(",");
      const std::string y = ident("a variable");
      expect("=");
      TermPtr v = term();
      out = op ? Assertion::conditional_op(t, *op, y, v) : Assertion::conditional(t, x, u, y, v);
    } else if (kw == "pobs") {
      out = op ? Assertion::possible_op(t, *op) : Assertion::possible(t, x, u);
    } else {
      out = op ? Assertion::definite_op(t, *op) : Assertion::definite(t, x, u);
    }
  }
  expect(")");
  if (accept("@")) {
    const Token& ct = peek();
    const std::string c = ident("C or L");
    if (c != "C" && c != "L") fail(ct, "expected '@C' or '@L'");
    auto lifted = std::make_shared<Assertion>(*out);
    lifted->lift = c == "C" ? Component::Client : Component::Library;
    out = lifted;
  }
  return out;
}

TermPtr Parser::term() {
  TermPtr t = term_atom();
  for (;;) {
    if (accept("+"))
      t = Term::binary(TermOp::Add, t, term_atom());
    else if (accept("-"))
      t = Term::binary(TermOp::Sub, t, term_atom());
    else
      return t;
  }
}

TermPtr Parser::term_atom() {
  const Token& t = peek();
  if (t.kind == Tok::Int || (at_sym("-") && peek(1).kind == Tok::Int)) return Term::literal(literal_value());
  if (accept("(")) {
    TermPtr inner = term();
    expect(")");
    return inner;
  }
  if (t.kind != Tok::Ident) fail(t, "expected a term but found " + describe(t));
  if (t.text == "true" || t.text == "false" || t.text == "bot" || t.text == "EMPTY") return Term::literal(literal_value());
  if (t.text == "pc" && at_sym("(", 1)) {
    next();
    expect("(");
    const ThreadId th = static_cast<ThreadId>(integer("a thread id"));
    expect(")");
    return Term::pc(th);
  }
  next();
  return Term::named(t.text);
}

// ---------------------------------------------------------------------------
// File

LitmusFile Parser::file() {
  bool seen_thread = false;
  while (peek().kind != Tok::End) {
    const Token& kw = peek();
    const std::string w = ident("a section keyword");
    if (w == "litmus" || w == "name") {
      file_.name = ident("a test name");
      while (at_sym("-") || at_sym(".")) {
        file_.name += next().text;
        file_.name += peek().kind == Tok::End ? "" : next().text;
      }
    } else if (w == "mode") {
      const Token& mt = peek();
      file_.mode = ident("a mode");
      static const std::set<std::string> modes{"explore", "outline", "hoare", "refine"};
      if (!modes.count(file_.mode)) fail(mt, "unknown mode '" + file_.mode + "'");
    } else if (w == "max_steps") {
      const Token& nt = peek();
      file_.max_steps = static_cast<int>(integer("a step bound"));
      if (file_.max_steps <= 0) fail(nt, "max_steps must be positive");
    } else if (w == "init") {
      if (seen_thread) fail(kw, "init must precede the threads");
      init_section();
    } else if (w == "object") {
      if (seen_thread) fail(kw, "objects must be declared before the threads");
      object_decl();
    } else if (w == "observe") {
      observe_token_ = peek();
      file_.observed.push_back(ident("a register"));
      while (accept(",")) file_.observed.push_back(ident("a register"));
    } else if (w == "pre") {
      pre_ = braced_assertion();
    } else if (w == "invariant") {
      inv_ = braced_assertion();
    } else if (w == "final") {
      final_ = braced_assertion();
    } else if (w == "thread") {
      seen_thread = true;
      PendingThread th;
      th.where = peek();
      th.id = static_cast<ThreadId>(integer("a thread id"));
      for (const auto& other : threads_)
        if (other.id == th.id) fail(th.where, "duplicate thread " + std::to_string(th.id));
      th.program = block(th);
      threads_.push_back(std::move(th));
    } else {
      fail(kw, "unknown section '" + w + "'");
    }
  }
  if (threads_.empty()) fail(peek(), "a litmus file needs at least one thread");

  // Build the system.
  System& sys = file_.sys;
  sys.init = inits_;
  for (auto& th : threads_) {
    ThreadDecl d;
    d.id = th.id;
    d.program = resolve_registers(th.program, d.regs, RegKind::Client);
    sys.threads.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < reg_inits_.size(); ++i) {
    auto r = sys.find_register(reg_inits_[i].first);
    if (!r) fail(reg_init_tokens_[i], "register '" + reg_inits_[i].first + "' is not used by any thread");
    sys.reg_init.push_back(RegInit{r->thread, r->slot, reg_inits_[i].second});
  }
  if (file_.observed.empty()) {
    for (std::size_t i = 0; i < sys.threads.size(); ++i)
      for (std::size_t s = 1; s < sys.threads[i].regs.size(); ++s)
        if (sys.threads[i].regs[static_cast<int>(s)].kind == RegKind::Client)
          sys.observed.push_back(RegRef{static_cast<int>(i), static_cast<int>(s), sys.threads[i].regs[static_cast<int>(s)].name});
  } else {
    for (const auto& name : file_.observed) {
      auto r = sys.find_register(name);
      if (!r) fail(observe_token_, "observed register '" + name + "' is not used by any thread");
      sys.observed.push_back(*r);
    }
  }

  auto resolve = [&](const AssertPtr& a, const Token& where) -> AssertPtr {
    if (!a) return Assertion::truth(true);
    try {
      return resolve_assertion(a, sys);
    } catch (const InputError& e) {
      if (e.line() > 0) throw;
      throw InputError(e.what(), where.line, where.col);
    }
  };
  const Token none;
  file_.outline.pre = resolve(pre_, none);
  file_.outline.invariant = resolve(inv_, none);
  file_.outline.final = resolve(final_, none);
  for (std::size_t i = 0; i < threads_.size(); ++i)
    for (const auto& [label, a] : threads_[i].notes)
      if (a) file_.outline.annotations[{static_cast<int>(i), label}] = resolve(a, threads_[i].where);

  std::vector<Value> dom = literal_domain(sys);
  for (const AssertPtr& a : {file_.outline.pre, file_.outline.invariant, file_.outline.final})
    collect_literals(*a, dom);
  for (const auto& [k, a] : file_.outline.annotations) collect_literals(*a, dom);
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  sys.domain = std::move(dom);
  return std::move(file_);
}

}  // namespace

LitmusFile parse_litmus(const std::string& text) { return Parser(lex(text)).file(); }

LitmusFile load_litmus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_litmus(ss.str());
}

std::string print_litmus(const LitmusFile& f) {
  std::ostringstream out;
  const System& sys = f.sys;
  if (!f.name.empty()) out << "litmus " << f.name << "\n";
  out << "mode " << f.mode << "\n";
  out << "max_steps " << f.max_steps << "\n";
  out << "init {\n";
  for (const auto& [x, v] : sys.init) out << "  " << sys.vars.name(x) << " = " << v.to_string() << ";\n";
  for (const auto& r : sys.reg_init)
    out << "  reg " << sys.threads[r.thread].regs[r.slot].name << " = " << r.value.to_string() << ";\n";
  out << "}\n";
  for (VarId x = 0; x < sys.vars.size(); ++x) {
    if (sys.vars[x].kind == VarKind::Plain) continue;
    out << "object " << sys.vars.name(x) << " : " << (sys.vars[x].kind == VarKind::Lock ? "lock" : "queue");
    if (!f.impl.empty()) out << " impl " << f.impl;
    out << "\n";
  }
  if (!f.observed.empty()) {
    out << "observe ";
    for (std::size_t i = 0; i < f.observed.size(); ++i) out << (i ? ", " : "") << f.observed[i];
    out << "\n";
  }
  out << "pre { " << print_assertion(*f.outline.pre) << " }\n";
  out << "invariant { " << print_assertion(*f.outline.invariant) << " }\n";
  for (std::size_t i = 0; i < sys.threads.size(); ++i) {
    const LabelNote note = [&](int label) {
      const Assertion* a = f.outline.at(static_cast<int>(i), label);
      return a ? print_assertion(*a) : std::string();
    };
    out << "thread " << sys.threads[i].id << " {\n" << print_cmd(*sys.threads[i].program, 1, note) << "\n}\n";
  }
  out << "final { " << print_assertion(*f.outline.final) << " }\n";
  return out.str();
}

}  // namespace viewcheck
