#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "viewcheck/system.hpp"

namespace viewcheck {

// ---------------------------------------------------------------------------
// Terms: values built from literals, registers, metavariables and pcs.

enum class TermOp : std::uint8_t { Lit, Name, Pc, Add, Sub };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermOp op = TermOp::Lit;
  Value lit;
  std::string name;             // Name: register or metavariable
  std::optional<RegRef> reg;    // resolved register (absent: metavariable)
  ThreadId thread = 0;          // Pc
  TermPtr lhs, rhs;

  static TermPtr literal(Value v);
  static TermPtr named(std::string name);
  static TermPtr pc(ThreadId t);
  static TermPtr binary(TermOp op, TermPtr a, TermPtr b);
};

using MetaEnv = std::map<std::string, Value>;

// ---------------------------------------------------------------------------
// Operation patterns such as l.release_2, l.acquire_u, q.enq_5, q.deq_empty

struct OpPattern {
  std::string obj_name;
  VarId obj = 0;
  ActionKind kind = ActionKind::LockInit;
  bool empty = false;  // deq_empty
  TermPtr arg;         // version for lock ops, value for queue ops; may be absent

  /// `arg` is the evaluated argument (absent: any version / value).
  bool matches(const Action& a, const std::optional<Value>& arg) const;
};

// ---------------------------------------------------------------------------
// Assertions

enum class AKind : std::uint8_t {
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Cmp,        // term (= != < <= > >=) term
  In,         // term in {terms}
  Possible,   // pobs(t, x = u) | pobs(t, o.m)
  Definite,   // dobs(t, x = u) | dobs(t, o.m)
  Conditional,  // cond(t, x = u, y = v) | cond(t, o.m, y = v)
  Covered,    // cvd(o.m)
  Hidden,     // cvv(o.m)
  Forall,
  Exists,
};

struct Assertion;
using AssertPtr = std::shared_ptr<const Assertion>;

struct Assertion {
  AKind kind = AKind::True;
  std::vector<AssertPtr> args;  // connectives and quantifier bodies

  ExprOp cmp = ExprOp::Eq;      // Cmp
  TermPtr a, b;                 // Cmp operands / In element
  std::vector<TermPtr> set;     // In

  ThreadId thread = 0;          // observation atoms
  std::string x_name;           // variable form: x = u
  VarId x = 0;
  TermPtr u;
  std::optional<OpPattern> op;  // object form
  std::string y_name;           // conditional: y = v
  VarId y = 0;
  TermPtr v;
  std::optional<Component> lift;  // explicit @C / @L

  std::string meta;             // quantifiers
  std::vector<Value> range;     // empty: the system's value domain

  static AssertPtr truth(bool b);
  static AssertPtr negate(AssertPtr p);
  static AssertPtr conj(std::vector<AssertPtr> ps);
  static AssertPtr disj(std::vector<AssertPtr> ps);
  static AssertPtr implies(AssertPtr p, AssertPtr q);
  static AssertPtr compare(ExprOp op, TermPtr a, TermPtr b);
  static AssertPtr member(TermPtr a, std::vector<TermPtr> set);
  static AssertPtr possible(ThreadId t, std::string x, TermPtr u);
  static AssertPtr possible_op(ThreadId t, OpPattern op);
  static AssertPtr definite(ThreadId t, std::string x, TermPtr u);
  static AssertPtr definite_op(ThreadId t, OpPattern op);
  static AssertPtr conditional(ThreadId t, std::string x, TermPtr u, std::string y, TermPtr v);
  static AssertPtr conditional_op(ThreadId t, OpPattern op, std::string y, TermPtr v);
  static AssertPtr covered(OpPattern op);
  static AssertPtr hidden(OpPattern op);
  static AssertPtr quantify(AKind kind, std::string meta, std::vector<Value> range, AssertPtr body);
};

/// Binds variable, object and register names against the system. Names not
/// bound by a register are left as metavariables; they must be bound by an
/// enclosing quantifier. Throws InputError on unknown names.
AssertPtr resolve_assertion(const AssertPtr& p, const System& sys);

// ---------------------------------------------------------------------------
// Evaluation of the observation predicates on one component state

/// dview(view, σ.ops ∩ W, y) = n: the view's entry for y is the last write
/// to y in σ and that write wrote n.
bool dview(const View& view, const ComponentState& s, VarId y, const Value& n);

bool eval_possible(const ComponentState& s, ThreadId t, VarId x, const Value& u);
bool eval_definite(const ComponentState& s, ThreadId t, VarId x, const Value& u);
/// ⟨x = u⟩[y = v]_t with x read in `sx` and y judged against `sy`.
bool eval_conditional(const ComponentState& sx, const ComponentState& sy, ThreadId t, VarId x, const Value& u,
                      VarId y, const Value& v);

using ActionPred = std::function<bool(const Action&)>;

bool eval_possible_op(const ComponentState& s, ThreadId t, VarId o, const ActionPred& m);
bool eval_definite_op(const ComponentState& s, ThreadId t, VarId o, const ActionPred& m);
/// ⟨o.m⟩[y = v]_t: o.m synchronises and every instance t may observe pins y.
bool eval_conditional_op(const ComponentState& so, const ComponentState& sy, ThreadId t, VarId o,
                         const ActionPred& m, VarId y, const Value& v);
bool eval_covered(const ComponentState& s, VarId o, const ActionPred& m);
bool eval_hidden(const ComponentState& s, VarId o, const ActionPred& m);

struct EvalContext {
  const System& sys;
  const Configuration& cfg;
  MetaEnv env;
};

Value eval_term(const Term& t, const EvalContext& ctx);
bool eval_assertion(const Assertion& p, const EvalContext& ctx);
bool eval_assertion(const Assertion& p, const System& sys, const Configuration& cfg);

std::string print_term(const Term& t);
std::string print_assertion(const Assertion& p);

/// Literals mentioned by an assertion (added to the value domain).
void collect_literals(const Assertion& p, std::vector<Value>& out);

}  // namespace viewcheck
