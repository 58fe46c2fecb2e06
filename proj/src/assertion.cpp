#include "viewcheck/assertion.hpp"

#include <algorithm>

#include "viewcheck/error.hpp"
#include "viewcheck/objects.hpp"

namespace viewcheck {

// ---------------------------------------------------------------------------
// Construction

TermPtr Term::literal(Value v) {
  auto t = std::make_shared<Term>();
  t->op = TermOp::Lit;
  t->lit = v;
  return t;
}

TermPtr Term::named(std::string name) {
  auto t = std::make_shared<Term>();
  t->op = TermOp::Name;
  t->name = std::move(name);
  return t;
}

TermPtr Term::pc(ThreadId th) {
  auto t = std::make_shared<Term>();
  t->op = TermOp::Pc;
  t->thread = th;
  return t;
}

TermPtr Term::binary(TermOp op, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}

namespace {

std::shared_ptr<Assertion> node(AKind k) {
  auto p = std::make_shared<Assertion>();
  p->kind = k;
  return p;
}

}  // namespace

AssertPtr Assertion::truth(bool b) { return node(b ? AKind::True : AKind::False); }

AssertPtr Assertion::negate(AssertPtr p) {
  auto n = node(AKind::Not);
  n->args = {std::move(p)};
  return n;
}

AssertPtr Assertion::conj(std::vector<AssertPtr> ps) {
  if (ps.size() == 1) return ps.front();
  auto n = node(AKind::And);
  n->args = std::move(ps);
  return n;
}

AssertPtr Assertion::disj(std::vector<AssertPtr> ps) {
  if (ps.size() == 1) return ps.front();
  auto n = node(AKind::Or);
  n->args = std::move(ps);
  return n;
}

AssertPtr Assertion::implies(AssertPtr p, AssertPtr q) {
  auto n = node(AKind::Implies);
  n->args = {std::move(p), std::move(q)};
  return n;
}

AssertPtr Assertion::compare(ExprOp op, TermPtr a, TermPtr b) {
  auto n = node(AKind::Cmp);
  n->cmp = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

AssertPtr Assertion::member(TermPtr a, std::vector<TermPtr> set) {
  auto n = node(AKind::In);
  n->a = std::move(a);
  n->set = std::move(set);
  return n;
}

AssertPtr Assertion::possible(ThreadId t, std::string x, TermPtr u) {
  auto n = node(AKind::Possible);
  n->thread = t;
  n->x_name = std::move(x);
  n->u = std::move(u);
  return n;
}

AssertPtr Assertion::possible_op(ThreadId t, OpPattern op) {
  auto n = node(AKind::Possible);
  n->thread = t;
  n->op = std::move(op);
  return n;
}

AssertPtr Assertion::definite(ThreadId t, std::string x, TermPtr u) {
  auto n = node(AKind::Definite);
  n->thread = t;
  n->x_name = std::move(x);
  n->u = std::move(u);
  return n;
}

AssertPtr Assertion::definite_op(ThreadId t, OpPattern op) {
  auto n = node(AKind::Definite);
  n->thread = t;
  n->op = std::move(op);
  return n;
}

AssertPtr Assertion::conditional(ThreadId t, std::string x, TermPtr u, std::string y, TermPtr v) {
  auto n = node(AKind::Conditional);
  n->thread = t;
  n->x_name = std::move(x);
  n->u = std::move(u);
  n->y_name = std::move(y);
  n->v = std::move(v);
  return n;
}

AssertPtr Assertion::conditional_op(ThreadId t, OpPattern op, std::string y, TermPtr v) {
  auto n = node(AKind::Conditional);
  n->thread = t;
  n->op = std::move(op);
  n->y_name = std::move(y);
  n->v = std::move(v);
  return n;
}

AssertPtr Assertion::covered(OpPattern op) {
  auto n = node(AKind::Covered);
  n->op = std::move(op);
  return n;
}

AssertPtr Assertion::hidden(OpPattern op) {
  auto n = node(AKind::Hidden);
  n->op = std::move(op);
  return n;
}

AssertPtr Assertion::quantify(AKind kind, std::string meta, std::vector<Value> range, AssertPtr body) {
  auto n = node(kind);
  n->meta = std::move(meta);
  n->range = std::move(range);
  n->args = {std::move(body)};
  return n;
}

// ---------------------------------------------------------------------------
// Name resolution

namespace {

TermPtr resolve_term(const TermPtr& t, const System& sys, const std::vector<std::string>& metas) {
  if (!t) return t;
  auto n = std::make_shared<Term>(*t);
  if (t->op == TermOp::Name) {
    const bool bound = std::find(metas.begin(), metas.end(), t->name) != metas.end();
    if (!bound) {
      auto r = sys.find_register(t->name);
      if (!r) throw InputError("unknown register or metavariable '" + t->name + "'");
      n->reg = r;
    }
  }
  if (t->op == TermOp::Pc && sys.thread_index(t->thread) < 0)
    throw InputError("pc of unknown thread " + std::to_string(t->thread));
  n->lhs = resolve_term(t->lhs, sys, metas);
  n->rhs = resolve_term(t->rhs, sys, metas);
  return n;
}

VarId lookup(const System& sys, const std::string& name, bool want_object) {
  auto x = sys.vars.find(name);
  if (!x) throw InputError("unknown variable or object '" + name + "'");
  const bool is_object = sys.vars[*x].kind != VarKind::Plain;
  if (is_object != want_object)
    throw InputError("'" + name + "' is " + (is_object ? "an object" : "a variable") + " here");
  return *x;
}

void check_thread(const System& sys, ThreadId t) {
  if (sys.thread_index(t) < 0) throw InputError("unknown thread " + std::to_string(t));
}

AssertPtr resolve(const AssertPtr& p, const System& sys, std::vector<std::string>& metas) {
  auto n = std::make_shared<Assertion>(*p);
  n->args.clear();
  const bool quant = p->kind == AKind::Forall || p->kind == AKind::Exists;
  if (quant) metas.push_back(p->meta);
  for (const auto& a : p->args) n->args.push_back(resolve(a, sys, metas));
  if (quant) metas.pop_back();

  n->a = resolve_term(p->a, sys, metas);
  n->b = resolve_term(p->b, sys, metas);
  for (auto& s : n->set) s = resolve_term(s, sys, metas);
  n->u = resolve_term(p->u, sys, metas);
  n->v = resolve_term(p->v, sys, metas);

  switch (p->kind) {
    case AKind::Possible:
    case AKind::Definite:
    case AKind::Conditional:
      check_thread(sys, p->thread);
      break;
    default:
      break;
  }
  std::optional<Component> side;
  if (!p->x_name.empty()) {
    n->x = lookup(sys, p->x_name, false);
    side = sys.vars.component(n->x);
  }
  if (p->op) {
    n->op->obj = lookup(sys, p->op->obj_name, true);
    const VarKind k = sys.vars[n->op->obj].kind;
    const bool lock_op = n->op->kind == ActionKind::LockInit || n->op->kind == ActionKind::LockAcquire ||
                         n->op->kind == ActionKind::LockRelease;
    if (lock_op != (k == VarKind::Lock))
      throw InputError("'" + p->op->obj_name + "' has no such operation");
    n->op->arg = resolve_term(p->op->arg, sys, metas);
    side = sys.vars.component(n->op->obj);
  }
  if (!p->y_name.empty()) n->y = lookup(sys, p->y_name, false);
  if (p->lift && side && *p->lift != *side)
    throw InputError("atom lifted to the wrong component");
  return n;
}

}  // namespace

AssertPtr resolve_assertion(const AssertPtr& p, const System& sys) {
  std::vector<std::string> metas;
  return resolve(p, sys, metas);
}

// ---------------------------------------------------------------------------
// Observation predicates

namespace {

const OpRecord* last_write(const ComponentState& s, VarId y) {
  const OpRecord* best = nullptr;
  for (const auto& op : s.ops())
    if (op.action.var == y && op.action.is_write() && (!best || best->ts < op.ts)) best = &op;
  return best;
}

}  // namespace

bool dview(const View& view, const ComponentState& s, VarId y, const Value& n) {
  const OpRecord* w = last_write(s, y);
  return w && view.defined(y) && view.at(y) == w->ts && w->action.wrval() == n;
}

bool eval_possible(const ComponentState& s, ThreadId t, VarId x, const Value& u) {
  for (const OpRecord* w : s.observable(t, x))
    if (w->action.is_write() && w->action.wrval() == u) return true;
  return false;
}

bool eval_definite(const ComponentState& s, ThreadId t, VarId x, const Value& u) {
  return dview(s.tview(t), s, x, u);
}

bool eval_conditional(const ComponentState& sx, const ComponentState& sy, ThreadId t, VarId x, const Value& u,
                      VarId y, const Value& v) {
  for (const OpRecord* w : sx.observable(t, x)) {
    if (!w->action.is_write() || w->action.wrval() != u) continue;
    if (!w->action.is_releasing() || !dview(w->mview, sy, y, v)) return false;
  }
  return true;
}

bool eval_possible_op(const ComponentState& s, ThreadId t, VarId o, const ActionPred& m) {
  for (const OpRecord* w : s.observable(t, o))
    if (m(w->action)) return true;
  return false;
}

bool eval_definite_op(const ComponentState& s, ThreadId t, VarId o, const ActionPred& m) {
  if (!s.has_ops_on(o)) return false;
  const OpRecord& last = s.last_op(o);
  return s.tview(t).defined(o) && s.tview(t).at(o) == last.ts && m(last.action);
}

bool eval_conditional_op(const ComponentState& so, const ComponentState& sy, ThreadId t, VarId o,
                         const ActionPred& m, VarId y, const Value& v) {
  for (const OpRecord* w : so.observable(t, o))
    if (m(w->action) && (!in_sync_set(w->action) || !dview(w->mview, sy, y, v))) return false;
  return true;
}

bool eval_covered(const ComponentState& s, VarId o, const ActionPred& m) {
  if (!s.has_ops_on(o)) return true;
  const Timestamp top = s.max_ts(o);
  for (const auto& op : s.ops())
    if (op.action.var == o && !op.covered && (!m(op.action) || op.ts != top)) return false;
  return true;
}

bool eval_hidden(const ComponentState& s, VarId o, const ActionPred& m) {
  bool found = false;
  for (const auto& op : s.ops())
    if (op.action.var == o && m(op.action)) {
      if (!op.covered) return false;
      found = true;
    }
  return found;
}

// ---------------------------------------------------------------------------
// Evaluation

Value eval_term(const Term& t, const EvalContext& ctx) {
  switch (t.op) {
    case TermOp::Lit:
      return t.lit;
    case TermOp::Name: {
      if (t.reg) return ctx.cfg.threads.at(t.reg->thread).ls.get(t.reg->slot);
      auto it = ctx.env.find(t.name);
      if (it == ctx.env.end()) throw Error("unbound metavariable '" + t.name + "'");
      return it->second;
    }
    case TermOp::Pc: {
      const int i = ctx.sys.thread_index(t.thread);
      auto pc = program_counter(*ctx.cfg.threads.at(i).prog);
      return pc ? Value::integer(*pc) : Value::bot();
    }
    case TermOp::Add:
    case TermOp::Sub: {
      const Value a = eval_term(*t.lhs, ctx);
      const Value b = eval_term(*t.rhs, ctx);
      if (!a.is_int() || !b.is_int()) return Value::bot();
      return Value::integer(t.op == TermOp::Add ? a.as_int() + b.as_int() : a.as_int() - b.as_int());
    }
  }
  return Value::bot();
}

bool OpPattern::matches(const Action& a, const std::optional<Value>& want) const {
  if (a.var != obj || a.kind != kind) return false;
  if (kind == ActionKind::Dequeue && empty != a.is_empty_dequeue()) return false;
  if (!want) return true;
  switch (kind) {
    case ActionKind::LockInit:
    case ActionKind::LockAcquire:
    case ActionKind::LockRelease:
      return want->is_int() && want->as_int() == a.index;
    default:
      return *want == a.value;
  }
}

namespace {

bool compare_values(ExprOp op, const Value& a, const Value& b) {
  switch (op) {
    case ExprOp::Eq:
      return a == b;
    case ExprOp::Ne:
      return a != b;
    default:
      break;
  }
  if (!a.is_int() || !b.is_int()) return false;
  switch (op) {
    case ExprOp::Lt:
      return a.as_int() < b.as_int();
    case ExprOp::Le:
      return a.as_int() <= b.as_int();
    case ExprOp::Gt:
      return a.as_int() > b.as_int();
    case ExprOp::Ge:
      return a.as_int() >= b.as_int();
    default:
      return false;
  }
}

}  // namespace

bool eval_assertion(const Assertion& p, const EvalContext& ctx) {
  const Configuration& cfg = ctx.cfg;
  auto pred = [&](const OpPattern& op) {
    std::optional<Value> arg;
    if (op.arg) arg = eval_term(*op.arg, ctx);
    return ActionPred([&op, arg](const Action& a) { return op.matches(a, arg); });
  };
  switch (p.kind) {
    case AKind::True:
      return true;
    case AKind::False:
      return false;
    case AKind::Not:
      return !eval_assertion(*p.args[0], ctx);
    case AKind::And:
      return std::all_of(p.args.begin(), p.args.end(), [&](const AssertPtr& a) { return eval_assertion(*a, ctx); });
    case AKind::Or:
      return std::any_of(p.args.begin(), p.args.end(), [&](const AssertPtr& a) { return eval_assertion(*a, ctx); });
    case AKind::Implies:
      return !eval_assertion(*p.args[0], ctx) || eval_assertion(*p.args[1], ctx);
    case AKind::Cmp:
      return compare_values(p.cmp, eval_term(*p.a, ctx), eval_term(*p.b, ctx));
    case AKind::In: {
      const Value a = eval_term(*p.a, ctx);
      return std::any_of(p.set.begin(), p.set.end(), [&](const TermPtr& t) { return eval_term(*t, ctx) == a; });
    }
    case AKind::Possible:
      if (p.op) return eval_possible_op(cfg.side(ctx.sys.vars.component(p.op->obj)), p.thread, p.op->obj, pred(*p.op));
      return eval_possible(cfg.side(ctx.sys.vars.component(p.x)), p.thread, p.x, eval_term(*p.u, ctx));
    case AKind::Definite:
      if (p.op) return eval_definite_op(cfg.side(ctx.sys.vars.component(p.op->obj)), p.thread, p.op->obj, pred(*p.op));
      return eval_definite(cfg.side(ctx.sys.vars.component(p.x)), p.thread, p.x, eval_term(*p.u, ctx));
    case AKind::Conditional: {
      const ComponentState& sy = cfg.side(ctx.sys.vars.component(p.y));
      if (p.op)
        return eval_conditional_op(cfg.side(ctx.sys.vars.component(p.op->obj)), sy, p.thread, p.op->obj, pred(*p.op),
                                   p.y, eval_term(*p.v, ctx));
      return eval_conditional(cfg.side(ctx.sys.vars.component(p.x)), sy, p.thread, p.x, eval_term(*p.u, ctx), p.y,
                              eval_term(*p.v, ctx));
    }
    case AKind::Covered:
      return eval_covered(cfg.side(ctx.sys.vars.component(p.op->obj)), p.op->obj, pred(*p.op));
    case AKind::Hidden:
      return eval_hidden(cfg.side(ctx.sys.vars.component(p.op->obj)), p.op->obj, pred(*p.op));
    case AKind::Forall:
    case AKind::Exists: {
      const std::vector<Value>& range = p.range.empty() ? ctx.sys.domain : p.range;
      EvalContext inner{ctx.sys, ctx.cfg, ctx.env};
      for (const Value& v : range) {
        inner.env[p.meta] = v;
        const bool r = eval_assertion(*p.args[0], inner);
        if (p.kind == AKind::Forall && !r) return false;
        if (p.kind == AKind::Exists && r) return true;
      }
      return p.kind == AKind::Forall;
    }
  }
  return false;
}

bool eval_assertion(const Assertion& p, const System& sys, const Configuration& cfg) {
  return eval_assertion(p, EvalContext{sys, cfg, {}});
}

// ---------------------------------------------------------------------------
// Printing

std::string print_term(const Term& t) {
  switch (t.op) {
    case TermOp::Lit:
      return t.lit.to_string();
    case TermOp::Name:
      return t.name;
    case TermOp::Pc:
      return "pc(" + std::to_string(t.thread) + ")";
    case TermOp::Add:
      return "(" + print_term(*t.lhs) + " + " + print_term(*t.rhs) + ")";
    case TermOp::Sub:
      return "(" + print_term(*t.lhs) + " - " + print_term(*t.rhs) + ")";
  }
  return "?";
}

namespace {

std::string print_op(const OpPattern& op) {
  std::string m;
  switch (op.kind) {
    case ActionKind::LockInit:
      m = "init";
      break;
    case ActionKind::LockAcquire:
      m = "acquire";
      break;
    case ActionKind::LockRelease:
      m = "release";
      break;
    case ActionKind::Enqueue:
      m = "enq";
      break;
    case ActionKind::Dequeue:
      m = op.empty ? "deq_empty" : "deq";
      break;
    default:
      m = "?";
  }
  if (op.arg) m += "_" + print_term(*op.arg);
  return op.obj_name + "." + m;
}

const char* cmp_text(ExprOp op) {
  switch (op) {
    case ExprOp::Eq:
      return "=";
    case ExprOp::Ne:
      return "!=";
    case ExprOp::Lt:
      return "<";
    case ExprOp::Le:
      return "<=";
    case ExprOp::Gt:
      return ">";
    case ExprOp::Ge:
      return ">=";
    default:
      return "?";
  }
}

std::string join(const std::vector<AssertPtr>& ps, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += sep;
    out += "(" + print_assertion(*ps[i]) + ")";
  }
  return out;
}

std::string lifted(const Assertion& p, std::string s) {
  if (p.lift) s += *p.lift == Component::Client ? "@C" : "@L";
  return s;
}

}  // namespace

std::string print_assertion(const Assertion& p) {
  const std::string t = std::to_string(p.thread);
  switch (p.kind) {
    case AKind::True:
      return "true";
    case AKind::False:
      return "false";
    case AKind::Not:
      return "!(" + print_assertion(*p.args[0]) + ")";
    case AKind::And:
      return join(p.args, " && ");
    case AKind::Or:
      return join(p.args, " || ");
    case AKind::Implies:
      return "(" + print_assertion(*p.args[0]) + ") => (" + print_assertion(*p.args[1]) + ")";
    case AKind::Cmp:
      return print_term(*p.a) + " " + cmp_text(p.cmp) + " " + print_term(*p.b);
    case AKind::In: {
      std::string s = print_term(*p.a) + " in {";
      for (std::size_t i = 0; i < p.set.size(); ++i) s += (i ? ", " : "") + print_term(*p.set[i]);
      return s + "}";
    }
    case AKind::Possible:
      return lifted(p, "pobs(" + t + ", " + (p.op ? print_op(*p.op) : p.x_name + " = " + print_term(*p.u)) + ")");
    case AKind::Definite:
      return lifted(p, "dobs(" + t + ", " + (p.op ? print_op(*p.op) : p.x_name + " = " + print_term(*p.u)) + ")");
    case AKind::Conditional:
      return lifted(p, "cond(" + t + ", " + (p.op ? print_op(*p.op) : p.x_name + " = " + print_term(*p.u)) + ", " +
                           p.y_name + " = " + print_term(*p.v) + ")");
    case AKind::Covered:
      return lifted(p, "cvd(" + print_op(*p.op) + ")");
    case AKind::Hidden:
      return lifted(p, "cvv(" + print_op(*p.op) + ")");
    case AKind::Forall:
    case AKind::Exists: {
      std::string s = p.kind == AKind::Forall ? "forall " : "exists ";
      s += p.meta;
      if (!p.range.empty()) {
        s += " in {";
        for (std::size_t i = 0; i < p.range.size(); ++i) s += (i ? ", " : "") + p.range[i].to_string();
        s += "}";
      }
      return s + ": (" + print_assertion(*p.args[0]) + ")";
    }
  }
  return "?";
}

void collect_literals(const Assertion& p, std::vector<Value>& out) {
  std::function<void(const TermPtr&)> term = [&](const TermPtr& t) {
    if (!t) return;
    if (t->op == TermOp::Lit) out.push_back(t->lit);
    term(t->lhs);
    term(t->rhs);
  };
  term(p.a);
  term(p.b);
  term(p.u);
  term(p.v);
  for (const auto& s : p.set) term(s);
  if (p.op) term(p.op->arg);
  for (const auto& v : p.range) out.push_back(v);
  for (const auto& a : p.args) collect_literals(*a, out);
}

}  // namespace viewcheck
