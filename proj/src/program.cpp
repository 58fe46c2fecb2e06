#include "viewcheck/program.hpp"

#include <algorithm>

#include "viewcheck/error.hpp"

namespace viewcheck {

// ---------------------------------------------------------------------------
// Registers

RegTable::RegTable() { regs_.push_back(RegInfo{"rval", RegKind::Rval}); }

int RegTable::slot(const std::string& name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i)
    if (regs_[i].name == name) return static_cast<int>(i);
  return -1;
}

int RegTable::add(const std::string& name, RegKind kind) {
  if (slot(name) >= 0) throw InputError("duplicate register '" + name + "'");
  regs_.push_back(RegInfo{name, kind});
  return static_cast<int>(regs_.size() - 1);
}

int RegTable::ensure(const std::string& name, RegKind kind) {
  int s = slot(name);
  return s >= 0 ? s : add(name, kind);
}

const Value& LocalState::get(int slot) const {
  if (slot < 0 || static_cast<std::size_t>(slot) >= values_.size()) throw Error("unbound local variable");
  return values_[slot];
}

void LocalState::set(int slot, Value v) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= values_.size()) throw Error("unbound local variable");
  values_[slot] = v;
}

// ---------------------------------------------------------------------------
// Expressions

ExprPtr Expr::literal(Value v) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Lit;
  e->lit = v;
  return e;
}

ExprPtr Expr::reg(std::string name, int slot) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Reg;
  e->name = std::move(name);
  e->slot = slot;
  return e;
}

ExprPtr Expr::unary(ExprOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  return e;
}

ExprPtr Expr::binary(ExprOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

Value eval_expr(const Expr& e, const LocalState& ls) {
  switch (e.op) {
    case ExprOp::Lit:
      return e.lit;
    case ExprOp::Reg:
      if (e.slot < 0) throw Error("unbound local variable '" + e.name + "'");
      return ls.get(e.slot);
    case ExprOp::Not:
      return Value::boolean(!eval_expr(*e.lhs, ls).truthy());
    case ExprOp::Neg:
      return Value::integer(-eval_expr(*e.lhs, ls).as_int());
    case ExprOp::Even:
      return Value::boolean(eval_expr(*e.lhs, ls).as_int() % 2 == 0);
    case ExprOp::Odd:
      return Value::boolean(eval_expr(*e.lhs, ls).as_int() % 2 != 0);
    case ExprOp::And:
      return Value::boolean(eval_expr(*e.lhs, ls).truthy() && eval_expr(*e.rhs, ls).truthy());
    case ExprOp::Or:
      return Value::boolean(eval_expr(*e.lhs, ls).truthy() || eval_expr(*e.rhs, ls).truthy());
    default:
      break;
  }
  const Value a = eval_expr(*e.lhs, ls);
  const Value b = eval_expr(*e.rhs, ls);
  switch (e.op) {
    case ExprOp::Eq:
      return Value::boolean(a == b);
    case ExprOp::Ne:
      return Value::boolean(a != b);
    case ExprOp::Add:
      return Value::integer(a.as_int() + b.as_int());
    case ExprOp::Sub:
      return Value::integer(a.as_int() - b.as_int());
    case ExprOp::Mul:
      return Value::integer(a.as_int() * b.as_int());
    case ExprOp::Lt:
      return Value::boolean(a.as_int() < b.as_int());
    case ExprOp::Le:
      return Value::boolean(a.as_int() <= b.as_int());
    case ExprOp::Gt:
      return Value::boolean(a.as_int() > b.as_int());
    case ExprOp::Ge:
      return Value::boolean(a.as_int() >= b.as_int());
    default:
      throw Error("bad expression");
  }
}

// ---------------------------------------------------------------------------
// Command constructors

const char* method_name(Method m) {
  switch (m) {
    case Method::Acquire:
      return "acquire";
    case Method::Release:
      return "release";
    case Method::Enq:
      return "enq";
    case Method::Deq:
      return "deq";
  }
  return "?";
}

namespace {

std::shared_ptr<Cmd> make(CmdKind k) {
  auto c = std::make_shared<Cmd>();
  c->kind = k;
  return c;
}

}  // namespace

CmdPtr Cmd::skip() {
  static const CmdPtr s = make(CmdKind::Skip);
  return s;
}

CmdPtr Cmd::done(Value v) {
  auto c = make(CmdKind::Done);
  c->value = v;
  return c;
}

CmdPtr Cmd::assign(std::string reg, ExprPtr e) {
  auto c = make(CmdKind::Assign);
  c->reg_name = std::move(reg);
  c->e1 = std::move(e);
  return c;
}

CmdPtr Cmd::assign_call(std::string reg, CmdPtr hole) {
  auto c = make(CmdKind::Assign);
  c->reg_name = std::move(reg);
  c->hole = std::move(hole);
  return c;
}

CmdPtr Cmd::write(std::string var, VarId x, ExprPtr e, bool release) {
  auto c = make(CmdKind::Write);
  c->var_name = std::move(var);
  c->var = x;
  c->e1 = std::move(e);
  c->sync = release;
  return c;
}

CmdPtr Cmd::read(std::string reg, std::string var, VarId x, bool acquire) {
  auto c = make(CmdKind::Read);
  c->reg_name = std::move(reg);
  c->var_name = std::move(var);
  c->var = x;
  c->sync = acquire;
  return c;
}

CmdPtr Cmd::cas(std::string reg, std::string var, VarId x, ExprPtr expected, ExprPtr desired) {
  auto c = make(CmdKind::Cas);
  c->reg_name = std::move(reg);
  c->var_name = std::move(var);
  c->var = x;
  c->e1 = std::move(expected);
  c->e2 = std::move(desired);
  return c;
}

CmdPtr Cmd::fai(std::string reg, std::string var, VarId x) {
  auto c = make(CmdKind::Fai);
  c->reg_name = std::move(reg);
  c->var_name = std::move(var);
  c->var = x;
  return c;
}

CmdPtr Cmd::call_hole(ObjCall call) {
  auto c = make(CmdKind::Hole);
  c->call = std::move(call);
  return c;
}

CmdPtr Cmd::body_hole(ObjCall call, CmdPtr body, ExprPtr ret) {
  auto c = make(CmdKind::Hole);
  c->call = std::move(call);
  c->c1 = std::move(body);
  c->e2 = ret ? std::move(ret) : Expr::literal(Value::bot());
  return c;
}

CmdPtr Cmd::seq(CmdPtr a, CmdPtr b) {
  auto c = make(CmdKind::Seq);
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return c;
}

CmdPtr Cmd::if_(ExprPtr cond, CmdPtr then_branch, CmdPtr else_branch) {
  auto c = make(CmdKind::If);
  c->e1 = std::move(cond);
  c->c1 = std::move(then_branch);
  c->c2 = else_branch ? std::move(else_branch) : Cmd::skip();
  return c;
}

CmdPtr Cmd::if_call(CmdPtr hole, CmdPtr then_branch, CmdPtr else_branch) {
  auto c = make(CmdKind::If);
  c->hole = std::move(hole);
  c->c1 = std::move(then_branch);
  c->c2 = else_branch ? std::move(else_branch) : Cmd::skip();
  return c;
}

CmdPtr Cmd::while_(ExprPtr cond, CmdPtr body) {
  auto c = make(CmdKind::While);
  c->e1 = std::move(cond);
  c->c1 = std::move(body);
  return c;
}

CmdPtr Cmd::do_until(CmdPtr body, ExprPtr cond) {
  auto c = make(CmdKind::DoUntil);
  c->c1 = std::move(body);
  c->e1 = std::move(cond);
  return c;
}

CmdPtr Cmd::labelled(int label, CmdPtr body) {
  auto c = make(CmdKind::Labelled);
  c->label = label;
  c->c1 = std::move(body);
  return c;
}

CmdPtr sequence(const std::vector<CmdPtr>& cmds) {
  if (cmds.empty()) return Cmd::skip();
  CmdPtr out = cmds.back();
  for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it) out = Cmd::seq(*it, out);
  return out;
}

bool is_terminated(const Cmd& c) {
  switch (c.kind) {
    case CmdKind::Skip:
    case CmdKind::Done:
      return true;
    case CmdKind::Labelled:
      return is_terminated(*c.c1);
    default:
      return false;
  }
}

std::optional<int> program_counter(const Cmd& c) {
  switch (c.kind) {
    case CmdKind::Labelled:
      return c.label;
    case CmdKind::Seq:
      if (auto pc = program_counter(*c.c1)) return pc;
      if (is_terminated(*c.c1)) return program_counter(*c.c2);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Thread-local transitions

namespace {

std::shared_ptr<Cmd> clone(const Cmd& c) { return std::make_shared<Cmd>(c); }

LocalSucc silent(CmdPtr next, LocalState ls, Component comp = Component::Client) {
  LocalSucc s;
  s.label.component = comp;
  s.next = std::move(next);
  s.ls = std::move(ls);
  return s;
}

LocalSucc visible(Action a, CmdPtr next, LocalState ls) {
  LocalSucc s;
  s.label.action = a;
  s.next = std::move(next);
  s.ls = std::move(ls);
  return s;
}

template <typename Wrap>
std::vector<LocalSucc> wrap_all(std::vector<LocalSucc> inner, Wrap wrap) {
  for (auto& s : inner) s.next = wrap(s.next);
  return inner;
}

}  // namespace

std::vector<LocalSucc> local_step(const CmdPtr& cp, const LocalState& ls, const ValueOracle& values) {
  const Cmd& c = *cp;
  std::vector<LocalSucc> out;
  switch (c.kind) {
    case CmdKind::Skip:
    case CmdKind::Done:
      return out;

    case CmdKind::Labelled: {
      auto inner = local_step(c.c1, ls, values);
      for (auto& s : inner) {
        if (!program_counter(*s.next)) s.next = Cmd::labelled(c.label, s.next);
      }
      return inner;
    }

    case CmdKind::Assign: {
      if (c.e1) {
        LocalState next = ls;
        next.set(c.reg, eval_expr(*c.e1, ls));
        out.push_back(silent(Cmd::skip(), std::move(next)));
        return out;
      }
      if (c.hole->kind == CmdKind::Done) {
        LocalState next = ls;
        next.set(c.reg, c.hole->value);
        out.push_back(silent(Cmd::skip(), std::move(next)));
        return out;
      }
      return wrap_all(local_step(c.hole, ls, values), [&](const CmdPtr& h) {
        auto n = clone(c);
        n->hole = h;
        return CmdPtr(n);
      });
    }

    case CmdKind::Write:
      out.push_back(visible(Action::write(c.var, eval_expr(*c.e1, ls), c.sync), Cmd::skip(), ls));
      return out;

    case CmdKind::Read:
      for (const Value& v : values(c.var)) {
        LocalState next = ls;
        next.set(c.reg, v);
        out.push_back(visible(Action::read(c.var, v, c.sync), Cmd::skip(), std::move(next)));
      }
      return out;

    case CmdKind::Cas: {
      const Value u = eval_expr(*c.e1, ls);
      const Value v = eval_expr(*c.e2, ls);
      LocalState ok = ls;
      ok.set(c.reg, Value::boolean(true));
      out.push_back(visible(Action::update(c.var, u, v), Cmd::skip(), std::move(ok)));
      for (const Value& other : values(c.var)) {
        if (other == u) continue;
        LocalState fail = ls;
        fail.set(c.reg, Value::boolean(false));
        out.push_back(visible(Action::read(c.var, other), Cmd::skip(), std::move(fail)));
      }
      return out;
    }

    case CmdKind::Fai:
      for (const Value& u : values(c.var)) {
        if (!u.is_int()) continue;
        LocalState next = ls;
        next.set(c.reg, u);
        out.push_back(
            visible(Action::update(c.var, u, Value::integer(u.as_int() + 1)), Cmd::skip(), std::move(next)));
      }
      return out;

    case CmdKind::Hole: {
      if (c.pending) return out;
      if (!c.c1) {
        LocalSucc s;
        s.label.component = Component::Library;
        s.label.call = c.call;
        auto n = clone(c);
        n->pending = true;
        s.next = n;
        s.ls = ls;
        out.push_back(std::move(s));
        return out;
      }
      if (is_terminated(*c.c1)) {
        const Value r = eval_expr(*c.e2, ls);
        LocalState next = ls;
        next.set(kRvalSlot, r);
        out.push_back(silent(Cmd::done(r), std::move(next), Component::Library));
        return out;
      }
      auto inner = local_step(c.c1, ls, values);
      for (auto& s : inner) {
        s.label.component = Component::Library;
        auto n = clone(c);
        n->c1 = s.next;
        s.next = n;
      }
      return inner;
    }

    case CmdKind::Seq:
      if (is_terminated(*c.c1)) {
        out.push_back(silent(c.c2, ls));
        return out;
      }
      return wrap_all(local_step(c.c1, ls, values), [&](const CmdPtr& first) { return Cmd::seq(first, c.c2); });

    case CmdKind::If: {
      if (c.e1) {
        out.push_back(silent(eval_expr(*c.e1, ls).truthy() ? c.c1 : c.c2, ls));
        return out;
      }
      if (c.hole->kind == CmdKind::Done) {
        out.push_back(silent(c.hole->value.truthy() ? c.c1 : c.c2, ls));
        return out;
      }
      return wrap_all(local_step(c.hole, ls, values), [&](const CmdPtr& h) {
        auto n = clone(c);
        n->hole = h;
        return CmdPtr(n);
      });
    }

    case CmdKind::While:
      out.push_back(silent(eval_expr(*c.e1, ls).truthy() ? Cmd::seq(c.c1, cp) : Cmd::skip(), ls));
      return out;

    case CmdKind::DoUntil:
      out.push_back(silent(Cmd::seq(c.c1, Cmd::while_(Expr::unary(ExprOp::Not, c.e1), c.c1)), ls));
      return out;
  }
  return out;
}

std::pair<CmdPtr, LocalState> silent_closure(CmdPtr c, LocalState ls, std::size_t limit) {
  static const ValueOracle no_values = [](VarId) { return std::vector<Value>{}; };
  for (std::size_t i = 0; i < limit; ++i) {
    auto succ = local_step(c, ls, no_values);
    if (succ.size() != 1 || !succ.front().label.silent()) return {c, ls};
    c = succ.front().next;
    ls = std::move(succ.front().ls);
  }
  throw Error("thread diverges without visible steps");
}

namespace {

// Applies `f` to the first hole in execution order satisfying `pred`.
// Returns nullptr when no such hole exists.
CmdPtr rewrite_first_hole(const CmdPtr& cp, const std::function<bool(const Cmd&)>& pred,
                          const std::function<CmdPtr(const Cmd&)>& f) {
  const Cmd& c = *cp;
  switch (c.kind) {
    case CmdKind::Hole:
      return pred(c) ? f(c) : nullptr;
    case CmdKind::Assign:
      if (c.hole)
        if (auto h = rewrite_first_hole(c.hole, pred, f)) {
          auto n = clone(c);
          n->hole = h;
          return n;
        }
      return nullptr;
    case CmdKind::If: {
      if (c.hole)
        if (auto h = rewrite_first_hole(c.hole, pred, f)) {
          auto n = clone(c);
          n->hole = h;
          return n;
        }
      if (auto t = rewrite_first_hole(c.c1, pred, f)) {
        auto n = clone(c);
        n->c1 = t;
        return n;
      }
      if (auto e = rewrite_first_hole(c.c2, pred, f)) {
        auto n = clone(c);
        n->c2 = e;
        return n;
      }
      return nullptr;
    }
    case CmdKind::Seq: {
      if (auto a = rewrite_first_hole(c.c1, pred, f)) return Cmd::seq(a, c.c2);
      if (auto b = rewrite_first_hole(c.c2, pred, f)) return Cmd::seq(c.c1, b);
      return nullptr;
    }
    case CmdKind::While:
    case CmdKind::DoUntil:
    case CmdKind::Labelled:
      if (auto b = rewrite_first_hole(c.c1, pred, f)) {
        auto n = clone(c);
        n->c1 = b;
        return n;
      }
      return nullptr;
    default:
      return nullptr;
  }
}

CmdPtr apply_fill(const Cmd& hole, const HoleFill& d) {
  switch (d.kind) {
    case HoleFill::Kind::Value:
      return Cmd::done(d.value);
    case HoleFill::Kind::Bot:
      return Cmd::done(Value::bot());
    case HoleFill::Kind::Command:
      return Cmd::body_hole(hole.call, d.body, d.ret);
  }
  return nullptr;
}

bool unfilled(const Cmd& h) { return !h.c1 && !h.pending; }

}  // namespace

std::pair<CmdPtr, LocalState> complete_call(const CmdPtr& c, const LocalState& ls, const CallResult& r) {
  auto out = rewrite_first_hole(
      c, [](const Cmd& h) { return h.pending; }, [&](const Cmd&) { return Cmd::done(r.value); });
  if (!out) throw Error("complete_call: no pending call");
  LocalState next = ls;
  next.set(kRvalSlot, r.value);
  // find the call to learn its version register
  const Cmd* pending = nullptr;
  std::function<void(const Cmd&)> find = [&](const Cmd& n) {
    if (pending) return;
    if (n.kind == CmdKind::Hole && n.pending) {
      pending = &n;
      return;
    }
    for (const CmdPtr& k : {n.hole, n.c1, n.c2})
      if (k) find(*k);
  };
  find(*c);
  if (pending && pending->call.version_slot >= 0 && r.version >= 0)
    next.set(pending->call.version_slot, Value::integer(r.version));
  return {out, next};
}

CmdPtr fill_hole(const CmdPtr& c, const HoleFill& d) {
  auto out = rewrite_first_hole(c, unfilled, [&](const Cmd& h) { return apply_fill(h, d); });
  if (!out) throw Error("fill_hole: program has no hole");
  return out;
}

CmdPtr fill_all_holes(const CmdPtr& c, const std::function<HoleFill(const ObjCall&)>& body_for) {
  CmdPtr cur = c;
  while (auto next = rewrite_first_hole(cur, unfilled, [&](const Cmd& h) { return apply_fill(h, body_for(h.call)); }))
    cur = next;
  return cur;
}

CmdPtr desugar(const CmdPtr& cp) {
  if (!cp) return cp;
  const Cmd& c = *cp;
  switch (c.kind) {
    case CmdKind::DoUntil: {
      CmdPtr body = desugar(c.c1);
      return Cmd::seq(body, Cmd::while_(Expr::unary(ExprOp::Not, c.e1), body));
    }
    case CmdKind::Seq:
      return Cmd::seq(desugar(c.c1), desugar(c.c2));
    case CmdKind::If:
    case CmdKind::While:
    case CmdKind::Labelled:
    case CmdKind::Hole: {
      auto n = clone(c);
      n->c1 = desugar(c.c1);
      n->c2 = desugar(c.c2);
      return n;
    }
    default:
      return cp;
  }
}

namespace {

ExprPtr resolve_expr(const ExprPtr& e, RegTable& regs, RegKind kind) {
  if (!e) return e;
  if (e->op == ExprOp::Reg) return Expr::reg(e->name, regs.ensure(e->name, kind));
  if (e->op == ExprOp::Lit) return e;
  auto n = std::make_shared<Expr>(*e);
  n->lhs = resolve_expr(e->lhs, regs, kind);
  n->rhs = resolve_expr(e->rhs, regs, kind);
  return n;
}

}  // namespace

CmdPtr resolve_registers(const CmdPtr& cp, RegTable& regs, RegKind kind) {
  if (!cp) return cp;
  auto n = clone(*cp);
  if (!n->reg_name.empty()) {
    n->reg = regs.ensure(n->reg_name, kind);
    if (regs[n->reg].kind == RegKind::Ghost) regs.at(n->reg).kind = kind;
  }
  n->e1 = resolve_expr(n->e1, regs, kind);
  if (n->kind != CmdKind::Hole || n->c1) n->e2 = resolve_expr(n->e2, regs, kind);
  if (n->kind == CmdKind::Hole) {
    n->call.arg = resolve_expr(n->call.arg, regs, kind);
    if (!n->call.version_reg.empty()) {
      const int existing = regs.slot(n->call.version_reg);
      n->call.version_slot = existing >= 0 ? existing : regs.add(n->call.version_reg, RegKind::Ghost);
    }
  }
  n->c1 = resolve_registers(n->c1, regs, kind);
  n->c2 = resolve_registers(n->c2, regs, kind);
  n->hole = resolve_registers(n->hole, regs, kind);
  return n;
}

namespace {

void collect_expr_literals(const ExprPtr& e, std::vector<Value>& out) {
  if (!e) return;
  if (e->op == ExprOp::Lit) out.push_back(e->lit);
  collect_expr_literals(e->lhs, out);
  collect_expr_literals(e->rhs, out);
}

}  // namespace

void collect_literals(const Cmd& c, std::vector<Value>& out) {
  if (c.kind == CmdKind::Done) out.push_back(c.value);
  collect_expr_literals(c.e1, out);
  collect_expr_literals(c.e2, out);
  collect_expr_literals(c.call.arg, out);
  for (const CmdPtr& k : {c.c1, c.c2, c.hole})
    if (k) collect_literals(*k, out);
}

// ---------------------------------------------------------------------------
// Equality, serialisation, printing

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return a->op == b->op && a->lit == b->lit && a->name == b->name && same_expr(a->lhs, b->lhs) &&
         same_expr(a->rhs, b->rhs);
}

bool same_cmd(const CmdPtr& a, const CmdPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  if (a->kind == CmdKind::Skip) return true;
  return a->value == b->value && a->reg_name == b->reg_name && a->var_name == b->var_name && a->sync == b->sync &&
         same_expr(a->e1, b->e1) && same_expr(a->e2, b->e2) && same_cmd(a->c1, b->c1) && same_cmd(a->c2, b->c2) &&
         same_cmd(a->hole, b->hole) && a->call.obj_name == b->call.obj_name && a->call.method == b->call.method &&
         same_expr(a->call.arg, b->call.arg) && a->call.version_reg == b->call.version_reg &&
         a->pending == b->pending && a->label == b->label;
}

namespace {

void put_int(std::string& out, std::int64_t v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof v);
}

void serialize_value(const Value& v, std::string& out) {
  out.push_back(static_cast<char>(v.kind()));
  if (v.is_int() || v.is_bool()) put_int(out, v.is_int() ? v.as_int() : v.as_bool());
}

void serialize_expr(const ExprPtr& e, std::string& out) {
  if (!e) {
    out.push_back('\xff');
    return;
  }
  out.push_back(static_cast<char>(e->op));
  if (e->op == ExprOp::Lit) serialize_value(e->lit, out);
  if (e->op == ExprOp::Reg) put_int(out, e->slot);
  if (e->lhs) serialize_expr(e->lhs, out);
  if (e->rhs) serialize_expr(e->rhs, out);
}

}  // namespace

void serialize_cmd(const Cmd& c, std::string& out) {
  out.push_back(static_cast<char>(c.kind));
  switch (c.kind) {
    case CmdKind::Skip:
      return;
    case CmdKind::Done:
      serialize_value(c.value, out);
      return;
    case CmdKind::Labelled:
      put_int(out, c.label);
      serialize_cmd(*c.c1, out);
      return;
    case CmdKind::Hole:
      out.push_back(static_cast<char>(c.call.method));
      put_int(out, c.call.obj);
      out.push_back(c.pending ? 'p' : (c.c1 ? 'b' : 'a'));
      if (c.c1) serialize_cmd(*c.c1, out);
      return;
    default:
      break;
  }
  put_int(out, c.reg);
  put_int(out, c.var);
  out.push_back(c.sync ? 1 : 0);
  serialize_expr(c.e1, out);
  serialize_expr(c.e2, out);
  for (const CmdPtr& k : {c.hole, c.c1, c.c2}) {
    if (k)
      serialize_cmd(*k, out);
    else
      out.push_back('\xfe');
  }
}

namespace {

const char* binop_text(ExprOp op) {
  switch (op) {
    case ExprOp::Add:
      return "+";
    case ExprOp::Sub:
      return "-";
    case ExprOp::Mul:
      return "*";
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
    case ExprOp::And:
      return "&&";
    case ExprOp::Or:
      return "||";
    default:
      return "?";
  }
}

std::string print_call(const ObjCall& call) {
  std::string s = call.obj_name + "." + method_name(call.method) + "(";
  if (call.arg) s += print_expr(*call.arg);
  if (!call.version_reg.empty()) s += call.version_reg;
  return s + ")";
}

std::string print_hole(const Cmd& h) {
  if (h.kind == CmdKind::Done) return "done(" + h.value.to_string() + ")";
  return print_call(h.call);
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

std::string block(const Cmd& c, int indent, const LabelNote& note) {
  return "{\n" + print_cmd(c, indent + 1, note) + "\n" + pad(indent) + "}";
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.op) {
    case ExprOp::Lit:
      return e.lit.to_string();
    case ExprOp::Reg:
      return e.name;
    case ExprOp::Not:
      return "!(" + print_expr(*e.lhs) + ")";
    case ExprOp::Neg:
      return "-(" + print_expr(*e.lhs) + ")";
    case ExprOp::Even:
      return "even(" + print_expr(*e.lhs) + ")";
    case ExprOp::Odd:
      return "odd(" + print_expr(*e.lhs) + ")";
    default:
      return "(" + print_expr(*e.lhs) + " " + binop_text(e.op) + " " + print_expr(*e.rhs) + ")";
  }
}

std::string print_cmd(const Cmd& c, int indent, const LabelNote& note) {
  const std::string p = pad(indent);
  switch (c.kind) {
    case CmdKind::Skip:
      return p + "skip";
    case CmdKind::Done:
      return p + "done(" + c.value.to_string() + ")";
    case CmdKind::Assign:
      return p + c.reg_name + " := " + (c.e1 ? print_expr(*c.e1) : print_hole(*c.hole));
    case CmdKind::Write:
      return p + c.var_name + (c.sync ? " :=R " : " := ") + print_expr(*c.e1);
    case CmdKind::Read:
      return p + c.reg_name + (c.sync ? " <-A " : " <- ") + c.var_name;
    case CmdKind::Cas:
      return p + c.reg_name + " <- CAS(" + c.var_name + ", " + print_expr(*c.e1) + ", " + print_expr(*c.e2) + ")";
    case CmdKind::Fai:
      return p + c.reg_name + " <- FAI(" + c.var_name + ")";
    case CmdKind::Hole:
      if (c.c1) return p + print_call(c.call) + " " + block(*c.c1, indent, note);
      return p + print_call(c.call);
    case CmdKind::Seq:
      return print_cmd(*c.c1, indent, note) + ";\n" + print_cmd(*c.c2, indent, note);
    case CmdKind::If: {
      std::string s = p + "if " + (c.e1 ? print_expr(*c.e1) : print_hole(*c.hole)) + " then " + block(*c.c1, indent, note);
      if (c.c2 && c.c2->kind != CmdKind::Skip) s += " else " + block(*c.c2, indent, note);
      return s;
    }
    case CmdKind::While:
      return p + "while " + print_expr(*c.e1) + " do " + block(*c.c1, indent, note);
    case CmdKind::DoUntil:
      return p + "do " + block(*c.c1, indent, note) + " until " + print_expr(*c.e1);
    case CmdKind::Labelled: {
      std::string head = p + std::to_string(c.label) + ": ";
      if (note) {
        const std::string n = note(c.label);
        if (!n.empty()) head += "{ " + n + " } ";
      }
      return head + print_cmd(*c.c1, indent, note).substr(p.size());
    }
  }
  return p + "?";
}

}  // namespace viewcheck
