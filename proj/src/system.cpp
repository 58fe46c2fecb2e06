#include "viewcheck/system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "viewcheck/error.hpp"
#include "viewcheck/memory.hpp"
#include "viewcheck/objects.hpp"

namespace viewcheck {

int System::thread_index(ThreadId id) const {
  for (std::size_t i = 0; i < threads.size(); ++i)
    if (threads[i].id == id) return static_cast<int>(i);
  return -1;
}

std::optional<RegRef> System::find_register(const std::string& name) const {
  std::optional<RegRef> found;
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const int s = threads[i].regs.slot(name);
    if (s <= kRvalSlot) continue;
    if (found) throw InputError("register '" + name + "' is used by more than one thread");
    found = RegRef{static_cast<int>(i), s, name};
  }
  return found;
}

Configuration initial_configuration(const System& sys) {
  std::vector<ThreadId> ids;
  for (const auto& t : sys.threads) ids.push_back(t.id);
  InitialStates init = make_init_states(sys.vars, sys.init, ids);

  Configuration cfg;
  cfg.client = std::move(init.client);
  cfg.library = std::move(init.library);
  for (const auto& t : sys.threads) cfg.threads.push_back(ThreadState{t.program, LocalState(t.regs.size())});
  for (const auto& r : sys.reg_init) cfg.threads.at(r.thread).ls.set(r.slot, r.value);
  for (auto& t : cfg.threads) std::tie(t.prog, t.ls) = silent_closure(t.prog, t.ls);
  return cfg;
}

bool is_terminal(const Configuration& cfg) {
  return std::all_of(cfg.threads.begin(), cfg.threads.end(), [](const ThreadState& t) { return is_terminated(*t.prog); });
}

namespace {

using RankMap = std::map<Timestamp, std::int64_t>;

RankMap ranks(const ComponentState& s) {
  RankMap m;
  for (const auto& op : s.ops()) m.emplace(op.ts, 0);
  std::int64_t i = 0;
  for (auto& [ts, r] : m) r = i++;
  return m;
}

Timestamp rank_of(const RankMap& m, const Timestamp& ts) {
  auto it = m.find(ts);
  if (it == m.end()) throw Error("view refers to a timestamp with no op");
  return Timestamp(it->second);
}

View remap_view(const View& v, const VarTable& vars, const RankMap& client, const RankMap& library) {
  View out(v.size());
  for (VarId x = 0; x < v.size(); ++x)
    if (v.defined(x)) out.set(x, rank_of(vars.component(x) == Component::Client ? client : library, v.at(x)));
  return out;
}

ComponentState remap(const ComponentState& s, const VarTable& vars, const RankMap& own, const RankMap& client,
                     const RankMap& library) {
  ComponentState out(s.nvars());
  for (const auto& op : s.ops())
    out.add_op(OpRecord{op.action, rank_of(own, op.ts), remap_view(op.mview, vars, client, library), op.covered});
  for (const auto& [t, v] : s.tviews()) out.set_tview(t, remap_view(v, vars, client, library));
  for (const auto& [a, b] : s.matched()) out.add_matched(rank_of(own, a), rank_of(own, b));
  return out;
}

void put(std::string& out, std::int64_t v) { out.append(reinterpret_cast<const char*>(&v), sizeof v); }

void put_ts(std::string& out, const Timestamp& ts) {
  put(out, ts.num());
  put(out, ts.den());
}

void put_value(std::string& out, const Value& v) {
  out.push_back(static_cast<char>(v.kind()));
  if (v.is_int()) put(out, v.as_int());
  if (v.is_bool()) out.push_back(v.as_bool() ? 1 : 0);
}

void put_view(std::string& out, const View& v) {
  for (VarId x = 0; x < v.size(); ++x) {
    if (!v.defined(x)) {
      out.push_back(0);
      continue;
    }
    out.push_back(1);
    put_ts(out, v.at(x));
  }
}

void put_component(std::string& out, const ComponentState& s) {
  put(out, static_cast<std::int64_t>(s.ops().size()));
  for (const auto& op : s.ops()) {
    const Action& a = op.action;
    out.push_back(static_cast<char>(a.kind));
    put(out, a.var);
    put_value(out, a.value);
    put_value(out, a.value2);
    out.push_back(static_cast<char>(a.sync));
    put(out, a.owner);
    put(out, a.index);
    put_ts(out, op.ts);
    out.push_back(op.covered ? 1 : 0);
    put_view(out, op.mview);
  }
  for (const auto& [t, v] : s.tviews()) {
    put(out, t);
    put_view(out, v);
  }
  out.push_back('|');
  for (const auto& [a, b] : s.matched()) {
    put_ts(out, a);
    put_ts(out, b);
  }
  out.push_back('|');
}

}  // namespace

Configuration canonicalize(const Configuration& cfg, const VarTable& vars) {
  const RankMap client = ranks(cfg.client);
  const RankMap library = ranks(cfg.library);
  Configuration out;
  out.threads = cfg.threads;
  out.client = remap(cfg.client, vars, client, client, library);
  out.library = remap(cfg.library, vars, library, client, library);
  return out;
}

std::string canonical_key(const Configuration& cfg, const VarTable& vars) {
  const Configuration c = canonicalize(cfg, vars);
  std::string out;
  for (const auto& t : c.threads) {
    serialize_cmd(*t.prog, out);
    for (const Value& v : t.ls.values()) put_value(out, v);
    out.push_back('#');
  }
  put_component(out, c.client);
  put_component(out, c.library);
  return out;
}

namespace {

std::vector<Value> written_values(const ComponentState& s, VarId x) {
  std::vector<Value> out;
  for (const auto& op : s.ops())
    if (op.action.var == x && op.action.is_write()) {
      const Value v = op.action.wrval();
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Step> thread_successors(const System& sys, const Configuration& cfg, int i) {
  std::vector<Step> out;
  const ThreadState& ts = cfg.threads.at(i);
  const ThreadId tid = sys.threads.at(i).id;
  const ValueOracle oracle = [&](VarId x) { return written_values(cfg.side(sys.vars.component(x)), x); };

  auto emit = [&](Component comp, const Action& a, ComponentState client, ComponentState library, CmdPtr prog,
                  LocalState ls) {
    Step s;
    s.thread = i;
    s.component = comp;
    s.action = a;
    s.next.threads = cfg.threads;
    s.next.client = std::move(client);
    s.next.library = std::move(library);
    auto [p, l] = silent_closure(std::move(prog), std::move(ls));
    s.next.threads[i] = ThreadState{std::move(p), std::move(l)};
    out.push_back(std::move(s));
  };

  for (LocalSucc& ls : local_step(ts.prog, ts.ls, oracle)) {
    if (ls.label.call) {
      const ObjCall& call = *ls.label.call;
      const Value arg = call.arg ? eval_expr(*call.arg, ts.ls) : Value::bot();
      for (ObjSucc& o : object_step(cfg.library, cfg.client, tid, sys.vars[call.obj].kind, call, arg)) {
        auto [prog, l] = complete_call(ls.next, ls.ls, o.result);
        emit(Component::Library, o.action, std::move(o.client), std::move(o.lib), std::move(prog), std::move(l));
      }
      continue;
    }
    if (!ls.label.action) {
      // Only reachable when a caller skipped the silent closure.
      Step s;
      s.thread = i;
      s.component = ls.label.component;
      s.next = cfg;
      auto [p, l] = silent_closure(ls.next, ls.ls);
      s.next.threads[i] = ThreadState{std::move(p), std::move(l)};
      auto inner = thread_successors(sys, s.next, i);
      out.insert(out.end(), std::make_move_iterator(inner.begin()), std::make_move_iterator(inner.end()));
      continue;
    }
    const Action& a = *ls.label.action;
    const Component comp = sys.vars.component(a.var);
    if (comp != ls.label.component)
      throw InputError(std::string(comp == Component::Client ? "library code" : "client code") + " accesses '" +
                       sys.vars.name(a.var) + "'");
    const ComponentState& exec = cfg.side(comp);
    const ComponentState& ctx = cfg.side(comp == Component::Client ? Component::Library : Component::Client);
    for (MemSucc& m : mem_step(exec, ctx, tid, a)) {
      if (comp == Component::Client)
        emit(comp, a, std::move(m.exec), std::move(m.ctx), ls.next, ls.ls);
      else
        emit(comp, a, std::move(m.ctx), std::move(m.exec), ls.next, ls.ls);
    }
  }
  return out;
}

std::vector<Step> successors(const System& sys, const Configuration& cfg) {
  std::vector<Step> out;
  for (std::size_t i = 0; i < cfg.threads.size(); ++i) {
    auto s = thread_successors(sys, cfg, static_cast<int>(i));
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

std::string step_label(const System& sys, const Step& s) { return s.action.to_string(sys.vars); }

std::vector<Value> observe(const System& sys, const Configuration& cfg) {
  std::vector<Value> out;
  for (const RegRef& r : sys.observed) out.push_back(cfg.threads.at(r.thread).ls.get(r.slot));
  return out;
}

std::vector<Value> literal_domain(const System& sys) {
  std::vector<Value> out{Value::bot(), Value::boolean(false), Value::boolean(true), Value::empty()};
  for (const auto& t : sys.threads) collect_literals(*t.program, out);
  for (const auto& [x, v] : sys.init) out.push_back(v);
  for (const auto& r : sys.reg_init) out.push_back(r.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace viewcheck
