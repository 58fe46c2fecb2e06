#include "viewcheck/refinement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "viewcheck/error.hpp"

namespace viewcheck {

namespace {

ExprPtr reg(const std::string& obj, const char* name) { return Expr::reg(obj + "." + name); }
ExprPtr lit(std::int64_t n) { return Expr::literal(Value::integer(n)); }
std::string rname(const std::string& obj, const char* name) { return obj + "." + name; }

// do { do { r <-A glb } until even(r); loc <- CAS(glb, r, r + 1) } until loc
// glb :=R r + 2
HoleFill seqlock_body(Method m, const std::string& obj, const std::vector<VarId>& v, bool release_sync) {
  const std::string glb = obj + ".glb";
  HoleFill f;
  f.kind = HoleFill::Kind::Command;
  if (m == Method::Acquire) {
    CmdPtr spin = Cmd::do_until(Cmd::read(rname(obj, "r"), glb, v[0], true), Expr::unary(ExprOp::Even, reg(obj, "r")));
    CmdPtr cas = Cmd::cas(rname(obj, "loc"), glb, v[0], reg(obj, "r"), Expr::binary(ExprOp::Add, reg(obj, "r"), lit(1)));
    f.body = Cmd::do_until(Cmd::seq(spin, cas), reg(obj, "loc"));
    f.ret = reg(obj, "loc");
  } else if (m == Method::Release) {
    f.body = Cmd::write(glb, v[0], Expr::binary(ExprOp::Add, reg(obj, "r"), lit(2)), release_sync);
    f.ret = Expr::literal(Value::bot());
  } else {
    throw InputError(std::string("a lock has no method '") + method_name(m) + "'");
  }
  return f;
}

// m_t <- FAI(nt); do { s_n <-A sn } until m_t = s_n
// sn :=R s_n + 1
HoleFill ticketlock_body(Method m, const std::string& obj, const std::vector<VarId>& v, bool release_sync) {
  const std::string nt = obj + ".nt", sn = obj + ".sn";
  HoleFill f;
  f.kind = HoleFill::Kind::Command;
  if (m == Method::Acquire) {
    CmdPtr ticket = Cmd::fai(rname(obj, "m_t"), nt, v[0]);
    CmdPtr spin = Cmd::do_until(Cmd::read(rname(obj, "s_n"), sn, v[1], true),
                                Expr::binary(ExprOp::Eq, reg(obj, "m_t"), reg(obj, "s_n")));
    f.body = Cmd::seq(ticket, spin);
    f.ret = Expr::literal(Value::boolean(true));
  } else if (m == Method::Release) {
    f.body = Cmd::write(sn, v[1], Expr::binary(ExprOp::Add, reg(obj, "s_n"), lit(1)), release_sync);
    f.ret = Expr::literal(Value::bot());
  } else {
    throw InputError(std::string("a lock has no method '") + method_name(m) + "'");
  }
  return f;
}

HoleFill seqlock(Method m, const std::string& o, const std::vector<VarId>& v) { return seqlock_body(m, o, v, true); }
HoleFill seqlock_relaxed(Method m, const std::string& o, const std::vector<VarId>& v) {
  return seqlock_body(m, o, v, false);
}
HoleFill ticketlock(Method m, const std::string& o, const std::vector<VarId>& v) {
  return ticketlock_body(m, o, v, true);
}
HoleFill ticketlock_relaxed(Method m, const std::string& o, const std::vector<VarId>& v) {
  return ticketlock_body(m, o, v, false);
}

}  // namespace

const std::vector<LockImplementation>& builtin_impls() {
  static const std::vector<LockImplementation> impls{
      {"seqlock", {{"glb", Value::integer(0)}}, seqlock},
      {"ticketlock", {{"nt", Value::integer(0)}, {"sn", Value::integer(0)}}, ticketlock},
      {"seqlock-relaxed", {{"glb", Value::integer(0)}}, seqlock_relaxed},
      {"ticketlock-relaxed", {{"nt", Value::integer(0)}, {"sn", Value::integer(0)}}, ticketlock_relaxed},
  };
  return impls;
}

const LockImplementation& find_impl(const std::string& name) {
  for (const auto& i : builtin_impls())
    if (i.name == name) return i;
  std::string known;
  for (const auto& i : builtin_impls()) known += (known.empty() ? "" : ", ") + i.name;
  throw InputError("unknown implementation '" + name + "' (known: " + known + ")");
}

System instantiate(const System& abs, const LockImplementation& impl) {
  System sys;
  // Lock ids are reused for the first implementation global so that every
  // client global keeps its id; the remaining globals are appended.
  std::map<VarId, std::vector<VarId>> globals;
  for (VarId x = 0; x < abs.vars.size(); ++x) {
    const VarInfo& v = abs.vars[x];
    if (v.kind == VarKind::Queue) throw InputError("no implementation is available for queue '" + v.name + "'");
    if (v.kind == VarKind::Lock) {
      globals[x].push_back(sys.vars.add(v.name + "." + impl.globals.front().first, Component::Library));
    } else {
      sys.vars.add(v.name, v.component, v.kind);
    }
  }
  for (auto& [x, ids] : globals)
    for (std::size_t g = 1; g < impl.globals.size(); ++g)
      ids.push_back(sys.vars.add(abs.vars.name(x) + "." + impl.globals[g].first, Component::Library));

  sys.init = abs.init;
  for (const auto& [x, ids] : globals)
    for (std::size_t g = 0; g < ids.size(); ++g) sys.init.emplace_back(ids[g], impl.globals[g].second);

  for (const ThreadDecl& t : abs.threads) {
    ThreadDecl d;
    d.id = t.id;
    d.regs = t.regs;
    CmdPtr filled = fill_all_holes(t.program, [&](const ObjCall& call) {
      return impl.body(call.method, call.obj_name, globals.at(call.obj));
    });
    d.program = resolve_registers(filled, d.regs, RegKind::Library);
    sys.threads.push_back(std::move(d));
  }
  sys.reg_init = abs.reg_init;
  sys.observed = abs.observed;
  sys.domain = literal_domain(sys);
  return sys;
}

void require_sync_free(const System& sys) {
  std::function<void(const Cmd&)> walk = [&](const Cmd& c) {
    const bool on_client =
        (c.kind == CmdKind::Write || c.kind == CmdKind::Read || c.kind == CmdKind::Cas || c.kind == CmdKind::Fai) &&
        sys.vars.component(c.var) == Component::Client;
    if (on_client && c.sync)
      throw InputError("client access to '" + c.var_name + "' synchronises outside the object");
    if (on_client && (c.kind == CmdKind::Cas || c.kind == CmdKind::Fai))
      throw InputError("client update of '" + c.var_name + "' synchronises outside the object");
    if (c.kind == CmdKind::Hole) return;  // object code may synchronise
    for (const CmdPtr& k : {c.c1, c.c2, c.hole})
      if (k) walk(*k);
  };
  for (const auto& t : sys.threads) walk(*t.program);
}

// ---------------------------------------------------------------------------
// Client snapshots

namespace {

void put_ts(std::string& out, const std::optional<Timestamp>& t) {
  out += t ? t->to_string() : std::string("-");
  out += ',';
}

}  // namespace

ClientSnapshot client_snapshot(const System& sys, const Configuration& cfg) {
  ClientSnapshot s;
  s.gamma = cfg.client;
  for (std::size_t i = 0; i < sys.threads.size(); ++i) {
    const RegTable& regs = sys.threads[i].regs;
    std::vector<Value> vals;
    for (std::size_t k = 0; k < regs.size(); ++k) {
      const RegKind kind = regs[static_cast<int>(k)].kind;
      if (kind == RegKind::Rval || kind == RegKind::Client) vals.push_back(cfg.threads[i].ls.get(static_cast<int>(k)));
    }
    s.regs.push_back(std::move(vals));
  }

  std::string& key = s.key;
  for (const auto& vals : s.regs) {
    for (const Value& v : vals) key += v.to_string() + ",";
    key += '|';
  }
  auto client_only = [&](const View& v) {
    for (VarId x = 0; x < v.size(); ++x)
      if (sys.vars.component(x) == Component::Client) put_ts(key, v.get(x));
  };
  for (const OpRecord& op : s.gamma.ops()) {
    key += op.action.to_string(sys.vars) + "@" + op.ts.to_string() + (op.covered ? "c" : "") + "[";
    client_only(op.mview);
    key += "]";
  }
  key += '|';
  for (const auto& [t, v] : s.gamma.tviews()) {
    key += std::to_string(t) + ":";
    client_only(v);
  }
  return s;
}

ClientTrace project_and_destutter(const System& sys, const std::vector<Configuration>& execution) {
  ClientTrace out;
  for (const Configuration& cfg : execution) {
    ClientSnapshot s = client_snapshot(sys, canonicalize(cfg, sys.vars));
    if (out.empty() || !(out.back() == s)) out.push_back(std::move(s));
  }
  return out;
}

namespace {

using OpId = std::pair<Action, std::size_t>;  // action and position on its variable

std::vector<OpId> obs_ids(const ComponentState& s, ThreadId t, VarId x) {
  const auto all = s.ops_on(x);
  std::vector<OpId> out;
  for (const OpRecord* op : s.observable(t, x)) {
    const auto pos = static_cast<std::size_t>(std::find(all.begin(), all.end(), op) - all.begin());
    out.emplace_back(op->action, pos);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OpId> covered_ids(const ComponentState& s) {
  std::vector<OpId> out;
  std::map<VarId, std::size_t> pos;
  for (const OpRecord& op : s.ops()) {
    const std::size_t p = pos[op.action.var]++;
    if (op.covered) out.emplace_back(op.action, p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string refinement_failure(const VarTable& vars, const ClientSnapshot& abs, const ClientSnapshot& conc) {
  if (abs.regs.size() != conc.regs.size()) return "thread counts differ";
  for (std::size_t i = 0; i < abs.regs.size(); ++i)
    if (abs.regs[i] != conc.regs[i]) return "client registers of thread #" + std::to_string(i + 1) + " differ";
  if (covered_ids(abs.gamma) != covered_ids(conc.gamma)) return "covered client operations differ";
  for (const auto& [t, view] : conc.gamma.tviews()) {
    (void)view;
    for (VarId x = 0; x < vars.size(); ++x) {
      if (vars.component(x) != Component::Client || vars[x].kind != VarKind::Plain) continue;
      const auto a = obs_ids(abs.gamma, t, x);
      for (const OpId& o : obs_ids(conc.gamma, t, x))
        if (!std::binary_search(a.begin(), a.end(), o))
          return "thread " + std::to_string(t) + " may observe " + o.first.to_string(vars) + " (position " +
                 std::to_string(o.second) + " on " + vars.name(x) + ") which the abstract state hides";
    }
  }
  return {};
}

bool state_refines(const VarTable& vars, const ClientSnapshot& abs, const ClientSnapshot& conc) {
  return refinement_failure(vars, abs, conc).empty();
}

// ---------------------------------------------------------------------------
// Forward simulation

namespace {

std::string describe(const System& sys, const Edge& e) {
  return "T" + std::to_string(sys.threads[e.thread].id) + ": " + e.action.to_string(sys.vars);
}

}  // namespace

SimulationReport check_simulation(const System& abs, const System& conc, const RefineOptions& opts) {
  require_sync_free(abs);
  SimulationReport rep;
  ExploreOptions eo;
  eo.max_steps = opts.max_steps;
  eo.jobs = opts.jobs;
  eo.keep_edges = true;
  const ExploreResult A = explore(abs, eo);
  const ExploreResult C = explore(conc, eo);
  rep.abstract_states = A.states();
  rep.concrete_states = C.states();
  rep.truncated = A.truncated || C.truncated;

  std::vector<ClientSnapshot> as, cs;
  for (const auto& n : A.nodes) as.push_back(client_snapshot(abs, n.cfg));
  for (const auto& n : C.nodes) cs.push_back(client_snapshot(conc, n.cfg));

  // Candidate pairs reachable from the initial pair.
  struct Pair {
    int a, c;
    std::string failure;                 // condition (1) failure, empty when it holds
    std::vector<std::vector<int>> cand;  // per concrete edge: candidate successor pairs
  };
  std::vector<Pair> pairs;
  std::map<std::pair<int, int>, int> index;
  auto intern = [&](int a, int c) {
    auto [it, fresh] = index.emplace(std::make_pair(a, c), static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back(Pair{a, c, refinement_failure(abs.vars, as[a], cs[c]), {}});
    return it->second;
  };
  intern(0, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!pairs[p].failure.empty()) continue;
    const int a = pairs[p].a, c = pairs[p].c;
    std::vector<std::vector<int>> cand;
    for (const Edge& ce : C.edges[c]) {
      std::vector<int> out;
      if (ce.component == Component::Library) out.push_back(intern(a, ce.target));
      for (const Edge& ae : A.edges[a]) {
        if (ae.thread != ce.thread || ae.component != ce.component) continue;
        if (ce.component == Component::Client && ae.action != ce.action) continue;
        out.push_back(intern(ae.target, ce.target));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      cand.push_back(std::move(out));
    }
    pairs[p].cand = std::move(cand);
  }
  rep.candidate_pairs = pairs.size();

  // Greatest fixed point: drop pairs violating (1) or with an unmatched step.
  const std::size_t n = pairs.size();
  std::vector<char> alive(n, 1);
  std::vector<std::vector<int>> live_count(n);
  std::vector<std::vector<std::pair<int, int>>> users(n);  // q -> (p, edge)
  std::deque<int> dead;
  std::vector<int> stamp(n, -1), kill_edge(n, -1);
  int clock = 0;
  auto kill = [&](int p, int edge) {
    if (!alive[p]) return;
    alive[p] = 0;
    stamp[p] = clock++;
    kill_edge[p] = edge;
    dead.push_back(p);
  };
  for (std::size_t p = 0; p < n; ++p) {
    live_count[p].assign(pairs[p].cand.size(), 0);
    for (std::size_t k = 0; k < pairs[p].cand.size(); ++k) {
      live_count[p][k] = static_cast<int>(pairs[p].cand[k].size());
      for (int q : pairs[p].cand[k]) users[q].emplace_back(static_cast<int>(p), static_cast<int>(k));
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (!pairs[p].failure.empty()) kill(static_cast<int>(p), -1);
    for (std::size_t k = 0; k < live_count[p].size(); ++k)
      if (live_count[p][k] == 0) kill(static_cast<int>(p), static_cast<int>(k));
  }
  while (!dead.empty()) {
    const int q = dead.front();
    dead.pop_front();
    for (auto [p, k] : users[q])
      if (--live_count[p][k] == 0) kill(p, k);
  }
  rep.relation_size = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  rep.found = alive[0] != 0;

  if (!rep.found) {
    // Replay the loss: follow the concrete step that defeated each pair,
    // letting the abstract side answer with the response that survived
    // longest, until a pair fails condition (1) or a step has no answer.
    std::vector<WitnessStep> path;
    int p = 0;
    for (;;) {
      const Pair& pr = pairs[p];
      if (kill_edge[p] < 0) {
        rep.detail = pr.failure;
        break;
      }
      const Edge& ce = C.edges[pr.c][kill_edge[p]];
      path.push_back(ce.via);
      const auto& cand = pr.cand[kill_edge[p]];
      if (cand.empty()) {
        rep.detail = "no abstract step matches " + describe(conc, ce);
        break;
      }
      p = *std::max_element(cand.begin(), cand.end(), [&](int x, int y) { return stamp[x] < stamp[y]; });
    }
    rep.counterexample = std::move(path);
  }

  if (opts.check_traces) {
    rep.traces_checked = true;
    rep.traces = check_trace_inclusion(abs, A, conc, C);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Trace inclusion

TraceReport check_trace_inclusion(const System& abs, const ExploreResult& A, const System& conc,
                                  const ExploreResult& C) {
  TraceReport rep;
  std::vector<ClientSnapshot> as, cs;
  for (const auto& n : A.nodes) as.push_back(client_snapshot(abs, n.cfg));
  for (const auto& n : C.nodes) cs.push_back(client_snapshot(conc, n.cfg));

  // Abstract nodes reachable by steps that leave the client snapshot unchanged.
  auto close = [&](std::set<int> s) {
    std::deque<int> work(s.begin(), s.end());
    while (!work.empty()) {
      const int a = work.front();
      work.pop_front();
      for (const Edge& e : A.edges[a])
        if (as[e.target] == as[a] && s.insert(e.target).second) work.push_back(e.target);
    }
    return s;
  };
  auto filter = [&](const std::set<int>& cands, int c) {
    std::set<int> out;
    for (int a : cands)
      if (state_refines(abs.vars, as[a], cs[c])) out.insert(a);
    return out;
  };

  struct Node {
    int c;
    std::set<int> s;
    int parent;
    WitnessStep via;
  };
  std::vector<Node> nodes;
  std::set<std::pair<int, std::set<int>>> seen;
  auto fail = [&](int from, const WitnessStep* last, std::string why) {
    std::vector<WitnessStep> path;
    if (last) path.push_back(*last);
    for (int k = from; k >= 0 && nodes[k].parent >= 0; k = nodes[k].parent) path.push_back(nodes[k].via);
    std::reverse(path.begin(), path.end());
    rep.holds = false;
    rep.counterexample = std::move(path);
    rep.detail = std::move(why);
    rep.states = nodes.size();
    return rep;
  };

  std::set<int> s0 = close(filter({0}, 0));
  if (s0.empty()) return fail(-1, nullptr, "initial client states differ");
  seen.emplace(0, s0);
  nodes.push_back(Node{0, std::move(s0), -1, {}});
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int c = nodes[k].c;
    for (const Edge& e : C.edges[c]) {
      std::set<int> next;
      if (cs[e.target] == cs[c]) {
        next = nodes[k].s;
      } else {
        std::set<int> cands = nodes[k].s;
        for (int a : nodes[k].s)
          for (const Edge& ae : A.edges[a]) cands.insert(ae.target);
        next = close(filter(cands, e.target));
        if (next.empty())
          return fail(static_cast<int>(k), &e.via, "no abstract trace matches the concrete client trace");
      }
      if (seen.emplace(e.target, next).second) nodes.push_back(Node{e.target, std::move(next), static_cast<int>(k), e.via});
    }
  }
  rep.holds = true;
  rep.states = nodes.size();
  return rep;
}

}  // namespace viewcheck
