#include "viewcheck/lock_rules.hpp"

#include <functional>

#include "viewcheck/assertion.hpp"
#include "viewcheck/error.hpp"

namespace viewcheck {

namespace {

ActionPred lock_op(ActionKind kind, int version) {
  return [kind, version](const Action& a) { return a.kind == kind && a.index == version; };
}

}  // namespace

std::vector<RuleReport> check_lock_rules(const System& sys, const ExploreResult& r, bool mutant) {
  if (r.edges.size() != r.nodes.size()) throw Error("lock rules need an exploration with keep_edges");
  std::vector<RuleReport> out(6);
  for (int i = 0; i < 6; ++i) out[i] = RuleReport{i + 1, mutant, 0, 0, {}, {}};

  std::vector<VarId> client_vars;
  for (VarId x = 0; x < sys.vars.size(); ++x)
    if (sys.vars.component(x) == Component::Client && sys.vars[x].kind == VarKind::Plain) client_vars.push_back(x);
  std::vector<Value> values;
  for (const Value& v : sys.domain)
    if (v.is_int()) values.push_back(v);

  for (std::size_t n = 0; n < r.nodes.size(); ++n) {
    if (n >= r.edges.size()) break;
    const Configuration& pre = r.nodes[n].cfg;
    for (const Edge& e : r.edges[n]) {
      const ActionKind k = e.action.kind;
      if (k != ActionKind::LockAcquire && k != ActionKind::LockRelease) continue;
      const Configuration& post = r.nodes[e.target].cfg;
      const VarId l = e.action.var;
      const ThreadId t = sys.threads[e.thread].id;
      const int v = e.action.index;
      const bool acquire = k == ActionKind::LockAcquire;
      int top = 0;
      for (const auto& op : post.library.ops())
        if (op.action.var == l) top = std::max(top, op.action.index);

      auto record = [&](int rule, bool holds, const std::string& what) {
        RuleReport& rep = out[rule - 1];
        ++rep.instances;
        if (holds) return;
        if (rep.violations++ == 0) {
          rep.witness = r.path_to(static_cast<int>(n));
          rep.witness.push_back(e.via);
          rep.detail = what;
        }
      };

      for (int u = 0; u <= top; u += 2) {
        const ActionKind rel = u == 0 ? ActionKind::LockInit : ActionKind::LockRelease;
        const ActionPred release_u = lock_op(rel, u);
        const std::string rname = "l." + std::string(u == 0 ? "init_" : "release_") + std::to_string(u);
        // (1) and (2)
        if (eval_hidden(pre.library, l, release_u)) {
          if (acquire) record(1, mutant ? v > u + 3 : v > u + 1, "cvv[" + rname + "] then acquire_" + std::to_string(v));
          const bool kept = mutant ? eval_covered(post.library, l, release_u) : eval_hidden(post.library, l, release_u);
          record(2, kept, "cvv[" + rname + "] lost by " + e.action.to_string(sys.vars));
        }
        // (3)
        if (acquire && eval_definite_op(pre.library, t, l, release_u)) {
          const int want = mutant ? u + 2 : u + 1;
          record(3, eval_definite_op(post.library, t, l, lock_op(ActionKind::LockAcquire, want)),
                 "[" + rname + "]_" + std::to_string(t) + " but not [l.acquire_" + std::to_string(want) + "]");
        }
        // (5)
        if (acquire) {
          for (VarId x : client_vars)
            for (const Value& val : values) {
              if (!eval_conditional_op(pre.library, pre.client, t, l, release_u, x, val)) continue;
              const bool guard = mutant || v == u + 1;
              record(5, !guard || eval_definite(post.client, t, x, val),
                     "<" + rname + ">[" + sys.vars.name(x) + " = " + val.to_string() + "]_" + std::to_string(t) +
                         " not transferred by acquire_" + std::to_string(v));
            }
        }
      }

      // (4): t' is the executing thread, t the observer
      for (const auto& other : sys.threads) {
        const ThreadId obs = other.id;
        if (obs == t) continue;
        for (VarId x : client_vars)
          for (const Value& val : values)
            if (eval_definite(pre.client, obs, x, val))
              record(4, eval_definite(post.client, mutant ? t : obs, x, val),
                     "[" + sys.vars.name(x) + " = " + val.to_string() + "]_" + std::to_string(mutant ? t : obs) +
                         " not established by " +
                         e.action.to_string(sys.vars));
      }

      // (6): the executing thread releases version v
      if (!acquire) {
        const ActionPred release_v = lock_op(ActionKind::LockRelease, v);
        for (const auto& other : sys.threads) {
          const ThreadId t2 = other.id;
          if (t2 == t || eval_possible_op(pre.library, t2, l, release_v)) continue;
          for (VarId x : client_vars)
            for (const Value& val : values) {
              if (!eval_definite(pre.client, t, x, val)) continue;
              const bool ok = mutant ? eval_definite(post.client, t2, x, val)
                                     : eval_conditional_op(post.library, post.client, t2, l, release_v, x, val);
              record(6, ok,
                     "release_" + std::to_string(v) + " does not carry [" + sys.vars.name(x) + " = " +
                         val.to_string() + "] to thread " + std::to_string(t2));
            }
        }
      }
    }
  }
  return out;
}

std::vector<RuleReport> check_lock_rules(const System& sys, bool mutant, int max_steps) {
  ExploreOptions o;
  o.max_steps = max_steps;
  o.keep_edges = true;
  return check_lock_rules(sys, explore(sys, o), mutant);
}

}  // namespace viewcheck
