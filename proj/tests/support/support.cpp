#include "support.hpp"

#include <algorithm>
#include <map>

#include "viewcheck/assertion.hpp"
#include "viewcheck/fifo_oracle.hpp"
#include "viewcheck/refinement.hpp"

namespace vtest {

std::string corpus(const std::string& name) { return std::string(VIEWCHECK_CORPUS_DIR) + "/" + name; }

std::string random_program(std::mt19937& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const int object = pick(3);  // 0 none, 1 lock, 2 queue
  const int nthreads = 2 + pick(2);
  std::string s = "litmus random\ninit { x = 0; y = 0 }\n";
  if (object == 1) s += "object l : lock\n";
  if (object == 2) s += "object q : queue\n";
  for (int t = 1; t <= nthreads; ++t) {
    std::vector<std::string> stmts;
    int regs = 0;
    auto reg = [&]() { return "r" + std::to_string(t) + "_" + std::to_string(++regs); };
    const int n = 2 + pick(3);
    for (int k = 0; k < n; ++k) {
      const std::string var = pick(2) ? "x" : "y";
      const std::string val = std::to_string(1 + pick(3));
      switch (pick(object == 0 ? 6 : 7)) {
        case 0:
          stmts.push_back(var + " := " + val);
          break;
        case 1:
          stmts.push_back(var + " :=R " + val);
          break;
        case 2:
          stmts.push_back(reg() + " <- " + var);
          break;
        case 3:
          stmts.push_back(reg() + " <-A " + var);
          break;
        case 4:
          stmts.push_back(reg() + " <- CAS(" + var + ", " + std::to_string(pick(3)) + ", " + val + ")");
          break;
        case 5:
          stmts.push_back(reg() + " <- FAI(" + var + ")");
          break;
        default:
          if (object == 1) {
            stmts.push_back("l.acquire()");
            stmts.push_back(var + " := " + val);
            stmts.push_back("l.release()");
          } else {
            stmts.push_back(pick(2) ? "q.enq(" + val + ")" : reg() + " := q.deq()");
          }
          break;
      }
    }
    s += "thread " + std::to_string(t) + " {\n";
    for (std::size_t k = 0; k < stmts.size(); ++k) s += "  " + stmts[k] + (k + 1 < stmts.size() ? ";\n" : "\n");
    s += "}\n";
  }
  return s;
}

std::vector<Transition> random_transitions(const System& sys, std::mt19937& rng, std::size_t count,
                                           int walk_length) {
  std::vector<Transition> out;
  const Configuration init = initial_configuration(sys);
  Configuration cur = init;
  int len = 0;
  int restarts_without_progress = 0;
  while (out.size() < count) {
    auto succ = successors(sys, cur);
    if (succ.empty() || len >= walk_length) {
      if (len == 0 && ++restarts_without_progress > 3) break;  // the program cannot move at all
      cur = init;
      len = 0;
      continue;
    }
    restarts_without_progress = 0;
    Step& s = succ[rng() % succ.size()];
    out.push_back(Transition{cur, s});
    cur = s.next;
    ++len;
  }
  return out;
}

namespace {

// Systems random states are drawn from: the corpus, both lock
// implementations, and fresh random programs.
std::vector<System> sample_systems(std::mt19937& rng, bool queues_only = false) {
  std::vector<System> out;
  if (!queues_only) {
    for (const char* f : {"mp-relaxed.lit", "mp-relacq.lit", "lockmp.lit", "lock-stress.lit"})
      out.push_back(load_litmus(corpus(f)).sys);
    const System abs = load_litmus(corpus("lockmp.lit")).sys;
    out.push_back(instantiate(abs, find_impl("seqlock")));
    out.push_back(instantiate(abs, find_impl("ticketlock")));
  }
  for (const char* f : {"queue-mp.lit", "queue-mp-once.lit"}) out.push_back(load_litmus(corpus(f)).sys);
  while (out.size() < 16) {
    const std::string text = random_program(rng);
    if (queues_only && text.find("queue") == std::string::npos) continue;
    out.push_back(parse_litmus(text).sys);
  }
  return out;
}

std::vector<std::pair<const System*, Transition>> sample(std::vector<System>& systems, std::mt19937& rng,
                                                         std::size_t states) {
  std::vector<std::pair<const System*, Transition>> out;
  const std::size_t per = states / systems.size() + 1;
  for (const System& sys : systems)
    for (Transition& t : random_transitions(sys, rng, per)) out.emplace_back(&sys, std::move(t));
  return out;
}

const OpRecord* new_op(const ComponentState& before, const ComponentState& after) {
  for (const OpRecord& op : after.ops())
    if (!before.find(op.action.var, op.ts)) return &op;
  return nullptr;
}

const OpRecord* predecessor(const ComponentState& s, const OpRecord& op) {
  const OpRecord* best = nullptr;
  for (const OpRecord* o : s.ops_on(op.action.var))
    if (o->ts < op.ts && (!best || best->ts < o->ts)) best = o;
  return best;
}

std::string thread_var(ThreadId t, const System& sys, VarId x) {
  return "thread " + std::to_string(t) + ", " + sys.vars.name(x);
}

}  // namespace

PropertyResult prop_freshness(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"timestamp freshness after every insertion"};
  std::size_t seen = 0;
  while (r.checked < states) {
    for (auto& [sys, t] : sample(systems, rng, states)) {
      ++seen;
      for (Component c : {Component::Client, Component::Library}) {
        const ComponentState& before = t.before.side(c);
        const ComponentState& after = t.step.next.side(c);
        const OpRecord* op = new_op(before, after);
        if (!op) continue;
        ++r.checked;
        const OpRecord* pred = predecessor(after, *op);
        if (!pred || !before.is_fresh(pred->ts, op->ts))
          r.fail(step_label(*sys, t.step) + " inserted at " + op->ts.to_string() + " which is not fresh");
        for (const OpRecord& other : before.ops())
          if (other.ts == op->ts) r.fail("timestamp " + op->ts.to_string() + " reused");
      }
    }
    if (seen > 50 * states) break;
  }
  return r;
}

PropertyResult prop_update_atomicity(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"update atomicity"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    for (Component c : {Component::Client, Component::Library}) {
      const ComponentState& s = t.step.next.side(c);
      for (const OpRecord& op : s.ops()) {
        if (op.action.kind != ActionKind::Update) continue;
        const OpRecord* pred = predecessor(s, op);
        if (!pred || !pred->covered || pred->action.wrval() != op.action.value)
          r.fail(op.action.to_string(sys->vars) + " does not directly follow a covered write of its read value");
      }
    }
  }
  return r;
}

PropertyResult prop_view_monotonicity(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"view monotonicity"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    const ThreadId me = sys->threads[t.step.thread].id;
    for (Component c : {Component::Client, Component::Library}) {
      const ComponentState& b = t.before.side(c);
      const ComponentState& a = t.step.next.side(c);
      for (const auto& [tid, view] : b.tviews()) {
        const View& after = a.tview(tid);
        if (tid != me) {
          if (!(after == view)) r.fail("step of thread " + std::to_string(me) + " changed the view of " + std::to_string(tid));
          continue;
        }
        for (VarId x = 0; x < view.size(); ++x) {
          if (!view.defined(x)) continue;
          if (!after.defined(x) || after.at(x) < view.at(x))
            r.fail(step_label(*sys, t.step) + " moved the view back for " + thread_var(tid, *sys, x));
        }
      }
    }
  }
  return r;
}

PropertyResult prop_definite_implies_possible(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"definite implies possible"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    const Configuration& cfg = t.step.next;
    for (const auto& th : sys->threads)
      for (VarId x = 0; x < sys->vars.size(); ++x) {
        if (sys->vars[x].kind != VarKind::Plain) continue;
        const ComponentState& s = cfg.side(sys->vars.component(x));
        int definite = 0;
        for (const Value& u : sys->domain) {
          const bool d = eval_definite(s, th.id, x, u);
          definite += d;
          if (d && !eval_possible(s, th.id, x, u))
            r.fail("[" + sys->vars.name(x) + " = " + u.to_string() + "] without the possible observation for thread " +
                   std::to_string(th.id));
        }
        if (definite > 1) r.fail("two definite values for " + thread_var(th.id, *sys, x));
      }
  }
  return r;
}

PropertyResult prop_merge_pointwise_max(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"merge_views pointwise max"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    for (Component c : {Component::Client, Component::Library}) {
      const ComponentState& s = t.step.next.side(c);
      std::vector<View> views;
      for (const auto& [tid, v] : s.tviews()) views.push_back(v);
      for (const OpRecord& op : s.ops()) views.push_back(op.mview);
      const View& v1 = views[rng() % views.size()];
      const View& v2 = views[rng() % views.size()];
      const View m = merge_views(v1, v2);
      if (!(merge_views(v1, v1) == v1)) r.fail("merge is not idempotent");
      for (VarId x = 0; x < v1.size(); ++x) {
        if (!v1.defined(x)) {
          if (m.defined(x)) r.fail("merge extends the domain");
          continue;
        }
        const Timestamp want = v2.defined(x) ? std::max(v1.at(x), v2.at(x)) : v1.at(x);
        if (!m.defined(x) || !(m.at(x) == want)) r.fail("merge is not the pointwise max on " + sys->vars.name(x));
        if (v2.defined(x) && !(merge_views(v2, v1).at(x) == m.at(x))) r.fail("merge is not commutative");
      }
    }
  }
  return r;
}

Configuration remap_timestamps(const Configuration& cfg, const VarTable& vars, std::mt19937& rng) {
  Configuration out = cfg;

  // Timestamps of a view entry belong to the component of its variable, so
  // build one map per component first and then rewrite every view.
  std::map<Timestamp, Timestamp> fmap[2];
  for (int c = 0; c < 2; ++c) {
    const ComponentState& s = c == 0 ? cfg.client : cfg.library;
    std::vector<Timestamp> ts;
    for (const OpRecord& op : s.ops()) ts.push_back(op.ts);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    Timestamp cur(static_cast<std::int64_t>(rng() % 5));
    for (const Timestamp& t : ts) {
      fmap[c][t] = cur;
      cur = Timestamp(cur.num() * 7 + cur.den() * static_cast<std::int64_t>(1 + rng() % 5), cur.den() * 7);
    }
  }
  auto comp_of = [&](VarId x) { return vars.component(x) == Component::Client ? 0 : 1; };
  auto map_view = [&](View& v) {
    for (VarId x = 0; x < v.size(); ++x)
      if (v.defined(x)) v.set(x, fmap[comp_of(x)].at(v.at(x)));
  };
  for (int c = 0; c < 2; ++c) {
    ComponentState& s = c == 0 ? out.client : out.library;
    ComponentState fresh(s.nvars());
    for (OpRecord op : s.ops()) {
      op.ts = fmap[c].at(op.ts);
      map_view(op.mview);
      fresh.add_op(std::move(op));
    }
    for (auto [tid, v] : s.tviews()) {
      map_view(v);
      fresh.set_tview(tid, std::move(v));
    }
    for (auto [a, b] : s.matched()) fresh.add_matched(fmap[c].at(a), fmap[c].at(b));
    s = std::move(fresh);
  }
  return out;
}

PropertyResult prop_canonical_key_invariance(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng);
  PropertyResult r{"canonical_key order-isomorphism invariance"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    const Configuration& cfg = t.step.next;
    const std::string key = canonical_key(cfg, sys->vars);
    if (canonical_key(remap_timestamps(cfg, sys->vars, rng), sys->vars) != key)
      r.fail("key changed under a monotone renaming after " + step_label(*sys, t.step));
    if (canonical_key(canonicalize(cfg, sys->vars), sys->vars) != key) r.fail("key changed by canonicalize");

    // Swapping the positions of two different ops on one variable must
    // change the key.
    const ComponentState& s = cfg.client;
    for (VarId x = 0; x < sys->vars.size(); ++x) {
      auto ops = s.ops_on(x);
      if (ops.size() < 2) continue;
      const OpRecord* a = ops[ops.size() - 2];
      const OpRecord* b = ops.back();
      if (a->action == b->action) continue;
      Configuration swapped = cfg;
      for (OpRecord& op : swapped.client.ops_mut()) {
        if (op.action.var != x) continue;
        if (op.ts == a->ts) op.action = b->action;
        else if (op.ts == b->ts) op.action = a->action;
      }
      if (canonical_key(swapped, sys->vars) == key) r.fail("key ignores the order of ops on " + sys->vars.name(x));
      break;
    }
  }
  return r;
}

PropertyResult prop_queue_fifo(std::size_t states, unsigned seed) {
  std::mt19937 rng(seed);
  auto systems = sample_systems(rng, true);
  PropertyResult r{"queue matched order-preservation and FIFO oracle"};
  for (auto& [sys, t] : sample(systems, rng, states)) {
    ++r.checked;
    const ComponentState& lib = t.step.next.library;
    if (!matched_order_preserving(lib)) r.fail("matched is not order-preserving after " + step_label(*sys, t.step));
    for (VarId q = 0; q < sys->vars.size(); ++q) {
      if (sys->vars[q].kind != VarKind::Queue) continue;
      if (!replays_as_fifo(lib, q)) r.fail("timestamp order of " + sys->vars.name(q) + " is not a FIFO history");
      for (const auto& [a, b] : lib.matched())
        for (const OpRecord* op : lib.ops_on(q))
          if (a < op->ts && op->ts < b && op->action.kind == ActionKind::Dequeue)
            r.fail("a dequeue sits inside a matched pair");
    }
  }
  // Exhaustive part: every interleaving of up to 3 enqueues and dequeues.
  for (int k = 1; k <= 3; ++k)
    for (const FifoLayout& l : fifo_layouts(k)) {
      const FifoReport f = check_fifo(l);
      r.checked += f.states;
      if (!f.ok()) r.fail("layout " + l.name + " with " + std::to_string(k) + " enqueues disagrees with the oracle");
    }
  return r;
}

}  // namespace vtest
