#include "viewcheck/fifo_oracle.hpp"

#include <deque>
#include <functional>
#include <set>

#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"

namespace viewcheck {

std::vector<FifoLayout> fifo_layouts(int enqs) {
  std::vector<int> producer, consumer(static_cast<std::size_t>(enqs), 0);
  for (int v = 1; v <= enqs; ++v) producer.push_back(v);
  std::vector<FifoLayout> out;
  out.push_back({"producer-consumer", {producer, consumer}});
  FifoLayout many{"producers", {}};
  for (int v = 1; v <= enqs; ++v) many.threads.push_back({v});
  many.threads.push_back(consumer);
  out.push_back(many);
  FifoLayout eaters{"consumers", {producer}};
  for (int k = 0; k < enqs; ++k) eaters.threads.push_back({0});
  out.push_back(eaters);
  FifoLayout mixed{"enq-then-deq", {}};
  for (int v = 1; v <= enqs; ++v) mixed.threads.push_back({v, 0});
  out.push_back(mixed);
  return out;
}

std::string fifo_litmus(const FifoLayout& layout) {
  std::string s = "litmus fifo-" + layout.name + "\nobject q : queue\n";
  int reg = 0;
  std::string observed;
  std::string body;
  for (std::size_t t = 0; t < layout.threads.size(); ++t) {
    body += "thread " + std::to_string(t + 1) + " {";
    bool first = true;
    for (int op : layout.threads[t]) {
      body += first ? " " : "; ";
      first = false;
      if (op > 0) {
        body += "q.enq(" + std::to_string(op) + ")";
      } else {
        const std::string r = "r" + std::to_string(++reg);
        body += r + " := q.deq()";
        observed += (observed.empty() ? "" : ", ") + r;
      }
    }
    body += " }\n";
  }
  if (!observed.empty()) s += "observe " + observed + "\n";
  return s + body;
}

bool matched_order_preserving(const ComponentState& lib) {
  const auto& m = lib.matched();
  for (const auto& [a, b] : m)
    for (const auto& [c, d] : m)
      if ((a < c) != (b < d)) return false;
  return true;
}

bool replays_as_fifo(const ComponentState& lib, VarId q) {
  std::deque<Value> queue;
  for (const OpRecord* op : lib.ops_on(q)) {
    const Action& a = op->action;
    if (a.kind == ActionKind::Enqueue) {
      queue.push_back(a.value);
    } else if (a.kind == ActionKind::Dequeue) {
      if (a.value.is_empty()) {
        if (!queue.empty()) return false;
      } else {
        if (queue.empty() || queue.front() != a.value) return false;
        queue.pop_front();
      }
    }
  }
  return true;
}

namespace {

// Dequeue results of every interleaving on a sequential queue, in
// observation order (threads in order, dequeues in program order).
std::set<std::vector<Value>> sequential_outcomes(const FifoLayout& layout) {
  std::set<std::vector<Value>> out;
  std::vector<std::size_t> pc(layout.threads.size(), 0);
  std::vector<std::vector<Value>> results(layout.threads.size());
  std::deque<Value> queue;
  std::function<void()> go = [&]() {
    bool any = false;
    for (std::size_t t = 0; t < layout.threads.size(); ++t) {
      if (pc[t] == layout.threads[t].size()) continue;
      any = true;
      const int op = layout.threads[t][pc[t]++];
      if (op > 0) {
        queue.push_back(Value::integer(op));
        go();
        queue.pop_back();
      } else if (queue.empty()) {
        results[t].push_back(Value::empty());
        go();
        results[t].pop_back();
      } else {
        const Value v = queue.front();
        queue.pop_front();
        results[t].push_back(v);
        go();
        results[t].pop_back();
        queue.push_front(v);
      }
      --pc[t];
    }
    if (!any) {
      std::vector<Value> flat;
      for (const auto& r : results) flat.insert(flat.end(), r.begin(), r.end());
      out.insert(flat);
    }
  };
  go();
  return out;
}

}  // namespace

FifoReport check_fifo(const FifoLayout& layout, int max_steps) {
  FifoReport rep;
  rep.layout = layout.name;
  const LitmusFile f = parse_litmus(fifo_litmus(layout));
  const VarId q = *f.sys.vars.find("q");
  ExploreOptions o;
  o.max_steps = max_steps;
  const ExploreResult r = explore(f.sys, o);
  rep.states = r.states();
  rep.truncated = r.truncated;
  for (const auto& n : r.nodes) {
    if (!matched_order_preserving(n.cfg.library)) ++rep.order_violations;
    if (!replays_as_fifo(n.cfg.library, q)) ++rep.replay_violations;
  }
  const auto oracle = sequential_outcomes(layout);
  rep.model_outcomes = r.outcomes.size();
  rep.oracle_outcomes = oracle.size();
  for (const auto& [vals, node] : r.outcomes)
    if (!oracle.count(vals)) ++rep.unexplained;
  for (const auto& vals : oracle)
    if (!r.outcomes.count(vals)) ++rep.missing;
  return rep;
}

}  // namespace viewcheck
