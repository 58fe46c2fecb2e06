#include "viewcheck/explorer.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace viewcheck {

std::vector<WitnessStep> ExploreResult::path_to(int node) const {
  std::vector<WitnessStep> out;
  for (int n = node; n > 0; n = nodes[n].parent) out.push_back(nodes[n].via);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

struct Expanded {
  std::vector<Step> steps;
  std::vector<std::string> keys;
};

Expanded expand(const System& sys, const Configuration& cfg) {
  Expanded e;
  e.steps = successors(sys, cfg);
  for (Step& s : e.steps) {
    s.next = canonicalize(s.next, sys.vars);
    e.keys.push_back(canonical_key(s.next, sys.vars));
  }
  return e;
}

WitnessStep witness_step(const System& sys, const std::vector<Step>& steps, std::size_t k) {
  WitnessStep w{sys.threads[steps[k].thread].id, step_label(sys, steps[k]), 0};
  for (std::size_t j = 0; j < k; ++j)
    if (steps[j].thread == steps[k].thread && step_label(sys, steps[j]) == w.label) ++w.choice;
  return w;
}

}  // namespace

ExploreResult explore(const System& sys, const ExploreOptions& opts) {
  ExploreResult r;
  std::unordered_map<std::string, int> index;

  const Configuration init = canonicalize(initial_configuration(sys), sys.vars);
  index.emplace(canonical_key(init, sys.vars), 0);
  r.nodes.push_back(ExploreNode{init, -1, 0, {}});
  if (opts.keep_edges) r.edges.emplace_back();

  std::vector<int> frontier{0};
  const unsigned jobs = static_cast<unsigned>(std::max(1, opts.jobs));
  while (!frontier.empty()) {
    std::vector<Expanded> expanded(frontier.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
      for (std::size_t i = begin; i < frontier.size(); i += stride)
        expanded[i] = expand(sys, r.nodes[frontier[i]].cfg);
    };
    if (jobs == 1 || frontier.size() < 2) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
      for (auto& th : pool) th.join();
    }

    // Merge sequentially in frontier order so node numbering is deterministic.
    std::vector<int> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int id = frontier[i];
      Expanded& e = expanded[i];
      if (e.steps.empty()) {
        (is_terminal(r.nodes[id].cfg) ? r.terminals : r.deadlocks).push_back(id);
        continue;
      }
      const int depth = r.nodes[id].depth;
      if (depth >= opts.max_steps) {
        r.truncated = true;
        if (!opts.keep_edges) continue;
      }
      for (std::size_t k = 0; k < e.steps.size(); ++k) {
        Step& s = e.steps[k];
        auto [it, fresh] = index.emplace(std::move(e.keys[k]), static_cast<int>(r.nodes.size()));
        if (fresh) {
          if (depth >= opts.max_steps) {
            // Bounded: record the edge target only if it is already known.
            index.erase(it);
            continue;
          }
          const WitnessStep via = witness_step(sys, e.steps, k);
          r.nodes.push_back(ExploreNode{std::move(s.next), id, depth + 1, via});
          if (opts.keep_edges) r.edges.emplace_back();
          next.push_back(it->second);
        }
        if (opts.keep_edges)
          r.edges[id].push_back(Edge{it->second, s.thread, s.component, s.action, witness_step(sys, e.steps, k)});
      }
    }
    frontier = std::move(next);
  }

  std::sort(r.terminals.begin(), r.terminals.end());
  std::sort(r.deadlocks.begin(), r.deadlocks.end());
  for (int t : r.terminals) r.outcomes.emplace(observe(sys, r.nodes[t].cfg), t);
  return r;
}

std::optional<Configuration> replay(const System& sys, const std::vector<WitnessStep>& path) {
  Configuration cur = canonicalize(initial_configuration(sys), sys.vars);
  for (const WitnessStep& w : path) {
    bool moved = false;
    int seen = 0;
    for (Step& s : successors(sys, cur)) {
      if (sys.threads[s.thread].id != w.thread || step_label(sys, s) != w.label) continue;
      if (seen++ != w.choice) continue;
      cur = canonicalize(s.next, sys.vars);
      moved = true;
      break;
    }
    if (!moved) return std::nullopt;
  }
  return cur;
}

std::string format_path(const std::vector<WitnessStep>& path) {
  std::string out;
  for (const auto& w : path) {
    if (!out.empty()) out += " ; ";
    out += "T" + std::to_string(w.thread) + ": " + w.label;
    if (w.choice > 0) out += " #" + std::to_string(w.choice);
  }
  return out;
}

}  // namespace viewcheck
