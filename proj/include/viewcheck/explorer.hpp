#pragma once

#include <map>
#include <string>
#include <vector>

#include "viewcheck/system.hpp"

namespace viewcheck {

struct WitnessStep {
  ThreadId thread = 0;
  std::string label;
  int choice = 0;  // disambiguates equal labels of one thread (e.g. write positions)
};

struct ExploreOptions {
  int max_steps = 64;       // bound on path length from the initial configuration
  int jobs = 1;             // worker threads computing successors
  bool keep_edges = false;  // record the full transition graph
};

struct Edge {
  int target = 0;
  int thread = 0;  // index into System::threads
  Component component = Component::Client;
  Action action;
  WitnessStep via;
};

struct ExploreNode {
  Configuration cfg;  // canonical
  int parent = -1;
  int depth = 0;
  WitnessStep via;
};

struct ExploreResult {
  std::vector<ExploreNode> nodes;          // node 0 is the initial configuration
  std::vector<std::vector<Edge>> edges;    // only with keep_edges
  std::map<std::vector<Value>, int> outcomes;  // observed values -> first terminal node
  std::vector<int> terminals;
  std::vector<int> deadlocks;              // non-terminal, no successors
  bool truncated = false;

  std::size_t states() const { return nodes.size(); }
  std::vector<WitnessStep> path_to(int node) const;
};

/// Breadth-first exploration of every interleaving up to the step bound.
/// Results are identical for any number of jobs.
ExploreResult explore(const System& sys, const ExploreOptions& opts = {});

/// Re-executes a witness path from the initial configuration. Returns the
/// canonical configuration reached, or nothing if some step is not enabled.
std::optional<Configuration> replay(const System& sys, const std::vector<WitnessStep>& path);

std::string format_path(const std::vector<WitnessStep>& path);

}  // namespace viewcheck
