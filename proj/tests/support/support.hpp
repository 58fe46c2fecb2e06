#pragma once

#include <random>
#include <string>
#include <vector>

#include "viewcheck/litmus.hpp"
#include "viewcheck/system.hpp"

namespace vtest {

using namespace viewcheck;

std::string corpus(const std::string& name);  // path of a bundled litmus file

/// Random litmus text: 2-3 threads over x, y (and optionally a lock or a
/// queue) mixing relaxed and synchronising accesses, CAS and FAI.
std::string random_program(std::mt19937& rng);

struct Transition {
  Configuration before;
  Step step;  // step.next is the configuration after
};

/// Random walks from the initial configuration; restarts at terminal or
/// deadlocked configurations and after `walk_length` steps.
std::vector<Transition> random_transitions(const System& sys, std::mt19937& rng, std::size_t count,
                                           int walk_length = 40);

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first;  // description of the first violation

  bool ok() const { return violations == 0; }
  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
};

/// The property suites; each draws at least `states` random transitions
/// from the bundled corpus and from random programs.
PropertyResult prop_freshness(std::size_t states, unsigned seed);
PropertyResult prop_update_atomicity(std::size_t states, unsigned seed);
PropertyResult prop_view_monotonicity(std::size_t states, unsigned seed);
PropertyResult prop_definite_implies_possible(std::size_t states, unsigned seed);
PropertyResult prop_merge_pointwise_max(std::size_t states, unsigned seed);
PropertyResult prop_canonical_key_invariance(std::size_t states, unsigned seed);
PropertyResult prop_queue_fifo(std::size_t states, unsigned seed);

/// Renames every timestamp of each component through a random strictly
/// increasing map.
Configuration remap_timestamps(const Configuration& cfg, const VarTable& vars, std::mt19937& rng);

}  // namespace vtest
