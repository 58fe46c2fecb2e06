#pragma once

#include <string>
#include <vector>

#include "viewcheck/explorer.hpp"
#include "viewcheck/system.hpp"

namespace viewcheck {

/// The six reasoning rules for abstract lock calls, checked as Hoare
/// triples over every reachable lock step. Each rule also has a mutated
/// form (a deliberately wrong statement) used to test the harness.
///
///  1  {cvv[l.release_u]}            l.acquire(v)_t  {v > u + 1}
///  2  {cvv[l.release_u]}            l.m(v)_t        {cvv[l.release_u]}
///  3  {[l.release_u]_t}             l.acquire(v)_t  {[l.acquire_{u+1}]_t}
///  4  {[x = n]_t}                   l.m(v)_t'       {[x = n]_t}
///  5  {<l.release_u>[x = n]_t}      l.acquire(v)_t  {v = u + 1 => [x = n]_t}
///  6  {!<l.release_u>_t' && [x = n]_t}  l.release(u)_t  {<l.release_u>[x = n]_t'}
///
/// Mutants: 1 post v > u + 3; 2 post cvd[l.release_u]; 3 post
/// [l.acquire_{u+2}]_t; 4 post [x = n]_t'; 5 the
/// version guard is dropped; 6 post [x = n]_t'.
struct RuleReport {
  int rule = 0;
  bool mutant = false;
  std::size_t instances = 0;  // (step, parameters) with the precondition true
  std::size_t violations = 0;
  std::vector<WitnessStep> witness;  // path to the first violating step, step included
  std::string detail;
};

std::vector<RuleReport> check_lock_rules(const System& sys, const ExploreResult& r, bool mutant);

/// Explores `sys` with edges and checks every rule.
std::vector<RuleReport> check_lock_rules(const System& sys, bool mutant, int max_steps = 64);

}  // namespace viewcheck
