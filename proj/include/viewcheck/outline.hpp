#pragma once

#include <string>
#include <vector>

#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"

namespace viewcheck {

enum class Verdict { Valid, Invalid, Unknown };

const char* verdict_name(Verdict v);

struct HoareReport {
  Verdict verdict = Verdict::Valid;
  std::size_t states = 0;
  bool truncated = false;
  std::vector<WitnessStep> witness;  // path to a terminal violating post
};

/// Partial correctness of {pre} program {post}: every terminal configuration
/// reachable from an initial configuration satisfying pre satisfies post.
/// Unknown when the bound cut exploration short and no violation was found.
HoareReport check_hoare(const System& sys, const Assertion& pre, const Assertion& post, const ExploreOptions& opts);

struct OutlineViolation {
  std::string check;      // reachability | local | interference | missing
  std::string assertion;  // e.g. "inv", "pre", "final", "T2@3"
  std::vector<WitnessStep> path;
  std::string detail;
};

struct AssertionVerdict {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
};

struct OutlineReport {
  Verdict verdict = Verdict::Valid;
  std::size_t states = 0;
  bool truncated = false;
  std::vector<AssertionVerdict> assertions;
  std::vector<OutlineViolation> violations;  // first few per assertion
};

/// Owicki-Gries check of a proof outline over the reachable states:
///  (a) the invariant, each thread's current annotation, pre at the start
///      and final at terminal states hold in every reachable state;
///  (b) local correctness: from every reachable state, with the executing
///      thread's outline-mentioned registers set to every value of the
///      domain, each step of that thread from a state satisfying its
///      annotation and the invariant establishes its next annotation;
///  (c) interference freedom: a step of thread t' from a state satisfying
///      both its own precondition and thread t's annotation preserves the
///      latter.
OutlineReport check_outline(const System& sys, const ProofOutline& outline, const ExploreOptions& opts);

}  // namespace viewcheck
