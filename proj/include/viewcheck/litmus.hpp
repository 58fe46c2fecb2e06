#pragma once

#include <map>
#include <string>
#include <utility>

#include "viewcheck/assertion.hpp"
#include "viewcheck/system.hpp"

namespace viewcheck {

/// Per-thread label annotations plus the global invariant, precondition
/// and final assertion. Missing parts default to true.
struct ProofOutline {
  AssertPtr pre;
  AssertPtr invariant;
  AssertPtr final;
  std::map<std::pair<int, int>, AssertPtr> annotations;  // (thread index, label)

  bool has_annotations() const { return !annotations.empty(); }
  const Assertion* at(int thread, int label) const;
};

struct LitmusFile {
  std::string name;
  std::string mode = "explore";  // explore | outline | hoare | refine
  std::string impl;              // preferred lock implementation for refine
  int max_steps = 64;
  System sys;
  ProofOutline outline;
  std::vector<std::string> observed;  // as written; empty = default
};

/// Parses a litmus file. Throws InputError with the 1-based line and
/// column of the offending token.
LitmusFile parse_litmus(const std::string& text);
LitmusFile load_litmus(const std::string& path);

/// Prints a file that parses back to the same programs and assertions.
std::string print_litmus(const LitmusFile& f);

}  // namespace viewcheck
