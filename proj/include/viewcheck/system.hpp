#pragma once

#include <optional>
#include <string>
#include <vector>

#include "viewcheck/program.hpp"
#include "viewcheck/state.hpp"

namespace viewcheck {

struct ThreadDecl {
  ThreadId id = 0;
  RegTable regs;
  CmdPtr program;
};

/// A register initialised before the program starts (e.g. a ghost).
struct RegInit {
  int thread = 0;  // index into System::threads
  int slot = 0;
  Value value;
};

/// Reference to one register of one thread.
struct RegRef {
  int thread = 0;
  int slot = 0;
  std::string name;
};

/// A closed program: globals, objects, threads and their initial state.
struct System {
  VarTable vars;
  std::vector<ThreadDecl> threads;
  std::vector<std::pair<VarId, Value>> init;
  std::vector<RegInit> reg_init;
  std::vector<Value> domain;      // finite value domain for quantifiers and havoc
  std::vector<RegRef> observed;   // registers reported in outcomes

  int thread_index(ThreadId id) const;  // -1 when absent
  /// The unique register with this name over all threads.
  std::optional<RegRef> find_register(const std::string& name) const;
};

struct ThreadState {
  CmdPtr prog;
  LocalState ls;
};

struct Configuration {
  std::vector<ThreadState> threads;
  ComponentState client;
  ComponentState library;

  const ComponentState& side(Component c) const { return c == Component::Client ? client : library; }
};

/// Initial configuration with every thread advanced past its leading
/// silent steps.
Configuration initial_configuration(const System& sys);

bool is_terminal(const Configuration& cfg);

/// Renumbers timestamps of each component to consecutive integers,
/// preserving their order.
Configuration canonicalize(const Configuration& cfg, const VarTable& vars);

/// Equal exactly for configurations that are equal up to an
/// order-preserving renaming of each component's timestamps.
std::string canonical_key(const Configuration& cfg, const VarTable& vars);

/// One visible step of the composed system.
struct Step {
  int thread = 0;  // index into System::threads
  Component component = Component::Client;
  Action action;
  Configuration next;
};

/// All visible successors. Thread-local silent steps are folded into the
/// preceding visible step, so every returned configuration has each
/// thread at a visible step, blocked, or terminated.
std::vector<Step> successors(const System& sys, const Configuration& cfg);

/// Successors produced by one thread only.
std::vector<Step> thread_successors(const System& sys, const Configuration& cfg, int thread);

std::string step_label(const System& sys, const Step& s);

/// Values of the observed registers.
std::vector<Value> observe(const System& sys, const Configuration& cfg);

/// Every value written by the program text, initialisation or register
/// initialisation, plus ⊥, true, false and EMPTY.
std::vector<Value> literal_domain(const System& sys);

}  // namespace viewcheck
