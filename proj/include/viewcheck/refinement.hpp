#pragma once

#include <string>
#include <vector>

#include "viewcheck/explorer.hpp"
#include "viewcheck/system.hpp"

namespace viewcheck {

// ---------------------------------------------------------------------------
// Lock implementations

/// A concrete lock: library globals (named `<obj>.<suffix>`) and method
/// bodies. Body registers are prefixed with the object name too, so they
/// never clash with client registers.
struct LockImplementation {
  std::string name;
  std::vector<std::pair<std::string, Value>> globals;  // suffix, initial value

  /// Body of `method` for object `obj`; `vars` holds the ids of `globals`
  /// in the same order.
  HoleFill (*body)(Method method, const std::string& obj, const std::vector<VarId>& vars) = nullptr;
};

/// seqlock, ticketlock and their relaxed-release mutants.
const std::vector<LockImplementation>& builtin_impls();

/// Throws InputError for unknown names.
const LockImplementation& find_impl(const std::string& name);

/// C[CO]: every lock object of `abs` is replaced by the implementation's
/// globals and every call by the method body. Queues are rejected.
System instantiate(const System& abs, const LockImplementation& impl);

/// Throws InputError unless the client synchronises only through objects:
/// no releasing writes, acquiring reads, CAS or FAI on client globals.
void require_sync_free(const System& sys);

// ---------------------------------------------------------------------------
// Client traces

/// The client part of a configuration: rval and client registers of every
/// thread, and the client component state γ.
struct ClientSnapshot {
  std::vector<std::vector<Value>> regs;  // per thread: rval, then client registers in slot order
  ComponentState gamma;                  // canonical
  std::string key;                       // equal exactly for equal snapshots

  bool operator==(const ClientSnapshot& o) const { return key == o.key; }
};

ClientSnapshot client_snapshot(const System& sys, const Configuration& cfg);

using ClientTrace = std::vector<ClientSnapshot>;

/// Projects every configuration to its client snapshot and collapses
/// consecutive duplicates.
ClientTrace project_and_destutter(const System& sys, const std::vector<Configuration>& execution);

/// (ls_A, γ_A) ⊑ (ls_C, γ_C): equal registers, equal covered sets and
/// Obs_C(t, x) ⊆ Obs_A(t, x) for every thread and client global. Ops of the
/// two states are identified by their action and position on the variable.
bool state_refines(const VarTable& vars, const ClientSnapshot& abs, const ClientSnapshot& conc);

/// Why state_refines fails, or empty.
std::string refinement_failure(const VarTable& vars, const ClientSnapshot& abs, const ClientSnapshot& conc);

// ---------------------------------------------------------------------------
// Simulation and trace inclusion

struct RefineOptions {
  int max_steps = 64;
  int jobs = 1;
  bool check_traces = true;
};

struct TraceReport {
  bool holds = false;
  std::size_t states = 0;  // (concrete node, abstract set) pairs visited
  std::vector<WitnessStep> counterexample;
  std::string detail;
};

struct SimulationReport {
  bool found = false;
  bool truncated = false;             // either exploration hit the bound
  std::size_t abstract_states = 0;
  std::size_t concrete_states = 0;
  std::size_t candidate_pairs = 0;
  std::size_t relation_size = 0;
  std::vector<WitnessStep> counterexample;  // concrete path
  std::string detail;
  bool traces_checked = false;
  TraceReport traces;
};

/// Searches for the largest forward simulation between C[AO] (`abs`) and
/// C[CO] over the explored state spaces. Client steps must be matched by
/// the same client step of the same thread; object steps by a stutter or
/// by one object step of the same thread.
SimulationReport check_simulation(const System& abs, const System& conc, const RefineOptions& opts = {});

/// Every stutter-free client trace of `conc` (up to the bound) refines some
/// trace of `abs`. The abstract trace may repeat an element while the
/// concrete trace moves to a state that still refines it.
TraceReport check_trace_inclusion(const System& abs, const ExploreResult& a, const System& conc,
                                  const ExploreResult& c);

}  // namespace viewcheck
