#pragma once

#include <vector>

#include "viewcheck/state.hpp"

namespace viewcheck {

/// Result of a memory or object transition: the new executing-component
/// state and the new context state.
struct MemSucc {
  ComponentState exec;
  ComponentState ctx;
};

// Read, write and update transitions. `exec` is the component owning the
// accessed variable, `ctx` the other side. An empty result means the
// action is not enabled (for reads: the value is not observable).

std::vector<MemSucc> mem_read(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a);
std::vector<MemSucc> mem_write(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a);
std::vector<MemSucc> mem_update(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a);

/// Dispatches on the action kind (Read, Write or Update).
std::vector<MemSucc> mem_step(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a);

}  // namespace viewcheck
