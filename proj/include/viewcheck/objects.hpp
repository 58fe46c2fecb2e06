#pragma once

#include <vector>

#include "viewcheck/program.hpp"
#include "viewcheck/state.hpp"

namespace viewcheck {

/// Successor of an abstract method call. `lib` holds the object, `client`
/// is the calling side's context state.
struct ObjSucc {
  ComponentState lib;
  ComponentState client;
  Action action;
  CallResult result;
};

/// Abstract lock. Acquire is enabled only when the newest lock op is the
/// init or a release (it blocks otherwise) and always returns true; the
/// new acquire gets version (newest version + 1). Release is enabled only
/// for the thread holding the lock.
std::vector<ObjSucc> lock_acquire(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId l);
std::vector<ObjSucc> lock_release(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId l);

/// Abstract synchronising queue. Each result corresponds to one admissible
/// position of the new op in the queue's timeline.
std::vector<ObjSucc> queue_enq(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId q, Value u);
std::vector<ObjSucc> queue_deq(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId q);

/// Dispatches an abstract call on the object named by `call.obj`.
std::vector<ObjSucc> object_step(const ComponentState& lib, const ComponentState& client, ThreadId t,
                                 VarKind kind, const ObjCall& call, Value arg);

/// Membership in the set of synchronising abstract actions: lock acquires
/// and releases, enqueues and non-empty dequeues.
bool in_sync_set(const Action& a);

}  // namespace viewcheck
