#include "viewcheck/action.hpp"

#include "viewcheck/error.hpp"

namespace viewcheck {

VarId VarTable::add(std::string name, Component component, VarKind kind) {
  if (find(name)) throw InputError("duplicate global '" + name + "'");
  vars_.push_back(VarInfo{std::move(name), component, kind});
  return static_cast<VarId>(vars_.size() - 1);
}

std::optional<VarId> VarTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<VarId>(i);
  return std::nullopt;
}

Action Action::write(VarId x, Value v, bool release) {
  Action a;
  a.kind = ActionKind::Write;
  a.var = x;
  a.value = v;
  a.sync = release ? SyncMode::Release : SyncMode::Relaxed;
  return a;
}

Action Action::read(VarId x, Value v, bool acquire) {
  Action a;
  a.kind = ActionKind::Read;
  a.var = x;
  a.value = v;
  a.sync = acquire ? SyncMode::Acquire : SyncMode::Relaxed;
  return a;
}

Action Action::update(VarId x, Value read, Value written) {
  Action a;
  a.kind = ActionKind::Update;
  a.var = x;
  a.value = read;
  a.value2 = written;
  a.sync = SyncMode::ReleaseAcquire;
  return a;
}

Action Action::lock_init(VarId l) {
  Action a;
  a.kind = ActionKind::LockInit;
  a.var = l;
  a.index = 0;
  return a;
}

Action Action::lock_acquire(VarId l, int version, ThreadId owner) {
  Action a;
  a.kind = ActionKind::LockAcquire;
  a.var = l;
  a.index = version;
  a.owner = owner;
  a.sync = SyncMode::ObjectSync;
  return a;
}

Action Action::lock_release(VarId l, int version) {
  Action a;
  a.kind = ActionKind::LockRelease;
  a.var = l;
  a.index = version;
  a.sync = SyncMode::ObjectSync;
  return a;
}

Action Action::queue_init(VarId q) {
  Action a;
  a.kind = ActionKind::QueueInit;
  a.var = q;
  return a;
}

Action Action::enqueue(VarId q, Value v) {
  Action a;
  a.kind = ActionKind::Enqueue;
  a.var = q;
  a.value = v;
  a.sync = SyncMode::ObjectSync;
  return a;
}

Action Action::dequeue(VarId q, Value v) {
  Action a;
  a.kind = ActionKind::Dequeue;
  a.var = q;
  a.value = v;
  a.sync = v.is_empty() ? SyncMode::Relaxed : SyncMode::ObjectSync;
  return a;
}

bool Action::is_releasing() const {
  switch (kind) {
    case ActionKind::Write:
      return sync == SyncMode::Release;
    case ActionKind::Update:
      return true;
    default:
      return sync == SyncMode::ObjectSync;
  }
}

bool Action::is_acquiring() const {
  switch (kind) {
    case ActionKind::Read:
      return sync == SyncMode::Acquire;
    case ActionKind::Update:
      return true;
    default:
      return sync == SyncMode::ObjectSync;
  }
}

Value Action::wrval() const {
  switch (kind) {
    case ActionKind::Write:
      return value;
    case ActionKind::Update:
      return value2;
    default:
      throw Error("wrval of a non-write action");
  }
}

std::string Action::to_string(const VarTable& vars) const {
  const std::string& x = vars.name(var);
  switch (kind) {
    case ActionKind::Write:
      return std::string(sync == SyncMode::Release ? "wr^R(" : "wr(") + x + "," + value.to_string() + ")";
    case ActionKind::Read:
      return std::string(sync == SyncMode::Acquire ? "rd^A(" : "rd(") + x + "," + value.to_string() + ")";
    case ActionKind::Update:
      return "upd^RA(" + x + "," + value.to_string() + "," + value2.to_string() + ")";
    case ActionKind::LockInit:
      return x + ".init_0";
    case ActionKind::LockAcquire:
      return x + ".acquire_" + std::to_string(index) + "(" + std::to_string(owner) + ")";
    case ActionKind::LockRelease:
      return x + ".release_" + std::to_string(index);
    case ActionKind::QueueInit:
      return x + ".init";
    case ActionKind::Enqueue:
      return x + ".enq(" + value.to_string() + ")";
    case ActionKind::Dequeue:
      return value.is_empty() ? x + ".deq_empty" : x + ".deq(" + value.to_string() + ")";
  }
  return "?";
}

}  // namespace viewcheck
