#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "viewcheck/value.hpp"

namespace viewcheck {

using VarId = std::uint16_t;
using ThreadId = int;

/// Which side of a client/library composition a global belongs to.
enum class Component : std::uint8_t { Client, Library };

enum class VarKind : std::uint8_t { Plain, Lock, Queue };

struct VarInfo {
  std::string name;
  Component component = Component::Client;
  VarKind kind = VarKind::Plain;
};

/// Global variables and objects of one program, both components.
class VarTable {
 public:
  VarId add(std::string name, Component component, VarKind kind = VarKind::Plain);
  std::optional<VarId> find(const std::string& name) const;

  const VarInfo& operator[](VarId id) const { return vars_.at(id); }
  std::size_t size() const { return vars_.size(); }
  Component component(VarId id) const { return vars_.at(id).component; }
  const std::string& name(VarId id) const { return vars_.at(id).name; }

 private:
  std::vector<VarInfo> vars_;
};

enum class ActionKind : std::uint8_t {
  Write,
  Read,
  Update,
  LockInit,
  LockAcquire,
  LockRelease,
  QueueInit,
  Enqueue,
  Dequeue,
};

enum class SyncMode : std::uint8_t { Relaxed, Release, Acquire, ReleaseAcquire, ObjectSync };

/// An action of the memory or object semantics.
///
/// `value` is the written / read / enqueued / dequeued value (EMPTY for an
/// empty dequeue); for updates `value` is the value read and `value2` the
/// value written. Lock operations carry their version in `index`; acquires
/// also record the acquiring thread in `owner`.
struct Action {
  ActionKind kind = ActionKind::Write;
  VarId var = 0;
  Value value;
  Value value2;
  SyncMode sync = SyncMode::Relaxed;
  int owner = -1;
  int index = -1;

  static Action write(VarId x, Value v, bool release = false);
  static Action read(VarId x, Value v, bool acquire = false);
  static Action update(VarId x, Value read, Value written);
  static Action lock_init(VarId l);
  static Action lock_acquire(VarId l, int version, ThreadId owner);
  static Action lock_release(VarId l, int version);
  static Action queue_init(VarId q);
  static Action enqueue(VarId q, Value v);
  static Action dequeue(VarId q, Value v);

  /// Writes and updates: the operations carrying a written value.
  bool is_write() const { return kind == ActionKind::Write || kind == ActionKind::Update; }
  bool is_releasing() const;
  bool is_acquiring() const;
  bool is_empty_dequeue() const { return kind == ActionKind::Dequeue && value.is_empty(); }
  Value wrval() const;

  std::string to_string(const VarTable& vars) const;

  auto operator<=>(const Action&) const = default;
};

}  // namespace viewcheck
