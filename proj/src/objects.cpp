#include "viewcheck/objects.hpp"

#include <algorithm>

#include "viewcheck/error.hpp"

namespace viewcheck {

std::vector<ObjSucc> lock_acquire(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId l) {
  const OpRecord& w = lib.last_op(l);
  const bool free = w.action.kind == ActionKind::LockInit || w.action.kind == ActionKind::LockRelease;
  if (!free || w.covered) return {};

  const int version = w.action.index + 1;
  const Timestamp q = lib.fresh_after(w.ts);
  View tv = lib.tview(t);
  tv.set(l, q);
  tv = merge_views(tv, w.mview);
  View ctv = merge_views(client.tview(t), w.mview);

  ObjSucc s{lib, client, Action::lock_acquire(l, version, t), CallResult{Value::boolean(true), version}};
  s.lib.cover(l, w.ts);
  s.lib.add_op(OpRecord{s.action, q, union_views(tv, ctv), false});
  s.lib.set_tview(t, std::move(tv));
  s.client.set_tview(t, std::move(ctv));
  return {std::move(s)};
}

std::vector<ObjSucc> lock_release(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId l) {
  const OpRecord& w = lib.last_op(l);
  if (w.action.kind != ActionKind::LockAcquire || w.action.owner != t) return {};

  const int version = w.action.index + 1;
  const Timestamp q = lib.fresh_after(w.ts);
  View tv = lib.tview(t);
  tv.set(l, q);

  ObjSucc s{lib, client, Action::lock_release(l, version), CallResult{Value::bot(), -1}};
  s.lib.add_op(OpRecord{s.action, q, union_views(tv, client.tview(t)), false});
  s.lib.set_tview(t, std::move(tv));
  return {std::move(s)};
}

namespace {

// Fresh timestamps directly after each queue op the thread can see, i.e.
// one representative per insertion gap strictly after its view.
std::vector<Timestamp> gaps_after_view(const ComponentState& lib, ThreadId t, VarId q) {
  std::vector<Timestamp> out;
  for (const OpRecord* op : lib.observable(t, q)) out.push_back(lib.fresh_after(op->ts));
  return out;
}

bool is_enqueue(const OpRecord& op) { return op.action.kind == ActionKind::Enqueue; }

bool matched_enqueue(const ComponentState& lib, const Timestamp& ts) {
  return std::any_of(lib.matched().begin(), lib.matched().end(), [&](const auto& p) { return p.first == ts; });
}

}  // namespace

std::vector<ObjSucc> queue_enq(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId q, Value u) {
  std::vector<ObjSucc> out;
  const Action a = Action::enqueue(q, u);
  for (const Timestamp& ts : gaps_after_view(lib, t, q)) {
    bool ok = true;
    for (const OpRecord* op : lib.ops_on(q)) {
      if (!(ts < op->ts)) continue;
      if ((is_enqueue(*op) && matched_enqueue(lib, op->ts)) || op->action.is_empty_dequeue()) ok = false;
    }
    if (!ok) continue;
    View tv = lib.tview(t);
    tv.set(q, ts);
    ObjSucc s{lib, client, a, CallResult{Value::bot(), -1}};
    s.lib.add_op(OpRecord{a, ts, union_views(tv, client.tview(t)), false});
    s.lib.set_tview(t, std::move(tv));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ObjSucc> queue_deq(const ComponentState& lib, const ComponentState& client, ThreadId t, VarId q) {
  std::vector<ObjSucc> out;
  const auto ops = lib.ops_on(q);  // sorted by timestamp

  // The oldest unmatched enqueue is the only FIFO-eligible one.
  const OpRecord* head = nullptr;
  for (const OpRecord* op : ops)
    if (is_enqueue(*op) && !matched_enqueue(lib, op->ts)) {
      head = op;
      break;
    }

  for (const Timestamp& ts : gaps_after_view(lib, t, q)) {
    if (head && head->ts < ts) {
      const bool after_matched = std::all_of(lib.matched().begin(), lib.matched().end(),
                                             [&](const auto& p) { return p.second < ts; });
      if (after_matched) {
        const Action a = Action::dequeue(q, head->action.value);
        View tv = lib.tview(t);
        tv.set(q, ts);
        tv = merge_views(tv, head->mview);
        View ctv = merge_views(client.tview(t), head->mview);
        ObjSucc s{lib, client, a, CallResult{head->action.value, -1}};
        s.lib.add_op(OpRecord{a, ts, union_views(tv, ctv), false});
        s.lib.add_matched(head->ts, ts);
        s.lib.set_tview(t, std::move(tv));
        s.client.set_tview(t, std::move(ctv));
        out.push_back(std::move(s));
      }
    }

    // Empty: every enqueue before ts has already been dequeued before ts.
    bool empty = true;
    for (const OpRecord* op : ops) {
      if (!(op->ts < ts) || !is_enqueue(*op)) continue;
      const auto& m = lib.matched();
      empty = empty && std::any_of(m.begin(), m.end(), [&](const auto& p) { return p.first == op->ts && p.second < ts; });
    }
    if (empty) {
      const Action a = Action::dequeue(q, Value::empty());
      View tv = lib.tview(t);
      tv.set(q, ts);
      ObjSucc s{lib, client, a, CallResult{Value::empty(), -1}};
      s.lib.add_op(OpRecord{a, ts, union_views(tv, client.tview(t)), false});
      s.lib.set_tview(t, std::move(tv));
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<ObjSucc> object_step(const ComponentState& lib, const ComponentState& client, ThreadId t,
                                 VarKind kind, const ObjCall& call, Value arg) {
  switch (call.method) {
    case Method::Acquire:
      if (kind == VarKind::Lock) return lock_acquire(lib, client, t, call.obj);
      break;
    case Method::Release:
      if (kind == VarKind::Lock) return lock_release(lib, client, t, call.obj);
      break;
    case Method::Enq:
      if (kind == VarKind::Queue) return queue_enq(lib, client, t, call.obj, arg);
      break;
    case Method::Deq:
      if (kind == VarKind::Queue) return queue_deq(lib, client, t, call.obj);
      break;
  }
  throw InputError(std::string("object '") + call.obj_name + "' has no method " + method_name(call.method));
}

bool in_sync_set(const Action& a) {
  switch (a.kind) {
    case ActionKind::LockAcquire:
    case ActionKind::LockRelease:
    case ActionKind::Enqueue:
      return true;
    case ActionKind::Dequeue:
      return !a.value.is_empty();
    default:
      return false;
  }
}

}  // namespace viewcheck
