#include "viewcheck/state.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "viewcheck/error.hpp"

namespace viewcheck {

const Timestamp& View::at(VarId x) const {
  if (!defined(x)) throw Error("view undefined at variable #" + std::to_string(x));
  return *entries_[x];
}

View merge_views(const View& v1, const View& v2) {
  View out = v1;
  for (VarId x = 0; x < v1.size(); ++x) {
    if (!v1.defined(x) || !v2.defined(x)) continue;
    if (v1.at(x) < v2.at(x)) out.set(x, v2.at(x));
  }
  return out;
}

View union_views(const View& v1, const View& v2) {
  View out = v1;
  for (VarId x = 0; x < v2.size(); ++x)
    if (!out.defined(x) && v2.defined(x)) out.set(x, v2.at(x));
  return out;
}

const OpRecord* ComponentState::find(VarId x, const Timestamp& ts) const {
  auto it = std::lower_bound(ops_.begin(), ops_.end(), std::pair(ts, x), [](const OpRecord& op, const auto& key) {
    return std::pair(op.ts, op.action.var) < key;
  });
  if (it != ops_.end() && it->ts == ts && it->action.var == x) return &*it;
  return nullptr;
}

const OpRecord& ComponentState::op_at(VarId x, const Timestamp& ts) const {
  const OpRecord* op = find(x, ts);
  if (!op) throw Error("no op on variable #" + std::to_string(x) + " at timestamp " + ts.to_string());
  return *op;
}

std::vector<const OpRecord*> ComponentState::ops_on(VarId x) const {
  std::vector<const OpRecord*> out;
  for (const auto& op : ops_)
    if (op.action.var == x) out.push_back(&op);
  return out;
}

bool ComponentState::has_ops_on(VarId x) const {
  return std::any_of(ops_.begin(), ops_.end(), [x](const OpRecord& op) { return op.action.var == x; });
}

const View& ComponentState::tview(ThreadId t) const {
  auto it = tview_.find(t);
  if (it == tview_.end()) throw Error("no thread view for thread " + std::to_string(t));
  return it->second;
}

void ComponentState::add_matched(Timestamp enq, Timestamp deq) {
  matched_.emplace_back(enq, deq);
  std::sort(matched_.begin(), matched_.end());
}

std::vector<const OpRecord*> ComponentState::observable(ThreadId t, VarId x) const {
  const View& v = tview(t);
  if (!v.defined(x)) throw Error("thread " + std::to_string(t) + " has no view of variable #" + std::to_string(x));
  const Timestamp& front = v.at(x);
  std::vector<const OpRecord*> out;
  for (const auto& op : ops_)
    if (op.action.var == x && front <= op.ts) out.push_back(&op);
  return out;
}

Timestamp ComponentState::max_ts(VarId x) const { return last_op(x).ts; }

const OpRecord& ComponentState::last_op(VarId x) const {
  const OpRecord* best = nullptr;
  for (const auto& op : ops_)
    if (op.action.var == x && (!best || best->ts < op.ts)) best = &op;
  if (!best) throw Error("no operation on variable #" + std::to_string(x));
  return *best;
}

Timestamp ComponentState::fresh_after(const Timestamp& q) const {
  std::optional<Timestamp> upper;
  for (const auto& op : ops_)
    if (q < op.ts && (!upper || op.ts < *upper)) upper = op.ts;
  Timestamp out = upper ? Timestamp::midpoint(q, *upper) : q.next_integer();
  assert(is_fresh(q, out));
  return out;
}

bool ComponentState::is_fresh(const Timestamp& q, const Timestamp& candidate) const {
  if (!(q < candidate)) return false;
  for (const auto& op : ops_)
    if (q < op.ts && !(candidate < op.ts)) return false;
  return true;
}

void ComponentState::add_op(OpRecord op) {
  auto key = std::pair(op.ts, op.action.var);
  auto it = std::lower_bound(ops_.begin(), ops_.end(), key, [](const OpRecord& o, const auto& k) {
    return std::pair(o.ts, o.action.var) < k;
  });
  if (it != ops_.end() && it->ts == op.ts && it->action.var == op.action.var)
    throw Error("duplicate timestamp " + op.ts.to_string() + " on one variable");
  ops_.insert(it, std::move(op));
}

void ComponentState::cover(VarId x, const Timestamp& ts) {
  for (auto& op : ops_)
    if (op.action.var == x && op.ts == ts) {
      op.covered = true;
      return;
    }
  throw Error("cover: no such op");
}

InitialStates make_init_states(const VarTable& vars,
                               const std::vector<std::pair<VarId, Value>>& assignments,
                               const std::vector<ThreadId>& threads) {
  const std::size_t n = vars.size();
  std::vector<std::optional<Value>> init(n);
  for (const auto& [x, v] : assignments) {
    if (x >= n) throw InputError("initialisation of unknown variable");
    if (vars[x].kind != VarKind::Plain) throw InputError("object '" + vars.name(x) + "' cannot be assigned");
    if (init[x]) throw InputError("duplicate initialisation of '" + vars.name(x) + "'");
    init[x] = v;
  }

  std::vector<Action> init_ops;
  View everything(n);
  for (VarId x = 0; x < n; ++x) {
    switch (vars[x].kind) {
      case VarKind::Plain:
        if (!init[x]) throw InputError("global '" + vars.name(x) + "' is never initialised");
        init_ops.push_back(Action::write(x, *init[x]));
        break;
      case VarKind::Lock:
        init_ops.push_back(Action::lock_init(x));
        break;
      case VarKind::Queue:
        init_ops.push_back(Action::queue_init(x));
        break;
    }
    everything.set(x, Timestamp(0));
  }

  InitialStates out{ComponentState(n), ComponentState(n)};
  View client_view(n), library_view(n);
  for (VarId x = 0; x < n; ++x) {
    (vars.component(x) == Component::Client ? client_view : library_view).set(x, Timestamp(0));
  }
  for (const auto& a : init_ops) {
    ComponentState& side = vars.component(a.var) == Component::Client ? out.client : out.library;
    side.add_op(OpRecord{a, Timestamp(0), everything, false});
  }
  for (ThreadId t : threads) {
    out.client.set_tview(t, client_view);
    out.library.set_tview(t, library_view);
  }
  return out;
}

}  // namespace viewcheck
