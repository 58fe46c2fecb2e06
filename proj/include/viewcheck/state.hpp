#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "viewcheck/action.hpp"
#include "viewcheck/timestamp.hpp"

namespace viewcheck {

/// A view maps each variable in its domain to the timestamp of one op on
/// that variable. Since (variable, timestamp) identifies an op uniquely
/// within a component, storing the timestamp is enough.
class View {
 public:
  View() = default;
  explicit View(std::size_t nvars) : entries_(nvars) {}

  bool defined(VarId x) const { return x < entries_.size() && entries_[x].has_value(); }
  const Timestamp& at(VarId x) const;
  const std::optional<Timestamp>& get(VarId x) const { return entries_.at(x); }
  void set(VarId x, Timestamp ts) { entries_.at(x) = ts; }
  void erase(VarId x) { entries_.at(x).reset(); }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const View&) const = default;

 private:
  std::vector<std::optional<Timestamp>> entries_;
};

/// V1 ⊗ V2 over dom(V1): the later of the two entries wherever both are
/// defined.
View merge_views(const View& v1, const View& v2);

/// Union of two views with disjoint domains (V1 wins on overlap).
View union_views(const View& v1, const View& v2);

struct OpRecord {
  Action action;
  Timestamp ts;
  View mview;
  bool covered = false;
};

/// One side of the composed weak-memory state: ops, thread views,
/// modification views, covered set and (queues only) matched pairs.
class ComponentState {
 public:
  ComponentState() = default;
  explicit ComponentState(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }

  const std::vector<OpRecord>& ops() const { return ops_; }
  std::vector<OpRecord>& ops_mut() { return ops_; }
  const OpRecord* find(VarId x, const Timestamp& ts) const;
  const OpRecord& op_at(VarId x, const Timestamp& ts) const;
  std::vector<const OpRecord*> ops_on(VarId x) const;
  bool has_ops_on(VarId x) const;

  const std::map<ThreadId, View>& tviews() const { return tview_; }
  std::map<ThreadId, View>& tviews_mut() { return tview_; }
  const View& tview(ThreadId t) const;
  void set_tview(ThreadId t, View v) { tview_[t] = std::move(v); }

  const std::vector<std::pair<Timestamp, Timestamp>>& matched() const { return matched_; }
  std::vector<std::pair<Timestamp, Timestamp>>& matched_mut() { return matched_; }
  void add_matched(Timestamp enq, Timestamp deq);

  /// Obs(t, x): ops on x no earlier than t's viewfront for x.
  std::vector<const OpRecord*> observable(ThreadId t, VarId x) const;

  /// Largest timestamp among ops on x.
  Timestamp max_ts(VarId x) const;
  const OpRecord& last_op(VarId x) const;

  /// A timestamp strictly after q and strictly before every op timestamp
  /// greater than q (of any variable): the midpoint of that open interval,
  /// or the next integer when nothing lies above q.
  Timestamp fresh_after(const Timestamp& q) const;
  bool is_fresh(const Timestamp& q, const Timestamp& candidate) const;

  void add_op(OpRecord op);
  void cover(VarId x, const Timestamp& ts);

  bool operator==(const ComponentState&) const = default;

 private:
  std::size_t nvars_ = 0;
  std::vector<OpRecord> ops_;  // sorted by (ts, var)
  std::map<ThreadId, View> tview_;
  std::vector<std::pair<Timestamp, Timestamp>> matched_;
};

struct InitialStates {
  ComponentState client;
  ComponentState library;
};

/// Builds γ_Init and β_Init. Every plain global must appear exactly once
/// in `assignments`; lock and queue objects are initialised implicitly.
InitialStates make_init_states(const VarTable& vars,
                               const std::vector<std::pair<VarId, Value>>& assignments,
                               const std::vector<ThreadId>& threads);

}  // namespace viewcheck
