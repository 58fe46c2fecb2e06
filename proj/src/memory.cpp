#include "viewcheck/memory.hpp"

#include "viewcheck/error.hpp"

namespace viewcheck {

std::vector<MemSucc> mem_read(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a) {
  std::vector<MemSucc> out;
  for (const OpRecord* w : exec.observable(t, a.var)) {
    if (!w->action.is_write() || w->action.wrval() != a.value) continue;
    MemSucc s{exec, ctx};
    if (w->action.is_releasing() && a.is_acquiring()) {
      s.exec.set_tview(t, merge_views(exec.tview(t), w->mview));
      s.ctx.set_tview(t, merge_views(ctx.tview(t), w->mview));
    } else {
      View v = exec.tview(t);
      v.set(a.var, w->ts);
      s.exec.set_tview(t, std::move(v));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MemSucc> mem_write(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a) {
  std::vector<MemSucc> out;
  for (const OpRecord* w : exec.observable(t, a.var)) {
    if (w->covered) continue;
    const Timestamp q = exec.fresh_after(w->ts);
    View tv = exec.tview(t);
    tv.set(a.var, q);
    MemSucc s{exec, ctx};
    s.exec.add_op(OpRecord{a, q, union_views(tv, ctx.tview(t)), false});
    s.exec.set_tview(t, std::move(tv));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MemSucc> mem_update(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a) {
  std::vector<MemSucc> out;
  for (const OpRecord* w : exec.observable(t, a.var)) {
    if (w->covered || !w->action.is_write() || w->action.wrval() != a.value) continue;
    const Timestamp q = exec.fresh_after(w->ts);
    View tv = exec.tview(t);
    tv.set(a.var, q);
    View ctv = ctx.tview(t);
    if (w->action.is_releasing()) {
      tv = merge_views(tv, w->mview);
      ctv = merge_views(ctv, w->mview);
    }
    MemSucc s{exec, ctx};
    s.exec.cover(a.var, w->ts);
    s.exec.add_op(OpRecord{a, q, union_views(tv, ctv), false});
    s.exec.set_tview(t, std::move(tv));
    s.ctx.set_tview(t, std::move(ctv));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<MemSucc> mem_step(const ComponentState& exec, const ComponentState& ctx, ThreadId t, const Action& a) {
  switch (a.kind) {
    case ActionKind::Read:
      return mem_read(exec, ctx, t, a);
    case ActionKind::Write:
      return mem_write(exec, ctx, t, a);
    case ActionKind::Update:
      return mem_update(exec, ctx, t, a);
    default:
      throw Error("mem_step: not a memory action");
  }
}

}  // namespace viewcheck
