#include <doctest.h>

#include <set>

#include "viewcheck/error.hpp"
#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"
#include "viewcheck/assertion.hpp"
#include "viewcheck/state.hpp"
#include "support/support.hpp"

using namespace viewcheck;

namespace {

Value I(std::int64_t n) { return Value::integer(n); }

ComponentState with_ops(std::size_t nvars, const std::vector<std::pair<VarId, Timestamp>>& ops) {
  ComponentState s(nvars);
  for (auto [x, ts] : ops) s.add_op(OpRecord{Action::write(x, I(0)), ts, View(nvars), false});
  return s;
}

}  // namespace

TEST_SUITE("core_state") {
  TEST_CASE("timestamps are normalised rationals") {
    CHECK(Timestamp(2, 4) == Timestamp(1, 2));
    CHECK(Timestamp(3, -6) == Timestamp(-1, 2));
    CHECK(Timestamp::midpoint(Timestamp(0), Timestamp(1)) == Timestamp(1, 2));
    CHECK(Timestamp(5, 2).next_integer() == Timestamp(3));
    CHECK(Timestamp(2).next_integer() == Timestamp(3));
    CHECK(Timestamp(1, 3) < Timestamp(1, 2));
    CHECK(Timestamp(3, 4).to_string() == "3/4");
  }

  TEST_CASE("initial states") {
    VarTable vars;
    const VarId d = vars.add("d", Component::Client);
    const VarId l = vars.add("l", Component::Library, VarKind::Lock);
    auto init = make_init_states(vars, {{d, I(0)}}, {1, 2});
    REQUIRE(init.client.ops().size() == 1);
    CHECK(init.client.ops()[0].action == Action::write(d, I(0)));
    CHECK(init.client.ops()[0].ts == Timestamp(0));
    REQUIRE(init.library.ops().size() == 1);
    CHECK(init.library.ops()[0].action == Action::lock_init(l));
    for (const auto& op : init.client.ops()) CHECK_FALSE(op.covered);

    VarTable none;
    auto empty = make_init_states(none, {}, {1});
    CHECK(empty.client.ops().empty());
    CHECK(empty.library.ops().empty());
  }

  TEST_CASE("initialisation errors") {
    VarTable vars;
    const VarId d = vars.add("d", Component::Client);
    CHECK_THROWS_AS(make_init_states(vars, {}, {1}), InputError);
    CHECK_THROWS_AS(make_init_states(vars, {{d, I(0)}, {d, I(1)}}, {1}), InputError);
  }

  TEST_CASE("every thread definitely sees the initial values") {
    VarTable vars;
    const VarId d1 = vars.add("d1", Component::Client);
    const VarId d2 = vars.add("d2", Component::Client);
    auto init = make_init_states(vars, {{d1, I(0)}, {d2, I(0)}}, {1, 2});
    for (ThreadId t : {1, 2})
      for (VarId x : {d1, d2}) CHECK(eval_definite(init.client, t, x, I(0)));
  }

  TEST_CASE("observable ops") {
    ComponentState s = with_ops(1, {{0, Timestamp(0)}, {0, Timestamp(1)}, {0, Timestamp(2)}});
    View v(1);
    v.set(0, Timestamp(0));
    s.set_tview(1, v);
    CHECK(s.observable(1, 0).size() == 3);
    v.set(0, Timestamp(1));
    s.set_tview(1, v);
    auto obs = s.observable(1, 0);
    REQUIRE(obs.size() == 2);
    CHECK(obs[0]->ts == Timestamp(1));
    CHECK(obs[1]->ts == Timestamp(2));
  }

  TEST_CASE("max_ts") {
    ComponentState s = with_ops(1, {{0, Timestamp(0)}, {0, Timestamp(3)}, {0, Timestamp(7)}});
    CHECK(s.max_ts(0) == Timestamp(7));
    CHECK(s.last_op(0).ts == Timestamp(7));
  }

  TEST_CASE("merge_views") {
    View a(2), b(2);
    a.set(0, Timestamp(2));
    a.set(1, Timestamp(0));
    b.set(0, Timestamp(1));
    b.set(1, Timestamp(3));
    CHECK(merge_views(a, a) == a);
    View m = merge_views(a, b);
    CHECK(m.at(0) == Timestamp(2));
    CHECK(m.at(1) == Timestamp(3));
    View only(2);
    only.set(0, Timestamp(1));
    View m2 = merge_views(only, b);
    CHECK(m2.at(0) == Timestamp(1));
    CHECK_FALSE(m2.defined(1));  // the domain is the left operand's
  }

  TEST_CASE("fresh timestamps") {
    CHECK(with_ops(1, {{0, Timestamp(0)}}).fresh_after(Timestamp(0)) == Timestamp(1));
    CHECK(with_ops(1, {{0, Timestamp(0)}, {0, Timestamp(1)}}).fresh_after(Timestamp(0)) == Timestamp(1, 2));
    ComponentState s = with_ops(1, {{0, Timestamp(0)}, {0, Timestamp(1, 2)}, {0, Timestamp(1)}});
    CHECK(s.fresh_after(Timestamp(1, 2)) == Timestamp(3, 4));
    CHECK(s.is_fresh(Timestamp(1, 2), Timestamp(3, 4)));
    CHECK_FALSE(s.is_fresh(Timestamp(1, 2), Timestamp(1)));
    CHECK_FALSE(s.is_fresh(Timestamp(1, 2), Timestamp(2)));
    // freshness is global over variables
    ComponentState two = with_ops(2, {{0, Timestamp(0)}, {1, Timestamp(1)}});
    CHECK(two.fresh_after(Timestamp(0)) == Timestamp(1, 2));
  }

  TEST_CASE("canonical keys") {
    const LitmusFile f = load_litmus(vtest::corpus("mp-relacq.lit"));
    const ExploreResult r = explore(f.sys);
    for (const auto& n : r.nodes) CHECK(canonical_key(n.cfg, f.sys.vars) == canonical_key(n.cfg, f.sys.vars));

    // doubling every timestamp keeps the key
    const Configuration& cfg = r.nodes.back().cfg;
    Configuration doubled = cfg;
    auto dbl = [](Timestamp t) { return Timestamp(t.num() * 2, t.den()); };
    for (ComponentState* s : {&doubled.client, &doubled.library}) {
      ComponentState fresh(s->nvars());
      for (OpRecord op : s->ops()) {
        op.ts = dbl(op.ts);
        for (VarId x = 0; x < op.mview.size(); ++x)
          if (op.mview.defined(x)) op.mview.set(x, dbl(op.mview.at(x)));
        fresh.add_op(op);
      }
      for (auto [t, v] : s->tviews()) {
        for (VarId x = 0; x < v.size(); ++x)
          if (v.defined(x)) v.set(x, dbl(v.at(x)));
        fresh.set_tview(t, v);
      }
      *s = fresh;
    }
    CHECK(canonical_key(doubled, f.sys.vars) == canonical_key(cfg, f.sys.vars));

    // distinct explored nodes have distinct keys
    std::set<std::string> keys;
    for (const auto& n : r.nodes) keys.insert(canonical_key(n.cfg, f.sys.vars));
    CHECK(keys.size() == r.nodes.size());
  }

  TEST_CASE("swapping the order of two ops changes the key") {
    const LitmusFile f = parse_litmus("litmus t\ninit { x = 0 }\nthread 1 { x := 1 }\n");
    const ExploreResult r = explore(f.sys);
    const Configuration& cfg = r.nodes.back().cfg;
    Configuration swapped = cfg;
    auto& ops = swapped.client.ops_mut();
    REQUIRE(ops.size() == 2);
    std::swap(ops[0].action, ops[1].action);
    CHECK(canonical_key(swapped, f.sys.vars) != canonical_key(cfg, f.sys.vars));
  }
}
