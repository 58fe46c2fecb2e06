#include <doctest.h>

#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"
#include "viewcheck/lock_rules.hpp"
#include "support/support.hpp"

using namespace viewcheck;

TEST_SUITE("lock_rules") {
  TEST_CASE("the rules hold on every lock step") {
    for (const char* name : {"lockmp.lit", "lock-stress.lit"}) {
      CAPTURE(name);
      const LitmusFile f = load_litmus(vtest::corpus(name));
      const auto reports = check_lock_rules(f.sys, false);
      REQUIRE(reports.size() == 6);
      for (const auto& r : reports) {
        CAPTURE(r.rule);
        CHECK(r.instances > 0);
        CHECK(r.violations == 0);
      }
    }
  }

  TEST_CASE("every mutant is falsified") {
    const LitmusFile f = load_litmus(vtest::corpus("lock-stress.lit"));
    const auto reports = check_lock_rules(f.sys, true);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
      CAPTURE(r.rule);
      CHECK(r.mutant);
      CHECK(r.violations > 0);
      REQUIRE_FALSE(r.witness.empty());
      CHECK(replay(f.sys, r.witness));
    }
  }

  TEST_CASE("rules need the transition graph") {
    const LitmusFile f = load_litmus(vtest::corpus("lockmp.lit"));
    CHECK_THROWS(check_lock_rules(f.sys, explore(f.sys), false));
  }
}
