#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "viewcheck/assertion.hpp"
#include "viewcheck/error.hpp"
#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"
#include "support/support.hpp"

using namespace viewcheck;

namespace {

Value I(std::int64_t n) { return Value::integer(n); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The program of `text` with its final assertion replaced by `a`.
LitmusFile with_final(const std::string& text, const std::string& a) {
  static const std::regex final_re(R"(final\s*\{[^}]*\})");
  return parse_litmus(std::regex_replace(text, final_re, "") + "\nfinal { " + a + " }\n");
}

bool holds(const LitmusFile& f, const Configuration& cfg) { return eval_assertion(*f.outline.final, f.sys, cfg); }

// Some explored configuration satisfying `where`.
struct Probe {
  std::string text;
  LitmusFile base;
  ExploreResult r;

  explicit Probe(std::string t) : text(std::move(t)), base(parse_litmus(text)), r(explore(base.sys)) {}

  const Configuration* find(const std::string& where) const {
    LitmusFile sel = with_final(text, where);
    for (const auto& n : r.nodes)
      if (holds(sel, n.cfg)) return &n.cfg;
    return nullptr;
  }
  bool eval(const std::string& a, const Configuration& cfg) const { return holds(with_final(text, a), cfg); }
};

const char* kMp =
    "litmus mp\ninit { d = 0; f = 0 }\n"
    "thread 1 { 1: { true } d := 5; 2: { true } f :=R 1; 3: { true } skip }\n"
    "thread 2 { 1: { true } r <-A f; 2: { true } skip }\n"
    "final { true }\n";

}  // namespace

TEST_SUITE("assertions") {
  TEST_CASE("possible observation") {
    Probe p(kMp);
    const Configuration init = initial_configuration(p.base.sys);
    CHECK(p.eval("pobs(1, d = 0)", init));
    CHECK_FALSE(p.eval("pobs(1, d = 5)", init));

    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    const Configuration* c = lock.find("pc(1) = 5 && pc(2) = 1");
    REQUIRE(c);
    CHECK(lock.eval("pobs(2, l.release_2)", *c));
  }

  TEST_CASE("definite observation") {
    Probe p(kMp);
    const Configuration init = initial_configuration(p.base.sys);
    CHECK(p.eval("dobs(1, d = 0) && dobs(2, d = 0)", init));
    const Configuration* c = p.find("pc(1) = 2");
    REQUIRE(c);
    CHECK(p.eval("dobs(1, d = 5)", *c));
    CHECK_FALSE(p.eval("dobs(2, d = 5)", *c));
    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    CHECK(lock.eval("dobs(1, l.init_0) && dobs(2, l.init_0)", initial_configuration(lock.base.sys)));
  }

  TEST_CASE("definite uniqueness") {
    Probe p(kMp);
    for (const auto& n : p.r.nodes) CHECK_FALSE(p.eval("dobs(2, d = 0) && dobs(2, d = 5)", n.cfg));
  }

  TEST_CASE("conditional observation") {
    Probe p(kMp);
    const Configuration init = initial_configuration(p.base.sys);
    // no observable write of 1 to f: vacuous
    CHECK(p.eval("cond(2, f = 1, d = 5)", init));
    const Configuration* c = p.find("pc(1) = 3 && pc(2) = 1");
    REQUIRE(c);
    CHECK(p.eval("cond(2, f = 1, d = 5)", *c));
    CHECK_FALSE(p.eval("cond(2, f = 0, d = 5)", *c));  // the init write is not releasing

    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    const Configuration* q = lock.find("pc(1) = 5 && pc(2) = 1");
    REQUIRE(q);
    CHECK(lock.eval("cond(2, l.release_2, d1 = 5) && cond(2, l.release_2, d2 = 5)", *q));
  }

  TEST_CASE("covered and hidden") {
    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    const Configuration init = initial_configuration(lock.base.sys);
    CHECK(lock.eval("cvd(l.init_0)", init));
    CHECK_FALSE(lock.eval("cvv(l.init_0)", init));
    CHECK_FALSE(lock.eval("cvv(l.release_4)", init));
    const Configuration* c = lock.find("pc(1) = 2");
    REQUIRE(c);
    CHECK(lock.eval("cvd(l.acquire_1)", *c));
    CHECK(lock.eval("cvv(l.init_0)", *c));
    CHECK_FALSE(lock.eval("cvd(l.init_0)", *c));
  }

  TEST_CASE("two uncovered ops are not covered") {
    VarTable vars;
    const VarId x = vars.add("x", Component::Client);
    ComponentState s(1);
    s.add_op(OpRecord{Action::write(x, I(0)), Timestamp(0), View(1), false});
    s.add_op(OpRecord{Action::write(x, I(1)), Timestamp(1), View(1), false});
    auto is1 = [&](const Action& a) { return a == Action::write(x, I(1)); };
    CHECK_FALSE(eval_covered(s, x, is1));
    s.cover(x, Timestamp(0));
    CHECK(eval_covered(s, x, is1));
  }

  TEST_CASE("connectives, pcs and registers") {
    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    const Configuration init = initial_configuration(lock.base.sys);
    CHECK(lock.eval("true", init));
    CHECK_FALSE(lock.eval("false", init));
    CHECK(lock.eval("!(pc(1) in {2, 3, 4} && pc(2) in {2, 3, 4}) && rl in {1, 3}", init));
    CHECK_FALSE(lock.eval("true && false && true", init));
    CHECK(lock.eval("false => false", init));
    CHECK(lock.eval("forall v in {0, 5}: (v = 0 || v = 5)", init));
    CHECK(lock.eval("exists v: dobs(1, d1 = v)", init));
    CHECK_FALSE(lock.eval("exists v in {1, 2}: dobs(1, d1 = v)", init));
  }

  TEST_CASE("lifting picks the component") {
    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    const Configuration init = initial_configuration(lock.base.sys);
    CHECK(lock.eval("dobs(1, d1 = 0)@C", init));
    CHECK(lock.eval("dobs(1, l.init_0)@L", init));
    CHECK_THROWS_AS(lock.eval("dobs(1, d1 = 0)@L", init), InputError);
  }

  TEST_CASE("unknown names are rejected") {
    CHECK_THROWS_AS(with_final(kMp, "dobs(1, zz = 0)"), InputError);
    CHECK_THROWS_AS(with_final(kMp, "cvd(zz.acquire_1)"), InputError);
  }

  TEST_CASE("definite implies possible on every state of the lock client") {
    Probe lock(read_file(vtest::corpus("lockmp.lit")));
    for (const auto& n : lock.r.nodes)
      CHECK(lock.eval("forall v in {0, 5}: (dobs(2, d1 = v) => pobs(2, d1 = v)) && (dobs(1, d2 = v) => pobs(1, d2 = v))",
                      n.cfg));
  }
}
