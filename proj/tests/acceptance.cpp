// One line per acceptance criterion. Limits are fixed here, not tuned per run.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"
#include "viewcheck/lock_rules.hpp"
#include "viewcheck/outline.hpp"
#include "viewcheck/refinement.hpp"
#include "support/support.hpp"

using namespace viewcheck;

namespace {

constexpr double kMpSeconds = 1.0;
constexpr std::size_t kMpStates = 10000;
constexpr double kQueueSeconds = 5.0;
constexpr double kLockSeconds = 10.0;
constexpr double kRefineSeconds = 60.0;
constexpr std::size_t kPropertyStates = 1000;
constexpr unsigned kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::set<Value> values_of(const LitmusFile& f, const ExploreResult& r, const std::string& reg) {
  std::size_t k = 0;
  while (k < f.sys.observed.size() && f.sys.observed[k].name != reg) ++k;
  std::set<Value> out;
  if (k == f.sys.observed.size()) return out;
  for (const auto& [vals, node] : r.outcomes) out.insert(vals[k]);
  return out;
}

std::string show(const std::set<Value>& vs) {
  std::string s = "{";
  for (const Value& v : vs) s += (s.size() > 1 ? "," : "") + v.to_string();
  return s + "}";
}

const Value kFive = Value::integer(5), kZero = Value::integer(0);

Outcome mp(const char* file, const std::set<Value>& expect, double limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const LitmusFile f = load_litmus(vtest::corpus(file));
  const ExploreResult r = explore(f.sys);
  const double secs = seconds_since(t0);
  const auto r2 = values_of(f, r, "r2");
  Outcome v;
  v.pass = r2 == expect && !r.truncated && secs < limit && r.states() < kMpStates;
  v.detail = std::string(file) + ": r2 " + show(r2) + ", " + std::to_string(r.states()) + " states, " +
             fmt_seconds(secs);
  return v;
}

Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const LitmusFile f = load_litmus(vtest::corpus("queue-mp.lit"));
  const ExploreResult r = explore(f.sys);
  const auto r2 = values_of(f, r, "r2");
  // the loop-free variant is explored completely
  const LitmusFile once = load_litmus(vtest::corpus("queue-mp-once.lit"));
  const ExploreResult ro = explore(once.sys);
  bool once_ok = !ro.truncated;
  for (int t : ro.terminals) once_ok = once_ok && eval_assertion(*once.outline.final, once.sys, ro.nodes[t].cfg);
  const double secs = seconds_since(t0);
  Outcome v;
  v.pass = r2 == std::set<Value>{kFive} && once_ok && secs < kQueueSeconds;
  v.detail = "queue-mp: r2 " + show(r2) + " over " + std::to_string(r.states()) + " states" +
             (r.truncated ? " (spin loop cut at the bound)" : "") + "; queue-mp-once r1=1 => r2=5 " +
             (once_ok ? "holds" : "fails") + ", " + fmt_seconds(secs);
  return v;
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const LitmusFile f = load_litmus(vtest::corpus("lockmp.lit"));
  const ExploreResult r = explore(f.sys);
  std::set<std::vector<Value>> got;
  for (const auto& [vals, node] : r.outcomes) got.insert(vals);
  std::size_t inv_fail = 0;
  for (const auto& n : r.nodes) inv_fail += !eval_assertion(*f.outline.invariant, f.sys, n.cfg);
  const double secs = seconds_since(t0);
  Outcome v;
  v.pass = got == std::set<std::vector<Value>>{{kZero, kZero}, {kFive, kFive}} && inv_fail == 0 && !r.truncated &&
           secs < kLockSeconds;
  v.detail = "(r1,r2) outcomes " + std::to_string(got.size()) + ", inv violated in " + std::to_string(inv_fail) +
             " of " + std::to_string(r.states()) + " states, " + fmt_seconds(secs);
  return v;
}

Outcome criterion5() {
  const LitmusFile f = load_litmus(vtest::corpus("lockmp.lit"));
  const OutlineReport ok = check_outline(f.sys, f.outline, {});
  bool all_valid = ok.verdict == viewcheck::Verdict::Valid;
  for (const auto& a : ok.assertions) all_valid = all_valid && a.failures == 0;
  const LitmusFile m = load_litmus(vtest::corpus("lockmp-mutant.lit"));
  const OutlineReport bad = check_outline(m.sys, m.outline, {});
  bool witness = false;
  std::string where;
  for (const auto& viol : bad.violations)
    if (replay(m.sys, viol.path)) {
      witness = true;
      where = viol.assertion + " (" + viol.check + ")";
      break;
    }
  Outcome v;
  v.pass = all_valid && bad.verdict == viewcheck::Verdict::Invalid && witness;
  v.detail = std::to_string(ok.assertions.size()) + " assertions " + (all_valid ? "valid" : "NOT valid") +
             "; mutant " + verdict_name(bad.verdict) + (witness ? ", witness at " + where : ", no witness");
  return v;
}

Outcome criterion6() {
  std::size_t instances = 0, violations = 0;
  bool falsified[6] = {};
  for (const char* file : {"lockmp.lit", "lock-stress.lit"}) {
    const LitmusFile f = load_litmus(vtest::corpus(file));
    for (const auto& r : check_lock_rules(f.sys, false)) {
      instances += r.instances;
      violations += r.violations;
    }
    for (const auto& r : check_lock_rules(f.sys, true))
      if (r.violations > 0 && replay(f.sys, r.witness)) falsified[r.rule - 1] = true;
  }
  int nf = 0;
  for (bool b : falsified) nf += b;
  Outcome v;
  v.pass = violations == 0 && instances > 0 && nf == 6;
  v.detail = std::to_string(instances) + " rule instances, " + std::to_string(violations) + " violations; " +
             std::to_string(nf) + "/6 mutants falsified";
  return v;
}

Outcome refine(const char* impl, bool expect_found) {
  const auto t0 = std::chrono::steady_clock::now();
  const LitmusFile f = load_litmus(vtest::corpus("lockmp.lit"));
  const System conc = instantiate(f.sys, find_impl(impl));
  RefineOptions o;
  o.max_steps = 64;
  const SimulationReport rep = check_simulation(f.sys, conc, o);
  const double secs = seconds_since(t0);
  Outcome v;
  if (expect_found) {
    v.pass = rep.found && !rep.truncated && rep.traces_checked && rep.traces.holds && secs < kRefineSeconds;
    v.detail = std::string(impl) + ": simulation " + (rep.found ? "found" : "not found") + ", traces " +
               (rep.traces.holds ? "included" : "NOT included") + ", " + fmt_seconds(secs);
  } else {
    const bool cex = !rep.counterexample.empty() && replay(conc, rep.counterexample).has_value();
    v.pass = !rep.found && cex && secs < kRefineSeconds;
    v.detail = std::string(impl) + ": simulation " + (rep.found ? "found" : "not found") +
               (cex ? ", counterexample of " + std::to_string(rep.counterexample.size()) + " steps" : "") + ", " +
               fmt_seconds(secs);
  }
  return v;
}

Outcome both(Outcome a, Outcome b) { return {a.pass && b.pass, a.detail + "; " + b.detail}; }

Outcome criterion9() {
  using Prop = vtest::PropertyResult (*)(std::size_t, unsigned);
  const Prop props[] = {vtest::prop_freshness,         vtest::prop_update_atomicity,
                        vtest::prop_view_monotonicity, vtest::prop_definite_implies_possible,
                        vtest::prop_merge_pointwise_max, vtest::prop_canonical_key_invariance,
                        vtest::prop_queue_fifo};
  Outcome v{true, ""};
  unsigned seed = kSeed;
  for (Prop p : props) {
    const auto r = p(kPropertyStates, seed++);
    const bool ok = r.ok() && r.checked >= kPropertyStates;
    v.pass = v.pass && ok;
    if (!v.detail.empty()) v.detail += ", ";
    v.detail += r.name + " " + std::to_string(r.checked) + (ok ? "" : " FAILED: " + r.first);
  }
  return v;
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {
      [] { return mp("mp-relaxed.lit", {kZero, kFive}, kMpSeconds); },
      [] { return mp("mp-relacq.lit", {kFive}, kMpSeconds); },
      criterion3,
      criterion4,
      criterion5,
      criterion6,
      [] { return both(refine("seqlock", true), refine("ticketlock", true)); },
      [] { return both(refine("seqlock-relaxed", false), refine("ticketlock-relaxed", false)); },
      criterion9,
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    Outcome v;
    try {
      v = c();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] criterion %d: %s\n", v.pass ? "PASS" : "FAIL", k, v.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
