#include "viewcheck/outline.hpp"

#include <functional>
#include <map>
#include <set>

namespace viewcheck {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid:
      return "valid";
    case Verdict::Invalid:
      return "invalid";
    case Verdict::Unknown:
      return "unknown-beyond-bound";
  }
  return "?";
}

HoareReport check_hoare(const System& sys, const Assertion& pre, const Assertion& post, const ExploreOptions& opts) {
  HoareReport r;
  if (!eval_assertion(pre, sys, canonicalize(initial_configuration(sys), sys.vars))) return r;
  const ExploreResult ex = explore(sys, opts);
  r.states = ex.states();
  r.truncated = ex.truncated;
  for (int t : ex.terminals)
    if (!eval_assertion(post, sys, ex.nodes[t].cfg)) {
      r.verdict = Verdict::Invalid;
      r.witness = ex.path_to(t);
      return r;
    }
  if (ex.truncated) r.verdict = Verdict::Unknown;
  return r;
}

namespace {

constexpr std::size_t kMaxReportedPerAssertion = 3;

class OutlineChecker {
 public:
  OutlineChecker(const System& sys, const ProofOutline& outline, const ExploreOptions& opts)
      : sys_(sys), outline_(outline), opts_(opts) {}

  OutlineReport run();

 private:
  AssertionVerdict& verdict(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, report_.assertions.size()).first;
      report_.assertions.push_back(AssertionVerdict{name, 0, 0});
    }
    return report_.assertions[it->second];
  }

  void record(const std::string& name, bool ok, const std::string& check, int node, const std::string& detail) {
    AssertionVerdict& v = verdict(name);
    ++v.checks;
    if (ok) return;
    ++v.failures;
    report_.verdict = Verdict::Invalid;
    if (v.failures <= kMaxReportedPerAssertion)
      report_.violations.push_back(OutlineViolation{check, name, ex_.path_to(node), detail});
  }

  std::string name_of(int thread, int label) const {
    return "T" + std::to_string(sys_.threads[thread].id) + "@" + std::to_string(label);
  }

  // Annotation of `thread` in `cfg`, or null when the thread has no pc.
  // Labels without an annotation are reported once.
  const Assertion* annotation(const Configuration& cfg, int thread, std::optional<int>& label) {
    label = program_counter(*cfg.threads[thread].prog);
    if (!label) return nullptr;
    const Assertion* a = outline_.at(thread, *label);
    if (!a && missing_.insert({thread, *label}).second) {
      report_.verdict = Verdict::Invalid;
      report_.violations.push_back(
          OutlineViolation{"missing", name_of(thread, *label), {}, "label has no annotation"});
    }
    return a;
  }

  bool holds(const Assertion& a, const Configuration& cfg) const { return eval_assertion(a, sys_, cfg); }

  void reachability();
  void local_correctness();
  void interference();

  std::vector<std::vector<int>> havoc_slots() const;

  const System& sys_;
  const ProofOutline& outline_;
  ExploreOptions opts_;
  ExploreResult ex_;
  OutlineReport report_;
  std::map<std::string, std::size_t> index_;
  std::set<std::pair<int, int>> missing_;
};

void OutlineChecker::reachability() {
  record("pre", holds(*outline_.pre, ex_.nodes[0].cfg), "reachability", 0, "precondition fails initially");
  for (std::size_t n = 0; n < ex_.nodes.size(); ++n) {
    const Configuration& cfg = ex_.nodes[n].cfg;
    const int node = static_cast<int>(n);
    record("inv", holds(*outline_.invariant, cfg), "reachability", node, "invariant fails");
    for (std::size_t t = 0; t < cfg.threads.size(); ++t) {
      std::optional<int> label;
      if (const Assertion* a = annotation(cfg, static_cast<int>(t), label))
        record(name_of(static_cast<int>(t), *label), holds(*a, cfg), "reachability", node, "annotation fails");
    }
  }
  for (int t : ex_.terminals)
    record("final", holds(*outline_.final, ex_.nodes[t].cfg), "reachability", t, "final assertion fails");
}

std::vector<std::vector<int>> OutlineChecker::havoc_slots() const {
  // Registers mentioned anywhere in the outline, per thread.
  std::set<std::pair<int, int>> mentioned;
  std::function<void(const TermPtr&)> term = [&](const TermPtr& t) {
    if (!t) return;
    if (t->reg) mentioned.insert({t->reg->thread, t->reg->slot});
    term(t->lhs);
    term(t->rhs);
  };
  std::function<void(const Assertion&)> walk = [&](const Assertion& a) {
    term(a.a);
    term(a.b);
    term(a.u);
    term(a.v);
    for (const auto& s : a.set) term(s);
    for (const auto& c : a.args) walk(*c);
  };
  walk(*outline_.pre);
  walk(*outline_.invariant);
  walk(*outline_.final);
  for (const auto& [k, a] : outline_.annotations) walk(*a);

  std::vector<std::vector<int>> out(sys_.threads.size());
  for (const auto& [t, s] : mentioned) {
    const RegKind k = sys_.threads[t].regs[s].kind;
    if (k == RegKind::Client || k == RegKind::Ghost) out[t].push_back(s);
  }
  return out;
}

void OutlineChecker::local_correctness() {
  const auto slots = havoc_slots();
  for (std::size_t n = 0; n < ex_.nodes.size(); ++n) {
    const Configuration& base = ex_.nodes[n].cfg;
    for (std::size_t ti = 0; ti < base.threads.size(); ++ti) {
      const int t = static_cast<int>(ti);
      std::optional<int> label;
      const Assertion* pre = annotation(base, t, label);
      if (!pre || is_terminated(*base.threads[t].prog)) continue;
      const std::string name = name_of(t, *label);

      // Enumerate every assignment of the domain to the havocked registers.
      const std::vector<int>& regs = slots[t];
      std::vector<std::size_t> digit(regs.size(), 0);
      for (;;) {
        Configuration cfg = base;
        for (std::size_t k = 0; k < regs.size(); ++k) cfg.threads[t].ls.set(regs[k], sys_.domain[digit[k]]);
        if (holds(*outline_.invariant, cfg) && holds(*pre, cfg)) {
          for (const Step& s : thread_successors(sys_, cfg, t)) {
            std::optional<int> next_label;
            const Assertion* post = annotation(s.next, t, next_label);
            const bool ok = holds(*outline_.invariant, s.next) && (!post || holds(*post, s.next));
            if (!ok) {
              std::string detail = "step " + step_label(sys_, s) + " from a state satisfying " + name;
              if (!regs.empty()) {
                detail += " with";
                for (std::size_t k = 0; k < regs.size(); ++k)
                  detail += " " + sys_.threads[t].regs[regs[k]].name + "=" + sys_.domain[digit[k]].to_string();
              }
              detail += " breaks " + (post ? name_of(t, *next_label) : std::string("inv"));
              record(next_label ? name_of(t, *next_label) : "inv", false, "local", static_cast<int>(n), detail);
            } else {
              verdict(next_label ? name_of(t, *next_label) : "inv").checks++;
            }
          }
        }
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == sys_.domain.size()) digit[k++] = 0;
        if (k == digit.size()) break;
      }
    }
  }
}

void OutlineChecker::interference() {
  for (std::size_t n = 0; n < ex_.nodes.size(); ++n) {
    const Configuration& cfg = ex_.nodes[n].cfg;
    for (std::size_t ti = 0; ti < cfg.threads.size(); ++ti) {
      const int t = static_cast<int>(ti);
      std::optional<int> label;
      const Assertion* p = annotation(cfg, t, label);
      if (!p || !holds(*p, cfg)) continue;
      for (const Edge& e : ex_.edges[n]) {
        if (e.thread == t) continue;
        std::optional<int> other_label;
        const Assertion* pre_r = annotation(cfg, e.thread, other_label);
        if (pre_r && !holds(*pre_r, cfg)) continue;
        const bool ok = holds(*p, ex_.nodes[e.target].cfg);
        record(name_of(t, *label), ok, "interference", static_cast<int>(n),
               "step " + e.action.to_string(sys_.vars) + " of T" + std::to_string(sys_.threads[e.thread].id) +
                   " invalidates " + name_of(t, *label));
      }
    }
  }
}

OutlineReport OutlineChecker::run() {
  ExploreOptions opts = opts_;
  opts.keep_edges = true;
  ex_ = explore(sys_, opts);
  report_.states = ex_.states();
  report_.truncated = ex_.truncated;
  reachability();
  local_correctness();
  interference();
  if (report_.verdict == Verdict::Valid && report_.truncated) report_.verdict = Verdict::Unknown;
  return report_;
}

}  // namespace

OutlineReport check_outline(const System& sys, const ProofOutline& outline, const ExploreOptions& opts) {
  return OutlineChecker(sys, outline, opts).run();
}

}  // namespace viewcheck
