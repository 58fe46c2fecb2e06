#include "viewcheck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "viewcheck/error.hpp"
#include "viewcheck/fifo_oracle.hpp"
#include "viewcheck/litmus.hpp"
#include "viewcheck/lock_rules.hpp"
#include "viewcheck/outline.hpp"
#include "viewcheck/refinement.hpp"

namespace viewcheck {

namespace {

using nlohmann::json;

json to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int:
      return v.as_int();
    case Value::Kind::Bool:
      return v.as_bool();
    case Value::Kind::Empty:
      return "EMPTY";
    case Value::Kind::Bot:
      break;
  }
  return nullptr;
}

json witness_json(const std::vector<WitnessStep>& path) {
  json out = json::array();
  for (const auto& w : path) {
    json step{{"thread", w.thread}, {"label", w.label}};
    if (w.choice > 0) step["choice"] = w.choice;
    out.push_back(step);
  }
  return out;
}

std::string outcome_text(const System& sys, const std::vector<Value>& vals) {
  std::string s = "{";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) s += ", ";
    s += sys.observed[i].name + "=" + vals[i].to_string();
  }
  return s + "}";
}

json outcome_json(const System& sys, const std::vector<Value>& vals) {
  json o = json::object();
  for (std::size_t i = 0; i < vals.size(); ++i) o[sys.observed[i].name] = to_json(vals[i]);
  return o;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Valid:
      return kPass;
    case Verdict::Invalid:
      return kViolation;
    case Verdict::Unknown:
      return kBoundExhausted;
  }
  return kInputError;
}

struct Common {
  std::string file;
  int max_steps = -1;
  int jobs = 1;
  bool json = false;
};

ExploreOptions options_for(const LitmusFile& f, const Common& c) {
  ExploreOptions o;
  o.max_steps = c.max_steps >= 0 ? c.max_steps : f.max_steps;
  o.jobs = c.jobs;
  return o;
}

int cmd_explore(const Common& c, std::ostream& out) {
  const LitmusFile f = load_litmus(c.file);
  const ExploreOptions o = options_for(f, c);
  const ExploreResult r = explore(f.sys, o);

  // The final assertion (true when absent) must hold at every terminal.
  Verdict v = Verdict::Valid;
  std::vector<WitnessStep> witness;
  for (int t : r.terminals) {
    if (!eval_assertion(*f.outline.final, f.sys, r.nodes[t].cfg)) {
      v = Verdict::Invalid;
      witness = r.path_to(t);
      break;
    }
  }
  if (v == Verdict::Valid && r.truncated) v = Verdict::Unknown;

  if (c.json) {
    json j;
    j["verdict"] = verdict_name(v);
    j["states_explored"] = r.states();
    j["outcomes"] = json::array();
    for (const auto& [vals, node] : r.outcomes) j["outcomes"].push_back(outcome_json(f.sys, vals));
    j["witness"] = witness_json(witness);
    j["truncated"] = r.truncated;
    j["deadlocks"] = r.deadlocks.size();
    out << j.dump(2) << "\n";
  } else {
    out << f.name << ": " << r.states() << " states" << (r.truncated ? " (bound reached)" : "") << "\n";
    for (const auto& [vals, node] : r.outcomes)
      out << "  " << outcome_text(f.sys, vals) << "  via " << format_path(r.path_to(node)) << "\n";
    if (!r.deadlocks.empty()) out << "  " << r.deadlocks.size() << " deadlocked states\n";
    out << "verdict: " << verdict_name(v) << "\n";
    if (!witness.empty()) out << "witness: " << format_path(witness) << "\n";
  }
  return exit_for(v);
}

int cmd_hoare(const Common& c, std::ostream& out) {
  const LitmusFile f = load_litmus(c.file);
  const HoareReport r = check_hoare(f.sys, *f.outline.pre, *f.outline.final, options_for(f, c));
  if (c.json) {
    json j{{"verdict", verdict_name(r.verdict)},
           {"states_explored", r.states},
           {"outcomes", json::array()},
           {"witness", witness_json(r.witness)},
           {"truncated", r.truncated}};
    out << j.dump(2) << "\n";
  } else {
    out << f.name << ": " << verdict_name(r.verdict) << " (" << r.states << " states)\n";
    if (!r.witness.empty()) out << "witness: " << format_path(r.witness) << "\n";
  }
  return exit_for(r.verdict);
}

int cmd_outline(const Common& c, std::ostream& out) {
  const LitmusFile f = load_litmus(c.file);
  const OutlineReport r = check_outline(f.sys, f.outline, options_for(f, c));
  std::vector<WitnessStep> witness;
  if (!r.violations.empty()) witness = r.violations.front().path;
  if (c.json) {
    json j{{"verdict", verdict_name(r.verdict)},
           {"states_explored", r.states},
           {"outcomes", json::array()},
           {"witness", witness_json(witness)},
           {"truncated", r.truncated}};
    json as = json::array();
    for (const auto& a : r.assertions)
      as.push_back({{"name", a.name}, {"checks", a.checks}, {"failures", a.failures}});
    j["assertions"] = as;
    json vs = json::array();
    for (const auto& v : r.violations)
      vs.push_back({{"check", v.check}, {"assertion", v.assertion}, {"detail", v.detail}, {"witness", witness_json(v.path)}});
    j["violations"] = vs;
    out << j.dump(2) << "\n";
  } else {
    out << f.name << ": " << r.states << " states" << (r.truncated ? " (bound reached)" : "") << "\n";
    for (const auto& a : r.assertions)
      out << "  " << a.name << ": " << (a.failures == 0 ? "valid" : "invalid") << " (" << a.checks << " checks, "
          << a.failures << " failures)\n";
    for (const auto& v : r.violations)
      out << "  violation [" << v.check << "] " << v.assertion << ": " << v.detail << "\n    via "
          << format_path(v.path) << "\n";
    out << "verdict: " << verdict_name(r.verdict) << "\n";
  }
  return exit_for(r.verdict);
}

int cmd_refine(const Common& c, const std::string& impl_name, bool traces, std::ostream& out) {
  const LitmusFile f = load_litmus(c.file);
  const std::string name = impl_name.empty() ? f.impl : impl_name;
  if (name.empty()) throw InputError("no implementation given (use --impl)");
  const System conc = instantiate(f.sys, find_impl(name));
  RefineOptions o;
  o.max_steps = c.max_steps >= 0 ? c.max_steps : f.max_steps;
  o.jobs = c.jobs;
  o.check_traces = traces;
  const SimulationReport r = check_simulation(f.sys, conc, o);

  int code = kPass;
  if (!r.found || (r.traces_checked && !r.traces.holds)) code = kViolation;
  else if (r.truncated) code = kBoundExhausted;
  const char* verdict = r.found ? "simulation found" : "simulation not found";

  if (c.json) {
    json j{{"verdict", verdict},
           {"states_explored", r.abstract_states + r.concrete_states},
           {"outcomes", json::array()},
           {"witness", witness_json(r.counterexample)},
           {"truncated", r.truncated},
           {"abstract_states", r.abstract_states},
           {"concrete_states", r.concrete_states},
           {"candidate_pairs", r.candidate_pairs},
           {"relation_size", r.relation_size},
           {"detail", r.detail}};
    if (r.traces_checked)
      j["trace_inclusion"] = {{"holds", r.traces.holds},
                              {"states", r.traces.states},
                              {"detail", r.traces.detail},
                              {"witness", witness_json(r.traces.counterexample)}};
    out << j.dump(2) << "\n";
  } else {
    out << f.name << " with " << name << ": " << verdict << "\n";
    out << "  abstract states " << r.abstract_states << ", concrete states " << r.concrete_states
        << ", candidate pairs " << r.candidate_pairs << ", relation size " << r.relation_size
        << (r.truncated ? " (bound reached)" : "") << "\n";
    if (!r.found) {
      out << "  counterexample: " << format_path(r.counterexample) << "\n";
      out << "  " << r.detail << "\n";
    }
    if (r.traces_checked) {
      out << "  trace inclusion: " << (r.traces.holds ? "holds" : "fails") << " (" << r.traces.states
          << " trace states)\n";
      if (!r.traces.holds)
        out << "  trace counterexample: " << format_path(r.traces.counterexample) << "\n  " << r.traces.detail
            << "\n";
    }
  }
  return code;
}

int cmd_rules(const Common& c, bool mutant, std::ostream& out) {
  const LitmusFile f = load_litmus(c.file);
  ExploreOptions o = options_for(f, c);
  o.keep_edges = true;
  const ExploreResult r = explore(f.sys, o);
  const auto reps = check_lock_rules(f.sys, r, mutant);
  bool bad = false;
  json arr = json::array();
  for (const auto& rep : reps) {
    bad = bad || rep.violations > 0;
    if (c.json) {
      arr.push_back({{"rule", rep.rule},
                     {"instances", rep.instances},
                     {"violations", rep.violations},
                     {"detail", rep.detail},
                     {"witness", witness_json(rep.witness)}});
    } else {
      out << "rule " << rep.rule << (mutant ? " (mutated)" : "") << ": " << rep.instances << " instances, "
          << rep.violations << " violations\n";
      if (rep.violations) out << "  " << rep.detail << "\n  via " << format_path(rep.witness) << "\n";
    }
  }
  const Verdict v = bad ? Verdict::Invalid : r.truncated ? Verdict::Unknown : Verdict::Valid;
  if (c.json) {
    json j{{"verdict", verdict_name(v)},
           {"states_explored", r.states()},
           {"outcomes", json::array()},
           {"witness", json::array()},
           {"truncated", r.truncated},
           {"rules", arr}};
    out << j.dump(2) << "\n";
  }
  return exit_for(v);
}

int cmd_fifo(int enqs, bool as_json, std::ostream& out) {
  if (enqs < 1 || enqs > 3) throw InputError("--enqs must be between 1 and 3");
  bool ok = true, truncated = false;
  std::size_t states = 0;
  json layouts = json::array();
  for (const FifoLayout& l : fifo_layouts(enqs)) {
    const FifoReport r = check_fifo(l);
    ok = ok && r.order_violations == 0 && r.replay_violations == 0 && r.unexplained == 0;
    truncated = truncated || r.truncated;
    states += r.states;
    if (as_json) {
      layouts.push_back({{"layout", r.layout},
                         {"states", r.states},
                         {"order_violations", r.order_violations},
                         {"replay_violations", r.replay_violations},
                         {"model_outcomes", r.model_outcomes},
                         {"oracle_outcomes", r.oracle_outcomes},
                         {"unexplained", r.unexplained},
                         {"missing", r.missing}});
    } else {
      out << r.layout << ": " << r.states << " states, outcomes " << r.model_outcomes << "/" << r.oracle_outcomes
          << ", order violations " << r.order_violations << ", replay violations " << r.replay_violations
          << ", unexplained " << r.unexplained << ", missing " << r.missing << "\n";
    }
  }
  const Verdict v = !ok ? Verdict::Invalid : truncated ? Verdict::Unknown : Verdict::Valid;
  if (as_json) {
    json j{{"verdict", verdict_name(v)},
           {"states_explored", states},
           {"outcomes", json::array()},
           {"witness", json::array()},
           {"truncated", truncated},
           {"layouts", layouts}};
    out << j.dump(2) << "\n";
  } else {
    out << "verdict: " << verdict_name(v) << "\n";
  }
  return exit_for(v);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exhaustive checker for release-acquire weak memory programs with abstract objects", "viewcheck"};
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* sub, bool with_file) {
    if (with_file) sub->add_option("file", c.file, "litmus file")->required();
    sub->add_option("--max-steps", c.max_steps, "bound on execution length (default: the file's, else 64)");
    sub->add_option("--jobs", c.jobs, "worker threads for exploration")->check(CLI::PositiveNumber);
    sub->add_flag("--json", c.json, "machine-readable report");
  };

  CLI::App* explore_cmd = app.add_subcommand("explore", "enumerate every terminal outcome");
  add_common(explore_cmd, true);
  CLI::App* outline_cmd = app.add_subcommand("outline", "check the proof outline of a file");
  add_common(outline_cmd, true);
  CLI::App* hoare_cmd = app.add_subcommand("hoare", "check {pre} program {final}");
  add_common(hoare_cmd, true);

  CLI::App* refine_cmd = app.add_subcommand("refine", "search for a forward simulation");
  std::string impl;
  bool no_traces = false;
  refine_cmd->add_option("--impl", impl, "seqlock, ticketlock, seqlock-relaxed or ticketlock-relaxed");
  refine_cmd->add_option("--client", c.file, "client litmus file using the abstract lock")->required();
  refine_cmd->add_flag("--no-traces", no_traces, "skip the trace-inclusion cross-check");
  add_common(refine_cmd, false);

  CLI::App* rules_cmd = app.add_subcommand("rules", "check the lock reasoning rules on a lock client");
  bool mutant = false;
  rules_cmd->add_flag("--mutant", mutant, "check the deliberately wrong rule variants");
  add_common(rules_cmd, true);

  CLI::App* print_cmd = app.add_subcommand("print", "parse and pretty-print a litmus file");
  print_cmd->add_option("file", c.file, "litmus file")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force oracles");
  CLI::App* fifo_cmd = oracle_cmd->add_subcommand("fifo", "queue against a sequential FIFO");
  int enqs = 3;
  fifo_cmd->add_option("--enqs", enqs, "number of enqueues (1 to 3)");
  fifo_cmd->add_flag("--json", c.json, "machine-readable report");
  oracle_cmd->require_subcommand(1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*explore_cmd) return cmd_explore(c, out);
    if (*outline_cmd) return cmd_outline(c, out);
    if (*hoare_cmd) return cmd_hoare(c, out);
    if (*refine_cmd) return cmd_refine(c, impl, !no_traces, out);
    if (*rules_cmd) return cmd_rules(c, mutant, out);
    if (*print_cmd) {
      out << print_litmus(load_litmus(c.file));
      return kPass;
    }
    if (*fifo_cmd) return cmd_fifo(enqs, c.json, out);
  } catch (const InputError& e) {
    err << c.file << ":" << (e.line() > 0 ? "" : " ") << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace viewcheck
