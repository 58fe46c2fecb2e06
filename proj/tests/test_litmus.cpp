#include <doctest.h>

#include <json.hpp>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "viewcheck/cli.hpp"
#include "viewcheck/error.hpp"
#include "viewcheck/explorer.hpp"
#include "viewcheck/litmus.hpp"
#include "support/support.hpp"

using namespace viewcheck;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

void check_round_trip(const LitmusFile& f) {
  const std::string text = print_litmus(f);
  const LitmusFile g = parse_litmus(text);
  CHECK(print_litmus(g) == text);
  REQUIRE(g.sys.threads.size() == f.sys.threads.size());
  for (std::size_t k = 0; k < f.sys.threads.size(); ++k) {
    CHECK(g.sys.threads[k].id == f.sys.threads[k].id);
    CHECK(same_cmd(g.sys.threads[k].program, f.sys.threads[k].program));
  }
  CHECK(g.sys.init == f.sys.init);
  CHECK(g.outline.annotations.size() == f.outline.annotations.size());
}

// Line and column of the error thrown for `text`.
std::pair<int, int> error_at(const std::string& text) {
  try {
    parse_litmus(text);
  } catch (const InputError& e) {
    return {e.line(), e.column()};
  }
  FAIL("no error");
  return {0, 0};
}

}  // namespace

TEST_SUITE("litmus_frontend") {
  TEST_CASE("corpus files round-trip") {
    for (const char* name : {"mp-relacq.lit", "mp-relaxed.lit", "lockmp.lit", "lockmp-mutant.lit", "queue-mp.lit",
                             "queue-mp-once.lit", "lock-stress.lit", "seqlock-refine.lit", "ticketlock-relaxed-refine.lit"}) {
      CAPTURE(name);
      check_round_trip(load_litmus(vtest::corpus(name)));
    }
  }

  TEST_CASE("random programs round-trip") {
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
      const std::string text = vtest::random_program(rng);
      CAPTURE(text);
      check_round_trip(parse_litmus(text));
    }
  }

  TEST_CASE("release and acquire accesses") {
    const LitmusFile f = load_litmus(vtest::corpus("mp-relacq.lit"));
    const std::string t1 = print_cmd(*f.sys.threads[0].program);
    const std::string t2 = print_cmd(*f.sys.threads[1].program);
    CHECK(t1.find(":=R") != std::string::npos);
    CHECK(t2.find("<-A") != std::string::npos);
  }

  TEST_CASE("the lock outline has five labels per thread") {
    const LitmusFile f = load_litmus(vtest::corpus("lockmp.lit"));
    CHECK(f.mode == "outline");
    for (int t = 0; t < 2; ++t)
      for (int l = 1; l <= 5; ++l) CHECK(f.outline.at(t, l) != nullptr);
    CHECK(f.outline.annotations.size() == 10);
    CHECK(f.outline.invariant);
    CHECK(f.outline.final);
  }

  TEST_CASE("syntax errors carry positions") {
    CHECK(error_at("litmus b\ninit { x = 0 }\nthread 1 {\n  x := \n}\n") == std::pair{4, 6});
    CHECK(error_at("litmus b\ninit { x = 0 }\nthread 1 { r <- }\n").first == 3);
    CHECK(error_at("litmus b\ninit { x = 0 }\nthread 1 { x := 1 \n").first >= 3);
  }

  TEST_CASE("semantic errors") {
    CHECK_THROWS_AS(parse_litmus("litmus b\ninit { x = 0 }\nthread 1 { r <- y }\n"), InputError);
    CHECK_THROWS_AS(parse_litmus("litmus b\ninit { x = 0; x = 1 }\nthread 1 { x := 1 }\n"), InputError);
    CHECK_THROWS_AS(parse_litmus("litmus b\ninit { x = 0 }\nthread 1 { x := 1 }\nthread 1 { x := 2 }\n"), InputError);
    CHECK_THROWS_AS(parse_litmus("litmus b\ninit { x = 0 }\nthread 1 { l.acquire() }\n"), InputError);
  }

  TEST_CASE("cli: explore") {
    CliRun r = cli({"explore", vtest::corpus("mp-relacq.lit")});
    CHECK(r.code == kPass);
    r = cli({"explore", vtest::corpus("mp-relacq.lit"), "--json"});
    REQUIRE(r.code == kPass);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "valid");
    CHECK(j["truncated"] == false);
    CHECK(j["outcomes"] == json::parse(R"([{"r1": 1, "r2": 5}])"));
    CHECK(j["states_explored"].get<int>() > 0);
    CHECK(j["witness"].is_array());
  }

  TEST_CASE("cli: relaxed outcomes") {
    const CliRun r = cli({"explore", vtest::corpus("mp-relaxed.lit"), "--json"});
    REQUIRE(r.code == kPass);
    const json j = json::parse(r.out);
    std::set<int> r2;
    for (const auto& o : j["outcomes"]) r2.insert(o["r2"].get<int>());
    CHECK(r2 == std::set<int>{0, 5});
  }

  TEST_CASE("cli: json output is stable") {
    const auto a = cli({"explore", vtest::corpus("lockmp.lit"), "--json"});
    const auto b = cli({"explore", vtest::corpus("lockmp.lit"), "--json"});
    CHECK(a.out == b.out);
  }

  TEST_CASE("cli: violations carry a replayable witness") {
    const std::string text = "litmus w\ninit { d = 0; f = 0 }\nobserve r\n"
                             "thread 1 { d := 5; f := 1 }\nthread 2 { r <- d }\nfinal { r = 5 }\n";
    const std::string path = "/tmp/viewcheck-witness-test.lit";
    {
      std::ofstream o(path);
      o << text;
    }
    const CliRun r = cli({"explore", path, "--json"});
    CHECK(r.code == kViolation);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "invalid");
    std::vector<WitnessStep> path_steps;
    for (const auto& s : j["witness"])
      path_steps.push_back(WitnessStep{s["thread"].get<int>(), s["label"].get<std::string>(), s.value("choice", 0)});
    const LitmusFile f = parse_litmus(text);
    auto cfg = replay(f.sys, path_steps);
    REQUIRE(cfg);
    CHECK(is_terminal(*cfg));
    CHECK_FALSE(eval_assertion(*f.outline.final, f.sys, *cfg));
  }

  TEST_CASE("cli: outline") {
    CHECK(cli({"outline", vtest::corpus("lockmp.lit")}).code == kPass);
    CHECK(cli({"outline", vtest::corpus("lockmp-mutant.lit")}).code == kViolation);
  }

  TEST_CASE("cli: refine") {
    CliRun r = cli({"refine", "--impl", "ticketlock", "--client", vtest::corpus("lockmp.lit")});
    CHECK(r.code == kPass);
    CHECK(r.out.find("simulation found") != std::string::npos);
    r = cli({"refine", "--impl", "seqlock-relaxed", "--client", vtest::corpus("lockmp.lit")});
    CHECK(r.code == kViolation);
    CHECK(r.out.find("simulation not found") != std::string::npos);
    CHECK(cli({"refine", "--impl", "nosuchlock", "--client", vtest::corpus("lockmp.lit")}).code == kInputError);
    CHECK(cli({"refine", "--impl", "seqlock", "--client", vtest::corpus("queue-mp-once.lit")}).code == kInputError);
  }

  TEST_CASE("cli: oracle") {
    CHECK(cli({"oracle", "fifo", "--enqs", "2"}).code == kPass);
    CHECK(cli({"oracle", "fifo", "--enqs", "9"}).code == kInputError);
  }

  TEST_CASE("cli: exit codes") {
    CHECK(cli({"explore", vtest::corpus("queue-mp.lit")}).code == kBoundExhausted);
    CHECK(cli({"explore", vtest::corpus("mp-relacq.lit"), "--no-such-flag"}).code == kInputError);
    CHECK(cli({"explore", "/nonexistent.lit"}).code == kInputError);
    CHECK(cli({}).code == kInputError);
    CHECK(cli({"--help"}).code == kPass);
  }

  TEST_CASE("cli: syntax errors name the position") {
    const std::string path = "/tmp/viewcheck-syntax-test.lit";
    {
      std::ofstream o(path);
      o << "litmus b\ninit { x = 0 }\nthread 1 {\n  x := \n}\n";
    }
    const CliRun r = cli({"explore", path});
    CHECK(r.code == kInputError);
    CHECK(r.err.find(path + ":4:6:") != std::string::npos);
  }
}
