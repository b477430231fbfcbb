#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "efg/cli.hpp"
#include "efg/config.hpp"
#include "efg/error.hpp"
#include "efg/json_io.hpp"

using namespace efg;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCorpus = std::string(EFG_TEST_DATA_DIR) + "/small_corpus.json";

}  // namespace

TEST(Cli, OrdinalEval) {
  const CliRun r = run({"ordinal", "eval", "w # 1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "w+1\n");
  const CliRun j = run({"--format", "json", "ordinal", "eval", "w^2 # w"});
  EXPECT_EQ(parse_json(j.out)["value"], "w^2+w");
}

TEST(Cli, FormulaCommands) {
  EXPECT_EQ(run({"formula", "size", "E x0. (P(x0) & Q(x0))"}).out, "3\n");
  EXPECT_EQ(run({"formula", "qr", "E x0. A x1. x0 = x1"}).out, "2\n");
  EXPECT_EQ(run({"formula", "nnf", "~(P(x0) & Q(x0))"}).out, "(~P(x0) | ~Q(x0))\n");
  EXPECT_EQ(run({"formula", "size", "--measure", "c1", "((p0 | p1) & (~p0 | ~p1))"}).out, "3\n");
}

TEST(Cli, ExitCodes) {
  const CliRun usage = run({"bogus"});
  EXPECT_EQ(usage.code, 2);
  const CliRun missing = run({"ordinal"});
  EXPECT_EQ(missing.code, 2);
  const CliRun domain = run({"formula", "size", "(("});
  EXPECT_EQ(domain.code, 1);
  const Json e = parse_json(domain.err);
  EXPECT_EQ(e["error"], "parse-error");
  EXPECT_TRUE(e.contains("message"));
  const CliRun json_error = run({"efb", "minsize", "--classA", "/nonexistent.json", "--classB", "0"});
  EXPECT_EQ(json_error.code, 1);
  const CliRun cap = run({"efb", "minsize", "--classA", "01,10", "--classB", "00,11", "--budget", "9"});
  EXPECT_EQ(cap.code, 1);
  EXPECT_EQ(parse_json(cap.err)["error"], "cap-exceeded");
}

TEST(Cli, MeasureCheckNice) {
  const CliRun r = run({"--format", "json", "measure", "check-nice", "--name", "qrank", "--samples", "100", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  const Json j = parse_json(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  bool found = false;
  for (const auto& w : j["witnesses"]) found = found || (w["input"] == "r(w, w)" && w["output"] == "w");
  EXPECT_TRUE(found);
  EXPECT_EQ(run({"measure", "check-nice", "--name", "size", "--samples", "100"}).out.rfind("nice: yes", 0), 0u);
}

TEST(Cli, GamesAndSearch) {
  EXPECT_EQ(run({"efd", "solve", "--set-a", "2", "--set-b", "3", "-n", "2"}).out, "II\n");
  EXPECT_EQ(run({"efd", "solve", "--set-a", "2", "--set-b", "3", "-n", "3"}).out, "I\n");
  EXPECT_EQ(run({"efb", "minsize", "--corpus", kCorpus, "--entry", "parity-2"}).out, "4\n");
  EXPECT_EQ(run({"efb", "minsize", "--classA", "01,10", "--classB", "01,10"}).out, "none\n");
  const CliRun s = run({"--format", "json", "search", "minformula", "--classA", "00", "--classB", "01,10,11",
                     "--measure", "size", "--max-value", "3", "--jmax", "0"});
  const Json j = parse_json(s.out);
  EXPECT_EQ(j["formula"], "(~p0 & ~p1)");
  EXPECT_EQ(j["value"], 2);
  EXPECT_EQ(formula_from_json(j["tree"]), parse_formula("(~p0 & ~p1)"));
}

TEST(Cli, RefereeWritesATrace) {
  const std::string path = ::testing::TempDir() + "efg_trace.json";
  const CliRun r = run({"efb", "referee", "--classA", "01,10", "--classB", "00,11", "--rank", "4", "--trace", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("winner: I", 0), 0u);
  const GameTrace t = trace_from_json(read_json_file(path));
  EXPECT_EQ(t.outcome.winner, Player::I);
  EXPECT_EQ(t.measure, "size");
}

TEST(Cli, VerifyAdequacy) {
  const CliRun r = run({"verify", "adequacy", "--corpus", kCorpus});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto n = corpus_from_json(read_json_file(kCorpus)).size();
  EXPECT_EQ(r.out, "agree: " + std::to_string(2 * n) + "/" + std::to_string(2 * n) + "\n");
}

TEST(Cli, Strings) {
  EXPECT_EQ(run({"strings", "truncate", "--prop", "fin-ones", "--L", "2"}).out, "00\n01\n10\n11\n");
  EXPECT_EQ(run({"strings", "truncate", "--prop", "odd-ones", "--filter", "{0:1}", "--L", "1"}).out, "1\n");
  EXPECT_EQ(run({"strings", "dense-check", "--strings", "00,11", "--d", "1"}).out, "dense\n");
  EXPECT_EQ(run({"strings", "dense-check", "--strings", "00,11", "--d", "2"}).out, "not dense\n");
  EXPECT_EQ(run({"strings", "dense-lb", "--L", "4", "--d", "2"}).out.find("violations: 0") != std::string::npos, true);
  const std::vector<std::string> sim = {"--format", "json", "strings", "simulate", "--p1", "fin-ones", "--p2",
                                        "odd-ones", "--rank", "w*3", "--seed", "5"};
  const CliRun a = run(sim);
  const CliRun b = run(sim);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(parse_json(a.out)["winner"], "I");
}

TEST(Config, CapOverrides) {
  const Caps c = apply_cap_overrides({}, "budget=6,jMax=2,roundCap=10");
  EXPECT_EQ(c.budget, 6u);
  EXPECT_EQ(c.jmax, 2u);
  EXPECT_EQ(c.round_cap, 10u);
  EXPECT_EQ(c.length_cap, 12u);
  EXPECT_THROW(apply_cap_overrides({}, "budget=0"), Error);
  EXPECT_THROW(apply_cap_overrides({}, "depth=3"), Error);
  EXPECT_THROW(apply_cap_overrides({}, "budget"), Error);
  ::setenv("EFGAME_CAPS", "budget=3", 1);
  const CliRun r = run({"efb", "minsize", "--classA", "01,10", "--classB", "00,11", "--budget", "4"});
  ::unsetenv("EFGAME_CAPS");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parse_json(r.err)["error"], "cap-exceeded");
}
