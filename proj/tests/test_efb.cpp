#include <gtest/gtest.h>

#include <memory>

#include "efg/efb.hpp"
#include "efg/error.hpp"
#include "efg/json_io.hpp"
#include "efg/measure.hpp"
#include "efg/solver.hpp"

using namespace efg;

namespace {

StructClass strings(std::initializer_list<const char*> list) {
  std::vector<TaggedStructure> members;
  for (const char* s : list) members.push_back({std::make_shared<const Structure>(bitstring_structure(s)), {}});
  return StructClass(std::move(members));
}

Ordinal N(std::uint64_t n) { return Ordinal::natural(n); }

const ComplexityMeasure& size_m() {
  static const ComplexityMeasure m = builtin_measure("size");
  return m;
}

}  // namespace

TEST(EfbLegal, FiniteSplits) {
  const StructClass a = strings({"01", "10"});
  const EFBPosition p{a, strings({"00"}), N(2)};
  FiniteSplit split{Side::Left, {a.subset({0}), a.subset({1})}, {N(1), N(1)}};
  EXPECT_TRUE(efb_legal(p, split, size_m()).legal);
  split.ranks = {N(1), N(2)};
  const Legality over = efb_legal(p, split, size_m());
  EXPECT_FALSE(over.legal);
  EXPECT_EQ(over.reason, "rank-overflow");
  FiniteSplit missing{Side::Left, {a.subset({0}), a.subset({0})}, {N(1), N(1)}};
  EXPECT_EQ(efb_legal(p, missing, size_m()).reason, "not-a-cover");
  FiniteSplit foreign{Side::Left, {a.subset({0}), strings({"11"})}, {N(1), N(1)}};
  EXPECT_EQ(efb_legal(p, foreign, size_m()).reason, "not-a-cover");
}

TEST(EfbLegal, InfiniteSplitAtFiniteRankIsIllegal) {
  const StructClass a = strings({"01", "10"});
  const EFBPosition p{a, strings({"00"}), N(6)};
  InfiniteSplit split{Side::Left, {a.subset({0}), a.subset({1})}, {N(1), N(1)}, {{N(1), Multiplicity::omega_many()}}};
  const Legality l = efb_legal(p, split, size_m());
  EXPECT_FALSE(l.legal);
  EXPECT_EQ(l.reason, "rank-overflow");
  const EFBPosition high{a, strings({"00"}), parse_ordinal("w+2")};
  EXPECT_TRUE(efb_legal(high, split, size_m()).legal);
  split.tail.clear();
  EXPECT_EQ(efb_legal(high, split, size_m()).reason, "not-a-cover");
}

TEST(EfbLegal, SupplementsAndClaims) {
  const auto k2 = std::make_shared<const Structure>(make_structure("K2", {}, {0, 1}, {}));
  const StructClass a({{k2, {}}});
  const EFBPosition p{a, a, N(2)};
  Supplement s{Side::Left, 0, {1}, N(1)};
  EXPECT_TRUE(efb_legal(p, s, size_m()).legal);
  EXPECT_EQ(efb_legal(p, s, size_m(), true).reason, "wrong-mode");
  s.new_rank = N(2);
  EXPECT_EQ(efb_legal(p, s, size_m()).reason, "rank-overflow");
  s.new_rank = N(1);
  s.choice = {7};
  EXPECT_EQ(efb_legal(p, s, size_m()).reason, "bad-choice-function");
  const EFBPosition q{strings({"1"}), strings({"0"}), N(1)};
  EXPECT_TRUE(efb_legal(q, ClaimAtomicWin{Formula::atom("p0", {})}, size_m()).legal);
  EXPECT_FALSE(efb_legal(q, ClaimAtomicWin{Formula::neg_atom("p0", {})}, size_m()).legal);
  const EFBPosition done{a, a, N(1)};
  EXPECT_EQ(efb_legal(done, Supplement{Side::Left, 0, {0}, N(1)}, size_m()).reason, "terminal-position");
}

TEST(EfbReferee, RankOneStart) {
  const StrategyI stall = [](const EFBPosition&) -> std::optional<Move> { return std::nullopt; };
  const StrategyII first = [](const EFBPosition&, const Move&) { return std::size_t{0}; };
  const GameTrace same = efb_referee({strings({"01"}), strings({"01"}), N(1)}, size_m(), stall, first);
  EXPECT_EQ(same.outcome.winner, Player::II);
  EXPECT_EQ(same.outcome.reason, "terminal-no-separator");
  const GameTrace sep = efb_referee({strings({"1"}), strings({"0"}), N(1)}, size_m(), stall, first);
  EXPECT_EQ(sep.outcome.winner, Player::I);
  EXPECT_EQ(sep.outcome.reason, "terminal-separator");
}

TEST(EfbReferee, ForfeitsAndStalls) {
  const StrategyII first = [](const EFBPosition&, const Move&) { return std::size_t{0}; };
  const StrategyI stall = [](const EFBPosition&) -> std::optional<Move> { return std::nullopt; };
  const GameTrace t = efb_referee({strings({"01"}), strings({"00"}), N(3)}, size_m(), stall, first);
  EXPECT_EQ(t.outcome.winner, Player::II);
  EXPECT_EQ(t.outcome.reason, "I-stalled");
  const StrategyI wrong_claim = [](const EFBPosition&) -> std::optional<Move> {
    return ClaimAtomicWin{Formula::atom("p0", {})};
  };
  const GameTrace f = efb_referee({strings({"01"}), strings({"00"}), N(3)}, size_m(), wrong_claim, first);
  EXPECT_EQ(f.outcome.winner, Player::II);
  EXPECT_EQ(f.outcome.reason, "forfeit:claim-fails");
}

// The two-round parity game: split A, then split B, then a literal decides.
TEST(EfbReferee, ScriptedParityGame) {
  const StructClass a = strings({"01", "10"});
  const StructClass b = strings({"00", "11"});
  const StrategyI script = [](const EFBPosition& p) -> std::optional<Move> {
    if (p.left.size() == 2) {
      return FiniteSplit{Side::Left, {p.left.subset({0}), p.left.subset({1})}, {N(2), N(2)}};
    }
    return FiniteSplit{Side::Right, {p.right.subset({0}), p.right.subset({1})}, {N(1), N(1)}};
  };
  for (std::size_t first : {0u, 1u}) {
    for (std::size_t second : {0u, 1u}) {
      int round = 0;
      const StrategyII ii = [&](const EFBPosition&, const Move&) { return round++ == 0 ? first : second; };
      const GameTrace t = efb_referee({a, b, N(4)}, size_m(), script, ii);
      EXPECT_EQ(t.outcome.winner, Player::I);
      EXPECT_EQ(t.steps.size(), 2u);
      const GameTrace again = replay(t, size_m());
      EXPECT_EQ(again.outcome.reason, t.outcome.reason);
      const GameTrace parsed = trace_from_json(parse_json(to_json(t).dump()));
      EXPECT_EQ(to_json(parsed).dump(), to_json(t).dump());
    }
  }
}

TEST(EfbReferee, SolverStrategiesPlayTheirRoles) {
  const StructClass a = strings({"01", "10"});
  const StructClass b = strings({"00", "11"});
  EFBSolver solver(a, b, size_m());
  const StrategyI one = [&](const EFBPosition& p) -> std::optional<Move> {
    if (!solver.i_wins(p)) return std::nullopt;
    return solver.winning_move(p);
  };
  const StrategyII two = [&](const EFBPosition& p, const Move& m) {
    return solver.i_wins(p) ? std::size_t{0} : solver.losing_choice(p, m);
  };
  EXPECT_EQ(efb_referee(solver.start(4), size_m(), one, two).outcome.winner, Player::I);
  EXPECT_EQ(efb_referee(solver.start(3), size_m(), one, two).outcome.winner, Player::II);
  const Strategy table = solver.strategy(4);
  EXPECT_EQ(efb_referee(solver.start(4), size_m(), table, two).outcome.winner, Player::I);
}
