#include <gtest/gtest.h>

#include "efg/error.hpp"
#include "efg/string_game.hpp"

using namespace efg;

namespace {

DenseProperty fin() { return {BaseProperty::FinitelyManyOnes, {}, {}}; }
DenseProperty odd() { return {BaseProperty::OddManyOnes, {}, {}}; }
DenseProperty periodic() { return {BaseProperty::UltimatelyPeriodic, {}, {}}; }

Ordinal O(const char* text) { return parse_ordinal(text); }

StringSplit bit0_split(Side side, const char* r0, const char* r1) {
  StringSplit s;
  s.side = side;
  s.pieces = {Clopen::cylinder({{0, false}}), Clopen::cylinder({{0, true}})};
  s.ranks = {O(r0), O(r1)};
  return s;
}

StringSplit first_one_split(Side side, std::size_t listed_zeros) {
  StringSplit s;
  s.side = side;
  s.infinite = true;
  s.tail = TailKind::FirstOneAt;
  s.tail_rank = O("1");
  if (listed_zeros > 0) {
    Segment zeros;
    for (std::size_t i = 0; i < listed_zeros; ++i) zeros[i] = false;
    s.pieces = {Clopen::cylinder(zeros)};
    s.ranks = {O("1")};
  }
  return s;
}

}  // namespace

TEST(StringLegal, FiniteSplits) {
  const StringPosition p{fin(), odd(), O("3")};
  EXPECT_TRUE(string_legal(p, bit0_split(Side::Left, "1", "2"), 8).legal);
  EXPECT_EQ(string_legal(p, bit0_split(Side::Left, "2", "2"), 8).reason, "rank-overflow");
  StringSplit gap = bit0_split(Side::Left, "1", "1");
  gap.pieces[1] = Clopen::cylinder({{0, true}, {1, true}});
  EXPECT_EQ(string_legal(p, gap, 8).reason, "not-a-cover");
  const StringPosition filtered{fin().with_filter({{0, true}, {1, true}}), odd(), O("3")};
  EXPECT_TRUE(string_legal(filtered, gap, 8).legal);
  EXPECT_EQ(string_legal({fin(), odd(), O("1")}, bit0_split(Side::Left, "1", "1"), 8).reason, "terminal-position");
}

TEST(StringLegal, CountableSplits) {
  const StringPosition at_omega{fin(), odd(), O("w")};
  EXPECT_EQ(string_legal(at_omega, first_one_split(Side::Left, 0), 8).reason, "not-a-cover");
  EXPECT_TRUE(string_legal(at_omega, first_one_split(Side::Left, 1), 8).legal);
  EXPECT_TRUE(string_legal(at_omega, first_one_split(Side::Right, 0), 8).legal);
  const StringPosition finite{fin(), odd(), O("9")};
  EXPECT_EQ(string_legal(finite, first_one_split(Side::Right, 0), 8).reason, "rank-overflow");
}

TEST(StringLegal, ClaimsNeverSeparateDensePairs) {
  const StringPosition p{fin(), odd(), O("1")};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_FALSE(string_legal(p, StringClaim{i, true}, 8).legal);
    EXPECT_FALSE(string_legal(p, StringClaim{i, false}, 8).legal);
  }
  EXPECT_FALSE(string_atomic_separator(fin(), odd()));
  const auto sep = string_atomic_separator(fin().with_filter({{2, true}}), odd().with_filter({{2, false}}));
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->position, 2u);
  EXPECT_TRUE(sep->value);
}

TEST(DenseStrategy, FiniteSplitExtendsTheSegment) {
  DenseStrategyII ii(fin(), odd(), 8);
  const PieceChoice c = ii.respond(bit0_split(Side::Left, "1", "1"));
  EXPECT_FALSE(c.generated);
  const Segment expected{{0, c.index == 1}};
  EXPECT_EQ(ii.segment(), expected);
  EXPECT_EQ(check_condition_e9(ii.left(), ii.right(), 8), expected);
  EXPECT_FALSE(ii.in_endgame());
}

TEST(DenseStrategy, DegenerateSplitKeepsTheSegment) {
  DenseStrategyII ii(fin(), odd(), 8);
  StringSplit s;
  s.side = Side::Right;
  s.pieces = {Clopen::none(), Clopen::all()};
  s.ranks = {O("1"), O("2")};
  const PieceChoice c = ii.respond(s);
  EXPECT_EQ(c.index, 1u);
  EXPECT_TRUE(ii.segment().empty());
}

TEST(DenseStrategy, ProperSplitStartsTheEndgame) {
  DenseStrategyII ii(fin(), odd(), 8);
  const PieceChoice c = ii.respond(first_one_split(Side::Right, 0));
  EXPECT_TRUE(c.generated);
  ASSERT_TRUE(ii.in_endgame());
  EXPECT_TRUE(contains(odd(), *ii.followed()));
  EXPECT_TRUE(generated_piece(TailKind::FirstOneAt, 0, c.index).contains(*ii.followed()));
}

TEST(DenseGame, RankOneStart) {
  RandomAdversary adv(1);
  const StringGameTrace t = simulate_dense_game(fin(), odd(), O("1"), adv);
  EXPECT_EQ(t.winner, Player::II);
  EXPECT_EQ(t.reason, "terminal-no-separator");
  const StringGameTrace sep = simulate_dense_game(fin().with_filter({{0, true}}), odd().with_filter({{0, false}}),
                                                  O("1"), adv);
  EXPECT_EQ(sep.winner, Player::I);
  EXPECT_THROW(simulate_dense_game(fin(), odd(), O("w^2"), adv), Error);
}

TEST(DenseGame, ScriptedCountableSplitEndsInTheEndgame) {
  for (Side side : {Side::Left, Side::Right}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ScriptedAdversary adv(seed, side);
      const StringGameTrace t = simulate_dense_game(fin(), odd(), O("w*2+3"), adv);
      ASSERT_FALSE(t.steps.empty());
      EXPECT_EQ(t.steps.front().mode, "endgame");
      EXPECT_TRUE(t.endgame);
      EXPECT_EQ(t.winner, Player::II) << t.reason;
    }
  }
}

TEST(DenseGame, RandomAdversariesNeverWin) {
  for (const auto& other : {odd(), periodic()}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomAdversary adv(seed);
      const StringGameTrace t = simulate_dense_game(fin(), other, O("w*3"), adv);
      EXPECT_NE(t.winner, Player::I) << seed << " " << t.reason;
      EXPECT_TRUE(t.e9_maintained) << seed;
      if (t.endgame) EXPECT_EQ(t.winner, Player::II) << seed;
    }
  }
}

TEST(DenseGame, Deterministic) {
  RandomAdversary a(42);
  RandomAdversary b(42);
  const auto x = simulate_dense_game(fin(), odd(), O("w*3+2"), a);
  const auto y = simulate_dense_game(fin(), odd(), O("w*3+2"), b);
  ASSERT_EQ(x.steps.size(), y.steps.size());
  for (std::size_t i = 0; i < x.steps.size(); ++i) {
    EXPECT_EQ(x.steps[i].move, y.steps[i].move);
    EXPECT_EQ(x.steps[i].response, y.steps[i].response);
  }
}
