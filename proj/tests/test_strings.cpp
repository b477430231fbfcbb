#include <gtest/gtest.h>

#include <random>

#include "efg/error.hpp"
#include "efg/strings.hpp"

using namespace efg;

namespace {

DenseProperty base(BaseProperty b, Segment filter = {}) { return DenseProperty{b, std::move(filter), {}}; }

Clopen random_clopen(std::mt19937_64& rng, std::size_t window) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < window; ++i) {
    if (rng() % 3 == 0) support.push_back(i);
  }
  std::vector<bool> table(std::size_t{1} << support.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng() % 4 != 0;
  return Clopen::from_table(support, table);
}

// Prefixes of explicit members: every bit pattern on [0, m) followed by
// zeros, with one extra one at m when odd parity is needed.
std::set<std::string> truncate_by_members(const DenseProperty& p, std::size_t length, std::size_t m) {
  std::set<std::string> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<bool> prefix(m);
    for (std::size_t i = 0; i < m; ++i) prefix[i] = (bits >> i) & 1u;
    for (int extra = 0; extra < 2; ++extra) {
      std::vector<bool> full = prefix;
      if (extra) full.push_back(true);
      const UPString h(full, {false});
      if (!contains(p, h)) continue;
      std::string s;
      for (std::size_t i = 0; i < length; ++i) s += h.bit(i) ? '1' : '0';
      out.insert(s);
    }
  }
  return out;
}

}  // namespace

TEST(UPString, Normalizes) {
  EXPECT_EQ(UPString::parse("0(10)").to_string(), "(01)");
  EXPECT_EQ(UPString::parse("10(00)").to_string(), "1(0)");
  EXPECT_EQ(UPString::parse("1(0)"), UPString({true}, {false}));
  const UPString h = UPString::parse("10(01)");
  EXPECT_TRUE(h.bit(0));
  EXPECT_FALSE(h.bit(1));
  EXPECT_FALSE(h.bit(2));
  EXPECT_TRUE(h.bit(3));
  EXPECT_TRUE(h.bit(1001));
  EXPECT_THROW(UPString::parse("10"), Error);
}

TEST(Segments, ParseAndCompatibility) {
  const Segment g = parse_segment("{0:1,3:0}");
  EXPECT_EQ(segment_text(g), "{0:1,3:0}");
  EXPECT_TRUE(compatible(g, {{0, true}, {1, false}}));
  EXPECT_FALSE(compatible(g, {{3, true}}));
  EXPECT_THROW(parse_segment("{0:2}"), Error);
}

TEST(Clopen, Algebra) {
  const Clopen a = Clopen::cylinder({{0, true}});
  const Clopen b = Clopen::cylinder({{1, false}});
  const UPString h = UPString::parse("1(0)");
  EXPECT_TRUE(a.contains(h));
  EXPECT_TRUE(a.intersect(b).contains(h));
  EXPECT_FALSE(a.complement().contains(h));
  EXPECT_TRUE(a.complement().unite(b).contains(h));
  EXPECT_TRUE(Clopen::none().is_empty());
  EXPECT_TRUE(a.intersect(a.complement()).is_empty());
  EXPECT_THROW(Clopen::from_table({1, 0}, {true, true, true, true}), Error);
}

TEST(DenseProperty, TruncateExamples) {
  EXPECT_EQ(truncate(base(BaseProperty::FinitelyManyOnes), 2), (std::set<std::string>{"00", "01", "10", "11"}));
  EXPECT_EQ(truncate(base(BaseProperty::OddManyOnes), 1), (std::set<std::string>{"0", "1"}));
  EXPECT_EQ(truncate(base(BaseProperty::FinitelyManyOnes, {{0, true}}), 1), (std::set<std::string>{"1"}));
  EXPECT_THROW(truncate(base(BaseProperty::FinitelyManyOnes), 13), Error);
}

TEST(DenseProperty, Membership) {
  EXPECT_TRUE(contains(base(BaseProperty::OddManyOnes), UPString::parse("1(0)")));
  EXPECT_FALSE(contains(base(BaseProperty::OddManyOnes), UPString::parse("11(0)")));
  EXPECT_FALSE(contains(base(BaseProperty::FinitelyManyOnes), UPString::parse("(1)")));
  EXPECT_TRUE(contains(base(BaseProperty::UltimatelyPeriodic), UPString::parse("(1)")));
  EXPECT_TRUE(is_empty(base(BaseProperty::FinitelyManyOnes).with_filter({{0, true}}).with_filter({{0, false}})));
  EXPECT_EQ(parse_base_property("odd-ones"), BaseProperty::OddManyOnes);
  EXPECT_THROW(parse_base_property("even-ones"), Error);
}

TEST(DenseProperty, Density) {
  EXPECT_TRUE(is_d_dense({"00", "11"}, 1));
  EXPECT_FALSE(is_d_dense({"00", "11"}, 2));
  EXPECT_TRUE(is_d_dense({"000", "011", "101", "110"}, 2));
  EXPECT_FALSE(is_d_dense({"000", "011", "101", "110"}, 3));
}

TEST(DenseProperty, ConditionE9Examples) {
  const auto fin = base(BaseProperty::FinitelyManyOnes);
  const auto odd = base(BaseProperty::OddManyOnes);
  EXPECT_EQ(check_condition_e9(fin, odd, 3), Segment{});
  const Segment f0{{0, true}};
  EXPECT_EQ(check_condition_e9(fin.with_filter(f0), odd.with_filter(f0), 3), f0);
  EXPECT_FALSE(check_condition_e9(fin.with_filter(f0), odd.with_filter({{0, false}}), 3));
}

TEST(DenseProperty, PairCorpusIsDenseAndDisjoint) {
  const auto pairs = dense_pair_corpus(5, 3, 4, 1);
  EXPECT_EQ(pairs.size(), 4u * (1 + 2 + 3 + 3));
  for (const auto& p : pairs) {
    EXPECT_TRUE(is_d_dense(p.left, p.d));
    EXPECT_TRUE(is_d_dense(p.right, p.d));
    for (const auto& s : p.left) EXPECT_FALSE(p.right.count(s));
  }
}

// ext, witness and truncate agree with membership of explicit strings.
TEST(DensePropertyProperty, ExtensionQueriesMatchExplicitMembers) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    DenseProperty p = base(trial % 2 ? BaseProperty::OddManyOnes : BaseProperty::FinitelyManyOnes);
    const int k = static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) p = p.restricted(random_clopen(rng, 6));
    if (rng() % 3 == 0) p = p.with_filter({{rng() % 6, rng() % 2 == 0}});
    EXPECT_EQ(truncate(p, 4), truncate_by_members(p, 4, 7)) << p.describe();
    Segment g;
    for (std::size_t i = 0; i < 3; ++i) {
      if (rng() % 2) g[rng() % 8] = rng() % 2 == 0;
    }
    const auto w = witness(p, g);
    EXPECT_EQ(w.has_value(), ext(p, g));
    if (w) {
      EXPECT_TRUE(contains(p, *w)) << p.describe();
      for (const auto& [pos, bit] : g) EXPECT_EQ(w->bit(pos), bit);
    }
  }
}
