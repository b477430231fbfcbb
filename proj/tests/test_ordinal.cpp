#include <gtest/gtest.h>

#include <random>

#include "efg/error.hpp"
#include "efg/ordinal.hpp"
#include "oracles.hpp"

using namespace efg;

namespace {

Ordinal O(const char* text) { return parse_ordinal(text); }
Ordinal N(std::uint64_t n) { return Ordinal::natural(n); }

}  // namespace

TEST(Ordinal, ParsesAndPrintsCnf) {
  EXPECT_EQ(O("w^2*3+w+4").to_string(), "w^2*3+w+4");
  EXPECT_EQ(O("0").to_string(), "0");
  EXPECT_EQ(O("w^(w+1)").to_string(), "w^(w+1)");
  EXPECT_EQ(O("w"), Ordinal::omega());
  EXPECT_THROW(O("w+w^2"), Error);
  EXPECT_THROW(O("w^"), Error);
}

TEST(Ordinal, Compare) {
  EXPECT_EQ(compare(O("w"), O("w")), std::strong_ordering::equal);
  EXPECT_EQ(compare(O("w+1"), O("w")), std::strong_ordering::greater);
  EXPECT_EQ(compare(O("w^2"), O("w*5+3")), std::strong_ordering::greater);
  EXPECT_LT(O("w^w"), O("w^(w+1)"));
  EXPECT_LT(N(1000000), O("w"));
}

TEST(Ordinal, Successor) {
  EXPECT_EQ(successor(N(0)), N(1));
  EXPECT_EQ(successor(N(4)), N(5));
  EXPECT_EQ(successor(O("w^2+w")), O("w^2+w+1"));
}

TEST(Ordinal, NaturalSum) {
  EXPECT_EQ(natural_sum(N(3), N(4)), N(7));
  EXPECT_EQ(natural_sum(O("w"), N(1)), O("w+1"));
  EXPECT_EQ(natural_sum(N(1), O("w")), O("w+1"));
  EXPECT_EQ(natural_sum(O("w*2+3"), O("w^2+w")), O("w^2+w*3+3"));
}

TEST(Ordinal, ScaleAndTruncate) {
  EXPECT_EQ(scale_by_nat(O("w+1"), 3), O("w*3+3"));
  EXPECT_EQ(scale_by_nat(N(5), 2), N(10));
  EXPECT_EQ(scale_by_nat(O("w^2"), 1), O("w^2"));
  EXPECT_EQ(truncate_below(O("w^2*2+w+7"), N(1)), O("w^2*2+w"));
  EXPECT_EQ(max(O("w"), N(9)), O("w"));
}

TEST(Ordinal, InfiniteNaturalSumExamples) {
  EXPECT_EQ(infinite_natural_sum(OmegaFamily({{N(1), Multiplicity::omega_many()}})), O("w"));
  EXPECT_EQ(infinite_natural_sum(OmegaFamily({{O("w"), Multiplicity::omega_many()}})), O("w^2"));
  EXPECT_EQ(infinite_natural_sum(
                OmegaFamily({{O("w^2"), Multiplicity::finite(1)}, {N(1), Multiplicity::omega_many()}})),
            O("w^2+w"));
  EXPECT_EQ(infinite_natural_sum(OmegaFamily::from_list({N(3), O("w"), N(2)})), O("w+5"));
  EXPECT_THROW(OmegaFamily({}), Error);
}

TEST(Ordinal, EvalExpression) {
  EXPECT_EQ(eval_ordinal_expression("w # 1"), O("w+1"));
  EXPECT_EQ(eval_ordinal_expression("1 # w"), O("w+1"));
  EXPECT_EQ(eval_ordinal_expression("w^2*2 # w*3+1 # 4"), O("w^2*2+w*3+5"));
}

// Partial sums S_n stay below the closed form, and every sampled ordinal
// below it is passed by some S_n.
TEST(OrdinalProperty, InfiniteSumIsSupremumOfPartialSums) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<oracle::Poly, long>> family;
    std::vector<FamilyEntry> entries;
    std::uniform_int_distribution<int> count(1, 3);
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      oracle::Poly v = oracle::random_poly(rng, 2, 3);
      if (oracle::ordinal_of(v).is_zero()) v.c = {1};
      const bool many = i == k - 1 || rng() % 2 == 0;
      const long times = many ? -1 : static_cast<long>(rng() % 3 + 1);
      family.emplace_back(v, times);
      entries.push_back({oracle::ordinal_of(v), many ? Multiplicity::omega_many()
                                                     : Multiplicity::finite(static_cast<std::uint64_t>(times))});
    }
    const oracle::Poly result = oracle::poly_of(infinite_natural_sum(OmegaFamily(entries)));
    for (std::size_t n = 0; n <= 50; ++n) {
      EXPECT_TRUE(oracle::poly_less(oracle::partial_sum(family, n), result)) << trial << " n=" << n;
    }
    for (int s = 0; s < 20; ++s) {
      const oracle::Poly below = oracle::random_poly(rng, 3, 60);
      if (!oracle::poly_less(below, result)) continue;
      bool passed = false;
      for (std::size_t n = 0; n <= 400 && !passed; ++n) {
        passed = !oracle::poly_less(oracle::partial_sum(family, n), below);
      }
      EXPECT_TRUE(passed) << trial << " " << oracle::ordinal_of(below).to_string();
    }
  }
}

TEST(OrdinalProperty, NaturalSumMatchesCoefficientOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto a = oracle::random_poly(rng, 4, 5);
    const auto b = oracle::random_poly(rng, 4, 5);
    const Ordinal x = oracle::ordinal_of(a);
    const Ordinal y = oracle::ordinal_of(b);
    EXPECT_EQ(natural_sum(x, y), oracle::ordinal_of(oracle::poly_add(a, b)));
    EXPECT_EQ(x < y, oracle::poly_less(a, b));
    EXPECT_EQ(parse_ordinal(x.to_string()), x);
  }
}
