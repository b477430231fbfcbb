#include <gtest/gtest.h>

#include <memory>

#include "efg/efd.hpp"
#include "efg/error.hpp"
#include "efg/struct_class.hpp"
#include "efg/structure.hpp"

using namespace efg;

namespace {

std::shared_ptr<const Structure> set_of(int k) {
  std::vector<Element> u;
  for (int i = 0; i < k; ++i) u.push_back(i);
  return std::make_shared<const Structure>(make_structure("K" + std::to_string(k), {}, u, {}));
}

std::shared_ptr<const Structure> bits(const std::string& s) {
  return std::make_shared<const Structure>(bitstring_structure(s));
}

}  // namespace

TEST(Structures, MakeStructureValidates) {
  EXPECT_THROW(make_structure("S", {{"E", 2}}, {0, 1}, {{"E", {{0, 2}}}}), Error);
  EXPECT_THROW(make_structure("S", {{"E", 2}}, {0, 1}, {{"E", {{0}}}}), Error);
  const Structure s = make_structure("S", {{"E", 2}}, {1, 0}, {{"E", {{0, 1}}}});
  EXPECT_EQ(s.universe, (std::vector<Element>{0, 1}));
  EXPECT_TRUE(s.holds("E", {0, 1}));
  EXPECT_FALSE(s.holds("E", {1, 0}));
}

TEST(Structures, BitStrings) {
  const Structure s = bitstring_structure("10");
  EXPECT_EQ(s.vocabulary, propositional_vocabulary(2));
  EXPECT_TRUE(s.holds(prop_symbol(0), {}));
  EXPECT_FALSE(s.holds(prop_symbol(1), {}));
}

TEST(Structures, PartialIsomorphisms) {
  const auto k2 = set_of(2);
  EXPECT_TRUE(partial_iso_check(*k2, *k2, {{0, 1}}));
  EXPECT_FALSE(partial_iso_check(*k2, *k2, {{0, 0}, {1, 0}}));
  const Structure arc = make_structure("A", {{"E", 2}}, {0, 1}, {{"E", {{0, 1}}}});
  const Structure none = make_structure("B", {{"E", 2}}, {0, 1}, {});
  EXPECT_FALSE(partial_iso_check(arc, none, {{0, 0}, {1, 1}}));
}

TEST(StructClass, SortsDeduplicatesAndChecksDomains) {
  const auto a = bits("01");
  const auto b = bits("10");
  const StructClass c({{b, {}}, {a, {}}, {b, {}}});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.canonical_key(), "[01{};10{}]");
  const auto k2 = set_of(2);
  EXPECT_THROW(StructClass({{k2, {{0, 1}}}, {k2, {}}}), Error);
  EXPECT_THROW(StructClass({{k2, {{0, 5}}}}), Error);
}

TEST(StructClass, SupplementWithChoice) {
  const auto k2 = set_of(2);
  const auto k3 = set_of(3);
  const StructClass one({{k2, {}}});
  const StructClass picked = extend_with_choice(one, 0, {1});
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked.members()[0].assignment, (VarAssignment{{0, 1}}));
  EXPECT_TRUE(extend_with_choice(StructClass({}, {}), 0, {}).empty());
  const StructClass two({{k2, {}}, {k3, {}}});
  const StructClass both = extend_with_choice(two, 1, {0, 2});
  EXPECT_EQ(both.canonical_key(), "[K2{1:0};K3{1:2}]");
  EXPECT_THROW(extend_with_choice(two, 1, {0}), Error);
  EXPECT_THROW(extend_with_choice(two, 1, {2, 2}), Error);
}

TEST(StructClass, SupplementWithStar) {
  const auto k1 = set_of(1);
  const auto k2 = set_of(2);
  const auto k3 = set_of(3);
  EXPECT_EQ(extend_with_star(StructClass({{k2, {}}}), 0).size(), 2u);
  EXPECT_EQ(extend_with_star(StructClass({{k1, {}}}), 0).size(), 1u);
  EXPECT_EQ(extend_with_star(StructClass({{k2, {}}, {k3, {}}}), 0).size(), 5u);
  EXPECT_THROW(extend_with_star(StructClass({{set_of(0), {}}}), 0), Error);
}

TEST(StructClass, AtomicSeparator) {
  const auto sep = atomic_separator(StructClass({{bits("1"), {}}}), StructClass({{bits("0"), {}}}));
  ASSERT_TRUE(sep);
  EXPECT_EQ(to_text(*sep), "p0");
  const StructClass same({{bits("01"), {}}, {bits("10"), {}}});
  EXPECT_FALSE(atomic_separator(same, same));
  const auto k2 = set_of(2);
  const auto eq = atomic_separator(StructClass({{k2, {{0, 0}, {1, 0}}}}), StructClass({{k2, {{0, 0}, {1, 1}}}}));
  ASSERT_TRUE(eq);
  EXPECT_EQ(to_text(*eq), "x0 = x1");
}

TEST(StructClass, Separates) {
  const Formula p0 = Formula::atom(prop_symbol(0), {});
  EXPECT_TRUE(separates(p0, StructClass({{bits("10"), {}}}), StructClass({{bits("01"), {}}})));
  EXPECT_FALSE(separates(p0, StructClass({{bits("10"), {}}, {bits("01"), {}}}), StructClass({{bits("00"), {}}})));
  const StructClass a({{bits("11"), {}}});
  EXPECT_FALSE(separates(p0, a, a));
}

TEST(Efd, RefereeStep) {
  const auto k2 = set_of(2);
  const auto k3 = set_of(3);
  const EFDPosition start{{}, {}, Ordinal::natural(2)};
  const EFDPosition next = efd_referee_step(*k2, *k3, start, {true, 1, Ordinal::natural(1)}, 2);
  EXPECT_EQ(next.a_tuple, (std::vector<Element>{1}));
  EXPECT_EQ(next.b_tuple, (std::vector<Element>{2}));
  EXPECT_EQ(next.rank, Ordinal::natural(1));
  EXPECT_THROW(efd_referee_step(*k2, *k3, {{}, {}, Ordinal::natural(0)}, {true, 0, Ordinal::natural(0)}, 0), Error);
  try {
    efd_referee_step(*k2, *k3, start, {true, 0, Ordinal::natural(2)}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "ordinal-not-decreased");
  }
}

TEST(Efd, PureSets) {
  EXPECT_EQ(efd_winner(*set_of(2), *set_of(3), 2), Player::II);
  EXPECT_EQ(efd_winner(*set_of(2), *set_of(3), 3), Player::I);
  const Structure c3 = make_structure("C", {{"E", 2}}, {0, 1, 2}, {{"E", {{0, 1}, {1, 2}, {2, 0}}}});
  const Structure c3b = make_structure("D", {{"E", 2}}, {0, 1, 2}, {{"E", {{1, 0}, {2, 1}, {0, 2}}}});
  for (unsigned n = 0; n <= 4; ++n) EXPECT_EQ(efd_winner(c3, c3b, n), Player::II);
  for (int k = 0; k <= 4; ++k) {
    for (int m = 0; m <= 4; ++m) {
      for (unsigned n = 0; n <= 4; ++n) {
        const bool ii = k == m || (k >= static_cast<int>(n) && m >= static_cast<int>(n));
        EXPECT_EQ(efd_winner(*set_of(k), *set_of(m), n), ii ? Player::II : Player::I) << k << " " << m << " " << n;
      }
    }
  }
}
