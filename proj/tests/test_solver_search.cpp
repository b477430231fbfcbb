#include <gtest/gtest.h>

#include <memory>
#include <set>

#include "efg/error.hpp"
#include "efg/json_io.hpp"
#include "efg/measure.hpp"
#include "efg/search.hpp"
#include "efg/solver.hpp"
#include "oracles.hpp"

using namespace efg;

namespace {

StructClass strings(const std::set<std::string>& list) {
  std::vector<TaggedStructure> members;
  for (const auto& s : list) members.push_back({std::make_shared<const Structure>(bitstring_structure(s)), {}});
  return StructClass(std::move(members));
}

std::optional<unsigned> game_value(const StructClass& a, const StructClass& b, const char* m, unsigned budget,
                                   std::size_t jmax = 0) {
  auto r = min_separating_value(a, b, builtin_measure(m), budget, jmax);
  return r ? std::optional<unsigned>(r->value) : std::nullopt;
}

std::optional<SearchResult> search(const StructClass& a, const StructClass& b, const char* m, unsigned budget,
                                   std::size_t jmax = 0) {
  EnumerationBudget eb;
  eb.max_value = budget;
  eb.jmax = jmax;
  return min_separating_formula(a, b, builtin_measure(m), eb);
}

std::set<std::string> texts(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(to_text(f));
  return out;
}

std::vector<CorpusInstance> corpus() {
  return corpus_from_json(read_json_file(std::string(EFG_TEST_DATA_DIR) + "/small_corpus.json"));
}

std::set<std::string> string_ids(const StructClass& c) {
  std::set<std::string> out;
  for (const auto& m : c.members()) out.insert(m.id());
  return out;
}

bool propositional(const CorpusInstance& inst) {
  if (inst.jmax != 0 || inst.a.empty()) return false;
  const Vocabulary& v = inst.a.members()[0].structure->vocabulary;
  return !v.empty() && v.begin()->second == 0;
}

}  // namespace

TEST(Solver, MinSizeExamples) {
  EXPECT_EQ(game_value(strings({"1"}), strings({"0"}), "size", 8), 1u);
  EXPECT_EQ(game_value(strings({"01", "10"}), strings({"00", "11"}), "size", 8), 4u);
  EXPECT_EQ(game_value(strings({"01", "10"}), strings({"00", "11"}), "c1", 8), 3u);
  for (unsigned budget = 1; budget <= 8; ++budget) {
    EXPECT_FALSE(game_value(strings({"01", "10"}), strings({"01", "10"}), "size", budget));
  }
}

TEST(Solver, CapsAndNiceness) {
  const StructClass a = strings({"1"});
  const StructClass b = strings({"0"});
  try {
    min_separating_value(a, b, builtin_measure("size"), 9, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "cap-exceeded");
  }
  EXPECT_THROW(min_separating_value(a, b, builtin_measure("size"), 2, 5), Error);
  try {
    min_separating_value(a, b, builtin_measure("qrank"), 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not-nice");
  }
}

TEST(Solver, MonotoneInRank) {
  const StructClass a = strings({"011", "101", "110", "111"});
  const StructClass b = strings({"000", "001", "010", "100"});
  EFBSolver solver(a, b, builtin_measure("size"));
  bool seen = false;
  for (unsigned n = 1; n <= 8; ++n) {
    const bool wins = solver.i_wins(n);
    EXPECT_TRUE(!seen || wins) << n;
    seen = seen || wins;
  }
  EXPECT_FALSE(solver.i_wins(4));
  EXPECT_TRUE(solver.i_wins(5));
}

TEST(Search, Examples) {
  const auto one = search(strings({"1"}), strings({"0"}), "size", 4);
  ASSERT_TRUE(one);
  EXPECT_EQ(to_text(one->formula), "p0");
  EXPECT_EQ(one->value, 1u);
  const auto parity = search(strings({"01", "10"}), strings({"00", "11"}), "size", 4);
  ASSERT_TRUE(parity);
  EXPECT_EQ(parity->value, 4u);
  EXPECT_FALSE(search(strings({"01", "10"}), strings({"00", "11"}), "size", 3));
  const auto zeros = search(strings({"00"}), strings({"01", "10", "11"}), "size", 4);
  ASSERT_TRUE(zeros);
  EXPECT_EQ(to_text(zeros->formula), "(~p0 & ~p1)");
  EXPECT_EQ(zeros->value, 2u);
}

TEST(Search, EnumerationLevels) {
  const auto size_m = builtin_measure("size");
  EnumerationBudget b{1, 0, {{"p0", 0}}};
  EXPECT_EQ(texts(enumerate_formulas(b, size_m)), (std::set<std::string>{"p0", "~p0"}));
  b.jmax = 1;
  EXPECT_EQ(texts(enumerate_formulas(b, size_m)), (std::set<std::string>{"p0", "~p0", "x0 = x0", "x0 != x0"}));
  b = {2, 0, {{"p0", 0}}};
  EXPECT_EQ(texts(enumerate_formulas(b, size_m)),
            (std::set<std::string>{"p0", "~p0", "(p0 & ~p0)", "(p0 | ~p0)"}));
  b.jmax = 1;
  const auto with_quantifiers = texts(enumerate_formulas(b, size_m));
  EXPECT_TRUE(with_quantifiers.count("E x0. p0"));
  EXPECT_TRUE(with_quantifiers.count("A x0. x0 = x0"));
}

// The enumeration at value <= 3 over one proposition equals a catalog built
// by direct recursion.
TEST(Search, CatalogOverOneProposition) {
  std::vector<std::vector<Formula>> level(4);
  level[1] = {Formula::atom("p0", {}), Formula::neg_atom("p0", {})};
  for (std::size_t v = 2; v <= 3; ++v) {
    for (std::size_t a = 1; a < v; ++a) {
      for (const auto& f : level[a]) {
        for (const auto& g : level[v - a]) {
          if (!(f < g)) continue;
          level[v].push_back(Formula::conj(f, g));
          level[v].push_back(Formula::disj(f, g));
        }
      }
    }
  }
  std::set<std::string> catalog;
  for (const auto& l : level) {
    for (const auto& f : l) catalog.insert(to_text(f));
  }
  const EnumerationBudget b{3, 0, {{"p0", 0}}};
  EXPECT_EQ(texts(enumerate_formulas(b, builtin_measure("size"))), catalog);
}

TEST(Search, CanonicalCountOverTwoPropositions) {
  const auto counts = oracle::count_propositional(4, 3);
  std::uint64_t expected = 0;
  for (auto c : counts) expected += c;
  EXPECT_EQ(expected, 112u);
  const EnumerationBudget b{3, 0, {{"p0", 0}, {"p1", 0}}};
  EXPECT_EQ(enumerate_formulas(b, builtin_measure("size")).size(), expected);
}

TEST(Corpus, HasTheAdvertisedShape) {
  const auto instances = corpus();
  ASSERT_GE(instances.size(), 40u);
  for (const auto& inst : instances) {
    EXPECT_LE(inst.jmax, 2u);
    if (propositional(inst)) {
      EXPECT_LE(inst.a.size(), 4u) << inst.name;
      EXPECT_LE(inst.b.size(), 4u) << inst.name;
      EXPECT_LE(inst.a.members()[0].id().size(), 3u) << inst.name;
    } else {
      for (const auto* c : {&inst.a, &inst.b}) {
        for (const auto& m : c->members()) EXPECT_LE(m.structure->universe.size(), 3u) << inst.name;
      }
    }
  }
}

// Frozen values: propositional ones against the Boolean-function oracle,
// every one against the solver.
TEST(Corpus, ExpectedValuesMatchOracles) {
  for (const auto& inst : corpus()) {
    for (const auto& [name, budget] : {std::pair<const char*, unsigned>{"size", 6}, {"c1", 4}}) {
      const auto expected = inst.expected.at(name);
      if (propositional(inst)) {
        EXPECT_EQ(oracle::min_propositional(string_ids(inst.a), string_ids(inst.b), std::string(name) == "c1", budget),
                  expected)
            << inst.name << " " << name;
      }
      EXPECT_EQ(game_value(inst.a, inst.b, name, budget, inst.jmax), expected) << inst.name << " " << name;
    }
  }
}

TEST(Corpus, SearchFormulasSeparate) {
  for (const auto& inst : corpus()) {
    const auto r = search(inst.a, inst.b, "size", 6, inst.jmax);
    if (!r) continue;
    EXPECT_TRUE(separates(r->formula, inst.a, inst.b)) << inst.name;
    EXPECT_EQ(size(r->formula), Ordinal::natural(r->value));
  }
}
