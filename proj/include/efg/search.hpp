#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "efg/formula.hpp"
#include "efg/measure.hpp"
#include "efg/struct_class.hpp"

namespace efg {

struct EnumerationBudget {
  unsigned max_value = 1;
  std::size_t jmax = 0;
  Vocabulary vocabulary;
  /// Stop with Error("budget-exceeded") once this many formulas are held.
  std::size_t entry_cap = 3'000'000;
};

/// Every NNF formula built from literals over x_0..x_{jmax-1}, binary
/// connectives and quantifiers with value <= max_value, in nondecreasing
/// value order. Operands of And/Or are distinct and sorted.
std::vector<Formula> enumerate_formulas(const EnumerationBudget& b, const ComplexityMeasure& m);

struct SearchResult {
  Formula formula;
  unsigned value = 0;
};

/// A separating formula of least value with free variables in the classes'
/// domain, quantifying only x_j for j < jmax. Formulas with the same truth
/// table over every structure and total assignment, and the same free
/// variables, are explored once (the cheapest one), which is sound for
/// measures whose r and q are monotone.
std::optional<SearchResult> min_separating_formula(const StructClass& a, const StructClass& b,
                                                   const ComplexityMeasure& m,
                                                   const EnumerationBudget& budget);

}  // namespace efg
