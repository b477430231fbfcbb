#pragma once

#include <cstddef>
#include <memory>
#include <optional>

#include "efg/efb.hpp"
#include "efg/measure.hpp"
#include "efg/struct_class.hpp"

namespace efg {

struct SolverOptions {
  /// Supplementing moves use variables j < jmax.
  std::size_t jmax = 0;
  /// Largest class the solver will hold; larger ones raise budget-exceeded.
  std::size_t class_cap = 26;
  std::size_t node_budget = 4'000'000;
};

/// Exhaustive solver for EFB games of finite rank on finite classes, over the
/// fragment with binary splits and supplements. Positions are memoized, so
/// repeated queries against one solver are cheap.
class EFBSolver {
 public:
  EFBSolver(const StructClass& a, const StructClass& b, ComplexityMeasure measure,
            SolverOptions options = {});
  ~EFBSolver();
  EFBSolver(const EFBSolver&) = delete;
  EFBSolver& operator=(const EFBSolver&) = delete;

  /// Does I win the rank-n game from the start position?
  bool i_wins(unsigned n);
  /// Same for a reachable position (finite rank, members over the start's
  /// structures, variables among the start domain and j < jmax).
  bool i_wins(const EFBPosition& p);

  /// A move that keeps I winning, for an I-winning position of rank >= 2,
  /// or a claim at any rank.
  std::optional<Move> winning_move(const EFBPosition& p);

  /// For II at an I-losing position: index of a continuation from which I
  /// still loses.
  std::size_t losing_choice(const EFBPosition& p, const Move& m);

  /// Decision table covering every position reachable when I follows it.
  Strategy strategy(unsigned n);

  EFBPosition start(unsigned n) const;
  std::size_t nodes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SolveResult {
  unsigned value = 0;
  Strategy strategy;
};

/// Least n <= budget such that I wins the rank-n game, with a winning
/// strategy. Throws Error("not-nice") if the measure fails the corner
/// battery and Error("cap-exceeded") for budget > 8 or jmax > 4 (limits
/// adjustable through the arguments).
std::optional<SolveResult> min_separating_value(const StructClass& a, const StructClass& b,
                                                const ComplexityMeasure& measure, unsigned budget,
                                                std::size_t jmax, unsigned budget_cap = 8,
                                                std::size_t jmax_cap = 4);

}  // namespace efg
