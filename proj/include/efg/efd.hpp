#pragma once

#include <cstddef>
#include <vector>

#include "efg/ordinal.hpp"
#include "efg/structure.hpp"

namespace efg {

enum class Player { I, II };

const char* player_name(Player p);

struct EFDPosition {
  std::vector<Element> a_tuple;
  std::vector<Element> b_tuple;
  Ordinal rank;
};

/// Player I picks `element` in A (in_a) or in B, together with beta < rank.
struct EFDMove {
  bool in_a = true;
  Element element = 0;
  Ordinal beta;
};

/// One round: I's move followed by II's reply in the other structure.
/// Throws Error("terminal-position"), Error("ordinal-not-decreased") or
/// Error("not-in-universe").
EFDPosition efd_referee_step(const Structure& a, const Structure& b, const EFDPosition& p,
                             const EFDMove& move, Element reply);

struct EFDOptions {
  /// Fix I's ordinal to rank-1 (otherwise every beta < rank is tried).
  bool maximal_ordinal = true;
  std::size_t node_budget = 2'000'000;
};

/// Winner of EFD_n(A, B) from the empty position by exhaustive search.
/// Throws Error("budget-exceeded") past the node budget.
Player efd_winner(const Structure& a, const Structure& b, unsigned n, const EFDOptions& options = {});

}  // namespace efg
