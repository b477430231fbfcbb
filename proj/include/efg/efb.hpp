#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "efg/efd.hpp"
#include "efg/formula.hpp"
#include "efg/measure.hpp"
#include "efg/ordinal.hpp"
#include "efg/struct_class.hpp"

namespace efg {

enum class Side { Left, Right };

const char* side_name(Side s);

struct EFBPosition {
  StructClass left;
  StructClass right;
  Ordinal rank;
};

/// Key used by strategy tables: canonical classes plus the rank.
std::string position_key(const EFBPosition& p);

struct FiniteSplit {
  Side side = Side::Left;
  std::array<StructClass, 2> parts;
  std::array<Ordinal, 2> ranks;
};

/// Countable split. `parts`/`ranks` are the listed pieces; `tail` describes
/// the remaining omega-indexed pieces, which are empty, by their ranks. The
/// rank family is ranks + tail and must be infinite.
struct InfiniteSplit {
  Side side = Side::Left;
  std::vector<StructClass> parts;
  std::vector<Ordinal> ranks;
  std::vector<FamilyEntry> tail;
};

/// `choice[i]` is the element picked for members()[i] of the chosen side.
struct Supplement {
  Side side = Side::Left;
  int j = 0;
  std::vector<Element> choice;
  Ordinal new_rank;
};

struct ClaimAtomicWin {
  Formula literal;
};

using Move = std::variant<FiniteSplit, InfiniteSplit, Supplement, ClaimAtomicWin>;

std::string move_kind(const Move& m);

struct Legality {
  bool legal = true;
  std::string reason;  // empty when legal
  std::string detail;
};

/// Checks a move of player I. Reasons: rank-overflow, not-a-cover,
/// empty-part, bad-choice-function, claim-fails, zero-rank,
/// terminal-position, wrong-mode, domain-mismatch.
Legality efb_legal(const EFBPosition& p, const Move& m, const ComplexityMeasure& measure,
                   bool propositional = false);

/// Number of continuations II can choose from (0 for claims, 1 for supplements).
std::size_t choice_count(const Move& m);

/// Position after a legal move and II's choice (ignored for supplements).
EFBPosition apply_move(const EFBPosition& p, const Move& m, std::size_t choice);

using StrategyI = std::function<std::optional<Move>(const EFBPosition&)>;
using StrategyII = std::function<std::size_t(const EFBPosition&, const Move&)>;

struct TraceStep {
  Move move;
  std::optional<std::size_t> choice;
};

struct Outcome {
  std::optional<Player> winner;  // empty when inconclusive
  std::string reason;
  EFBPosition terminal;
};

struct GameTrace {
  EFBPosition initial;
  std::string measure;
  bool propositional = false;
  std::vector<TraceStep> steps;
  Outcome outcome;
};

struct RefereeOptions {
  std::size_t round_cap = 50;
  bool propositional = false;
};

/// Plays I against II. Rank-1 positions are terminal (I wins iff an atomic
/// separator exists); a legal claim ends the game for I; an illegal move or
/// a stall loses for I; an out-of-range choice loses for II.
GameTrace efb_referee(const EFBPosition& start, const ComplexityMeasure& measure,
                      const StrategyI& player1, const StrategyII& player2,
                      const RefereeOptions& options = {});

/// Re-referees the recorded moves and choices of a trace.
GameTrace replay(const GameTrace& trace, const ComplexityMeasure& measure,
                 std::size_t round_cap = 50);

/// Decision table keyed by position_key.
struct Strategy {
  std::map<std::string, Move> table;

  std::optional<Move> operator()(const EFBPosition& p) const;
};

}  // namespace efg
