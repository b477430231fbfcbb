#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "efg/efb.hpp"
#include "efg/strings.hpp"

namespace efg {

/// Pieces generated beyond the listed ones in a countable split.
enum class TailKind {
  Empty,       // every further piece is empty (a degenerate split)
  FirstOneAt,  // piece i: first one at position offset + i
  BitIsOne,    // piece i: bit offset + i is one
};

std::string tail_kind_name(TailKind k);

/// Split of one side into clopen pieces. A finite split lists exactly two
/// pieces; a countable one lists some pieces and adds omega-many pieces
/// from `tail`, each with rank `tail_rank`.
struct StringSplit {
  Side side = Side::Left;
  bool infinite = false;
  std::vector<Clopen> pieces;
  std::vector<Ordinal> ranks;
  TailKind tail = TailKind::Empty;
  std::size_t offset = 0;
  Ordinal tail_rank;

  bool proper() const { return infinite && tail != TailKind::Empty; }
};

/// Claim that p_position (value true) or its negation separates.
struct StringClaim {
  std::size_t position = 0;
  bool value = true;
};

using StringMove = std::variant<StringSplit, StringClaim>;

std::string describe(const StringMove& m);

struct StringPosition {
  DenseProperty left;
  DenseProperty right;
  Ordinal rank;
};

/// II's answer: a listed piece or the i-th generated piece.
struct PieceChoice {
  bool generated = false;
  std::size_t index = 0;
};

Clopen generated_piece(TailKind kind, std::size_t offset, std::size_t i);

/// Legality of I's move in the propositional game on intensional classes.
Legality string_legal(const StringPosition& p, const StringMove& m, std::size_t support_bound);

/// Some literal p_i / ~p_i true on all of left and false on all of right.
std::optional<StringClaim> string_atomic_separator(const DenseProperty& left, const DenseProperty& right);

/// Player II for dense pairs. While no proper countable split has been
/// played it keeps the segment condition on its own shrunken copies of the
/// classes; afterwards it follows one string h of the chosen piece.
class DenseStrategyII {
 public:
  DenseStrategyII(const DenseProperty& left, const DenseProperty& right, std::size_t support_bound);

  PieceChoice respond(const StringSplit& move);

  bool in_endgame() const { return h_.has_value(); }
  const std::optional<UPString>& followed() const { return h_; }
  const DenseProperty& left() const { return left_; }
  const DenseProperty& right() const { return right_; }
  const Segment& segment() const { return f_; }

 private:
  PieceChoice maintain(const StringSplit& move);
  PieceChoice endgame(const StringSplit& move);
  PieceChoice enter_endgame(const StringSplit& move);

  DenseProperty left_;
  DenseProperty right_;
  Segment f_;
  std::size_t support_bound_;
  std::optional<UPString> h_;
  Side h_side_ = Side::Left;
};

/// II's response to a split at the given position (the strategy keeps its
/// own state between calls).
PieceChoice player2_move(DenseStrategyII& strategy, const StringPosition& pos, const StringSplit& move);

class StringAdversary {
 public:
  virtual ~StringAdversary() = default;
  virtual std::optional<StringMove> move(const StringPosition& p) = 0;
};

/// Seeded random clopen I: finite splits, degenerate and proper countable
/// splits, and rare (losing) claims.
class RandomAdversary : public StringAdversary {
 public:
  explicit RandomAdversary(std::uint64_t seed, std::size_t window = 8, std::size_t max_offset = 4);
  std::optional<StringMove> move(const StringPosition& p) override;

 private:
  Clopen random_clopen();
  std::optional<std::pair<Ordinal, Ordinal>> finite_ranks(const Ordinal& rank);
  std::optional<StringMove> infinite_split(const StringPosition& p, bool proper);

  std::mt19937_64 rng_;
  std::size_t window_;
  std::size_t max_offset_;
};

/// Opens with the countable split {first one at i} on the left (or the
/// right), then plays random finite splits.
class ScriptedAdversary : public StringAdversary {
 public:
  explicit ScriptedAdversary(std::uint64_t seed, Side side = Side::Left);
  std::optional<StringMove> move(const StringPosition& p) override;

 private:
  bool opened_ = false;
  Side side_;
  RandomAdversary fallback_;
};

struct StringStep {
  std::string move;
  std::string response;
  std::string mode;  // "maintain" or "endgame" after II's answer
};

struct StringGameTrace {
  std::string left;
  std::string right;
  Ordinal rank;
  std::vector<StringStep> steps;
  std::optional<Player> winner;  // empty when the round cap was hit
  std::string reason;
  bool endgame = false;
  /// check_condition_e9 held on II's copies after every maintain-mode answer.
  bool e9_maintained = true;
};

struct DenseGameOptions {
  std::size_t round_cap = 50;
  std::size_t support_bound = 8;
};

/// Referees one game on the true classes with II driven by DenseStrategyII.
/// Throws Error("rank-out-of-range") unless rank < omega^2.
StringGameTrace simulate_dense_game(const DenseProperty& p1, const DenseProperty& p2,
                                    const Ordinal& rank, StringAdversary& adversary,
                                    const DenseGameOptions& options = {});

}  // namespace efg
