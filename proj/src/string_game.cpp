#include "efg/string_game.hpp"

#include <algorithm>
#include <functional>

#include "efg/error.hpp"

namespace efg {

namespace {

std::vector<std::size_t> merge(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Calls fn on each extension of base to positions; true as soon as fn is.
bool some_pattern(const std::vector<std::size_t>& positions, const Segment& base,
                  const std::function<bool(const Segment&)>& fn) {
  std::vector<std::size_t> free;
  for (std::size_t p : positions) {
    if (!base.count(p)) free.push_back(p);
  }
  if (free.size() > 22) throw Error("cap-exceeded", "too many free positions to enumerate");
  Segment g = base;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
    for (std::size_t k = 0; k < free.size(); ++k) g[free[k]] = (bits >> k) & 1u;
    if (fn(g)) return true;
  }
  return false;
}

Legality illegal(std::string reason, std::string detail) { return {false, std::move(reason), std::move(detail)}; }

const DenseProperty& side_of(const StringPosition& p, Side s) { return s == Side::Left ? p.left : p.right; }

Clopen piece_of(const StringSplit& m, const PieceChoice& c) {
  return c.generated ? generated_piece(m.tail, m.offset, c.index) : m.pieces[c.index];
}

Ordinal rank_of(const StringSplit& m, const PieceChoice& c) {
  return c.generated ? m.tail_rank : m.ranks[c.index];
}

std::string choice_text(const PieceChoice& c) {
  return (c.generated ? "generated " : "listed ") + std::to_string(c.index);
}

const Ordinal& omega_squared() {
  static const Ordinal w2 = Ordinal::omega_power(Ordinal::natural(2));
  return w2;
}

// Every member of c is in some listed piece, or (for a proper split) in a
// generated one.
Legality check_cover(const DenseProperty& c, const StringSplit& m) {
  if (!m.proper()) {
    std::vector<std::size_t> support = c.support();
    for (const auto& piece : m.pieces) support = merge(support, piece.support());
    Segment missed;
    const bool gap = some_pattern(support, {}, [&](const Segment& pattern) {
      if (!allows(c, pattern)) return false;
      for (const auto& piece : m.pieces) {
        if (piece.allows(pattern)) return false;
      }
      missed = pattern;
      return true;
    });
    if (gap) return illegal("not-a-cover", "no piece holds the members extending " + segment_text(missed));
    return {};
  }
  // Generated pieces hold every string with a one at or beyond the offset;
  // the rest are zero from the offset on.
  if (m.offset > 20) throw Error("cap-exceeded", "tail offset too large to check the cover");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.offset); ++bits) {
    std::vector<bool> prefix(m.offset);
    for (std::size_t i = 0; i < m.offset; ++i) prefix[i] = (bits >> i) & 1u;
    const UPString h(prefix, {false});
    if (!contains(c, h)) continue;
    const bool held = std::any_of(m.pieces.begin(), m.pieces.end(),
                                  [&](const Clopen& piece) { return piece.contains(h); });
    if (!held) return illegal("not-a-cover", "no piece holds " + h.to_string());
  }
  return {};
}

}  // namespace

std::string tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::Empty: return "empty";
    case TailKind::FirstOneAt: return "first-one-at";
    case TailKind::BitIsOne: return "bit-is-one";
  }
  return "?";
}

std::string describe(const StringMove& m) {
  if (const auto* c = std::get_if<StringClaim>(&m)) {
    return std::string("claim ") + (c->value ? "" : "~") + "p" + std::to_string(c->position);
  }
  const auto& s = std::get<StringSplit>(m);
  std::string out = std::string(s.infinite ? "countable" : "finite") + " split " + side_name(s.side) + " [";
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (i > 0) out += "; ";
    out += s.pieces[i].to_string() + " @ " + s.ranks[i].to_string();
  }
  out += "]";
  if (s.infinite) {
    out += " tail " + tail_kind_name(s.tail) + "(" + std::to_string(s.offset) + ") @ " + s.tail_rank.to_string();
  }
  return out;
}

Clopen generated_piece(TailKind kind, std::size_t offset, std::size_t i) {
  switch (kind) {
    case TailKind::Empty:
      return Clopen::none();
    case TailKind::FirstOneAt: {
      Segment g;
      for (std::size_t k = offset; k < offset + i; ++k) g[k] = false;
      g[offset + i] = true;
      return Clopen::cylinder(g);
    }
    case TailKind::BitIsOne:
      return Clopen::cylinder({{offset + i, true}});
  }
  return Clopen::none();
}

Legality string_legal(const StringPosition& p, const StringMove& m, std::size_t support_bound) {
  if (const auto* c = std::get_if<StringClaim>(&m)) {
    const bool separates = !ext(p.left, {{c->position, !c->value}}) && !ext(p.right, {{c->position, c->value}});
    if (!separates) return illegal("not-separating", describe(m) + " does not separate the classes");
    return {};
  }
  if (p.rank <= Ordinal::natural(1)) {
    return illegal("terminal-position", "no moves other than a claim at rank " + p.rank.to_string());
  }
  const auto& s = std::get<StringSplit>(m);
  if (s.pieces.size() != s.ranks.size()) return illegal("not-a-cover", "every listed piece needs a rank");
  for (const auto& piece : s.pieces) {
    if (piece.support().size() > support_bound) {
      return illegal("support-too-large", piece.to_string() + " exceeds the support bound");
    }
  }
  for (const auto& r : s.ranks) {
    if (r.is_zero()) return illegal("zero-rank", "split ranks must be nonzero");
  }
  if (!s.infinite) {
    if (s.pieces.size() != 2) return illegal("not-a-cover", "a finite split has exactly two pieces");
    const Ordinal total = natural_sum(s.ranks[0], s.ranks[1]);
    if (total > p.rank) return illegal("rank-overflow", total.to_string() + " > " + p.rank.to_string());
  } else {
    if (s.pieces.empty() && !s.proper()) return illegal("empty-part", "a degenerate split lists at least one piece");
    if (s.tail_rank.is_zero()) return illegal("zero-rank", "split ranks must be nonzero");
    std::vector<FamilyEntry> entries;
    for (const auto& r : s.ranks) entries.push_back({r, Multiplicity::finite(1)});
    entries.push_back({s.tail_rank, Multiplicity::omega_many()});
    const Ordinal total = infinite_natural_sum(OmegaFamily(std::move(entries)));
    if (total > p.rank) return illegal("rank-overflow", total.to_string() + " > " + p.rank.to_string());
  }
  return check_cover(side_of(p, s.side), s);
}

std::optional<StringClaim> string_atomic_separator(const DenseProperty& left, const DenseProperty& right) {
  std::vector<std::size_t> positions = merge(left.support(), right.support());
  // Some position outside both supports stands for all of them.
  positions.push_back(positions.empty() ? 0 : positions.back() + 1);
  for (std::size_t i : positions) {
    for (bool value : {true, false}) {
      if (!ext(left, {{i, !value}}) && !ext(right, {{i, value}})) return StringClaim{i, value};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Player II

DenseStrategyII::DenseStrategyII(const DenseProperty& left, const DenseProperty& right,
                                 std::size_t support_bound)
    : left_(left), right_(right), support_bound_(support_bound) {
  if (auto f = check_condition_e9(left, right, support_bound)) {
    f_ = *f;
    left_ = left_.with_filter(f_);
    right_ = right_.with_filter(f_);
  }
}

PieceChoice DenseStrategyII::respond(const StringSplit& move) {
  if (h_) return endgame(move);
  if (move.proper()) return enter_endgame(move);
  return maintain(move);
}

PieceChoice DenseStrategyII::maintain(const StringSplit& move) {
  DenseProperty& mine = move.side == Side::Left ? left_ : right_;
  DenseProperty& other = move.side == Side::Left ? right_ : left_;
  std::vector<std::size_t> support = merge(mine.support(), other.support());
  for (const auto& piece : move.pieces) support = merge(support, piece.support());
  std::vector<std::size_t> free;
  for (std::size_t p : support) {
    if (!f_.count(p)) free.push_back(p);
  }
  auto good = [&](const Segment& f, const Clopen& piece) {
    return !some_pattern(support, f, [&](const Segment& pattern) {
      return !(allows(mine, pattern) && piece.allows(pattern));
    });
  };
  // Extend f by as few positions as possible until one piece keeps every
  // extension alive.
  for (std::size_t extra = 0; extra <= free.size(); ++extra) {
    std::vector<bool> mask(free.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(extra), true);
    do {
      std::vector<std::size_t> chosen;
      for (std::size_t k = 0; k < free.size(); ++k) {
        if (mask[k]) chosen.push_back(free[k]);
      }
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << extra); ++bits) {
        Segment f = f_;
        for (std::size_t k = 0; k < extra; ++k) f[chosen[k]] = (bits >> k) & 1u;
        for (std::size_t i = 0; i < move.pieces.size(); ++i) {
          if (!good(f, move.pieces[i])) continue;
          f_ = f;
          mine = mine.restricted(move.pieces[i]).with_filter(f_);
          other = other.with_filter(f_);
          return {false, i};
        }
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  // Unreachable while the invariant holds; answer something legal.
  mine = mine.restricted(move.pieces[0]);
  return {false, 0};
}

PieceChoice DenseStrategyII::enter_endgame(const StringSplit& move) {
  DenseProperty& mine = move.side == Side::Left ? left_ : right_;
  auto take = [&](const PieceChoice& c) -> bool {
    if (!rank_of(move, c).is_finite()) return false;
    const DenseProperty part = mine.restricted(piece_of(move, c));
    auto h = witness(part, {});
    if (!h) return false;
    mine = part;
    h_ = *h;
    h_side_ = move.side;
    return true;
  };
  for (std::size_t i = 0; i < move.pieces.size(); ++i) {
    if (take({false, i})) return {false, i};
  }
  std::size_t reach = move.offset + 2;
  for (const auto& p : mine.support()) reach = std::max(reach, p + 2);
  for (std::size_t i = 0; i <= reach; ++i) {
    if (take({true, i})) return {true, i};
  }
  return {false, 0};
}

PieceChoice DenseStrategyII::endgame(const StringSplit& move) {
  DenseProperty& mine = move.side == Side::Left ? left_ : right_;
  auto pieces_size = move.pieces.size();
  if (move.side == h_side_) {
    for (std::size_t i = 0; i < pieces_size; ++i) {
      if (move.pieces[i].contains(*h_)) {
        mine = mine.restricted(move.pieces[i]);
        return {false, i};
      }
    }
    if (move.proper()) {
      const std::size_t reach = h_->prefix().size() + h_->period().size() + 1;
      for (std::size_t i = 0; i <= reach; ++i) {
        const Clopen piece = generated_piece(move.tail, move.offset, i);
        if (piece.contains(*h_)) {
          mine = mine.restricted(piece);
          return {true, i};
        }
      }
    }
    return {false, 0};
  }
  // The other side: keep h's long prefixes alive there.
  std::vector<std::size_t> support = mine.support();
  for (const auto& piece : move.pieces) support = merge(support, piece.support());
  const std::size_t n = support.empty() ? 1 : support.back() + 1;
  Segment g;
  for (std::size_t i = 0; i < std::max(n, move.offset + 1); ++i) g[i] = h_->bit(i);
  for (std::size_t i = 0; i < pieces_size; ++i) {
    const DenseProperty part = mine.restricted(move.pieces[i]);
    if (ext(part, g)) {
      mine = part;
      return {false, i};
    }
  }
  if (move.proper()) {
    // g decides which generated piece, if any, its strings fall into.
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Clopen piece = generated_piece(move.tail, move.offset, i);
      const DenseProperty part = mine.restricted(piece);
      if (ext(part, g)) {
        mine = part;
        return {true, i};
      }
    }
  }
  return {false, 0};
}

PieceChoice player2_move(DenseStrategyII& strategy, const StringPosition&, const StringSplit& move) {
  return strategy.respond(move);
}

// ---------------------------------------------------------------------------
// Adversaries

RandomAdversary::RandomAdversary(std::uint64_t seed, std::size_t window, std::size_t max_offset)
    : rng_(seed), window_(window), max_offset_(max_offset) {}

Clopen RandomAdversary::random_clopen() {
  std::uniform_int_distribution<std::size_t> count(1, 3);
  std::uniform_int_distribution<std::size_t> pos(0, window_ - 1);
  std::vector<std::size_t> support;
  const std::size_t k = count(rng_);
  while (support.size() < k) {
    const std::size_t p = pos(rng_);
    if (std::find(support.begin(), support.end(), p) == support.end()) support.push_back(p);
  }
  std::sort(support.begin(), support.end());
  std::vector<bool> table(std::size_t{1} << support.size());
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = coin(rng_);
    const auto ones = std::count(table.begin(), table.end(), true);
    if (ones > 0 && ones < static_cast<std::ptrdiff_t>(table.size())) break;
  }
  return Clopen::from_table(std::move(support), std::move(table));
}

std::optional<std::pair<Ordinal, Ordinal>> RandomAdversary::finite_ranks(const Ordinal& rank) {
  const std::uint64_t k = rank.coefficient_at(Ordinal::natural(1));
  const std::uint64_t m = rank.coefficient_at(Ordinal::natural(0));
  std::uniform_int_distribution<std::uint64_t> wk(0, k);
  std::uniform_int_distribution<std::uint64_t> fin(0, std::max<std::uint64_t>(m, 5));
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Ordinal a = natural_sum(Ordinal::omega_power(Ordinal::natural(1), wk(rng_)), Ordinal::natural(fin(rng_)));
    const Ordinal b = natural_sum(Ordinal::omega_power(Ordinal::natural(1), wk(rng_)), Ordinal::natural(fin(rng_)));
    if (a.is_zero() || b.is_zero()) continue;
    if (natural_sum(a, b) <= rank) return std::make_pair(a, b);
  }
  return std::nullopt;
}

std::optional<StringMove> RandomAdversary::infinite_split(const StringPosition& p, bool proper) {
  const std::uint64_t k = p.rank.coefficient_at(Ordinal::natural(1));
  if (k == 0) return std::nullopt;
  std::bernoulli_distribution coin(0.5);
  StringSplit s;
  s.side = coin(rng_) ? Side::Left : Side::Right;
  s.infinite = true;
  std::uniform_int_distribution<std::uint64_t> small(1, 4);
  s.tail_rank = Ordinal::natural(small(rng_));
  std::uniform_int_distribution<std::size_t> off(0, max_offset_);
  if (proper) {
    s.tail = coin(rng_) ? TailKind::FirstOneAt : TailKind::BitIsOne;
    s.offset = off(rng_);
    // Zeros on a short window past the offset hold every string that is
    // zero from the offset on.
    Segment zeros;
    for (std::size_t i = s.offset; i < s.offset + 2; ++i) zeros[i] = false;
    s.pieces.push_back(Clopen::cylinder(zeros));
    if (coin(rng_)) s.pieces.push_back(random_clopen());
  } else {
    const Clopen c = random_clopen();
    s.pieces = {c, c.complement()};
  }
  // Listed ranks: omega-parts summing to at most k-1 keep t within rank.
  std::uint64_t budget = k - 1;
  std::uniform_int_distribution<std::uint64_t> fin(1, 5);
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    std::uniform_int_distribution<std::uint64_t> wpart(0, budget);
    const std::uint64_t a = wpart(rng_);
    budget -= a;
    s.ranks.push_back(natural_sum(Ordinal::omega_power(Ordinal::natural(1), a), Ordinal::natural(fin(rng_))));
  }
  return StringMove{s};
}

std::optional<StringMove> RandomAdversary::move(const StringPosition& p) {
  if (p.rank <= Ordinal::natural(1)) return std::nullopt;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double roll = u(rng_);
  if (roll < 0.01) {
    std::uniform_int_distribution<std::size_t> pos(0, window_ - 1);
    std::bernoulli_distribution coin(0.5);
    return StringMove{StringClaim{pos(rng_), coin(rng_)}};
  }
  if (!p.rank.is_finite() && roll < 0.25) {
    if (auto m = infinite_split(p, true)) return m;
  } else if (!p.rank.is_finite() && roll < 0.35) {
    if (auto m = infinite_split(p, false)) return m;
  }
  auto ranks = finite_ranks(p.rank);
  if (!ranks) return std::nullopt;
  std::bernoulli_distribution coin(0.5);
  StringSplit s;
  s.side = coin(rng_) ? Side::Left : Side::Right;
  const Clopen c = random_clopen();
  Clopen d = c.complement();
  if (coin(rng_)) d = d.unite(random_clopen());
  s.pieces = {c, d};
  s.ranks = {ranks->first, ranks->second};
  return StringMove{s};
}

ScriptedAdversary::ScriptedAdversary(std::uint64_t seed, Side side) : side_(side), fallback_(seed) {}

std::optional<StringMove> ScriptedAdversary::move(const StringPosition& p) {
  if (!opened_ && !p.rank.is_finite()) {
    opened_ = true;
    StringSplit s;
    s.side = side_;
    s.infinite = true;
    s.tail = TailKind::FirstOneAt;
    s.offset = 0;
    s.pieces = {Clopen::cylinder({{0, false}, {1, false}})};
    s.ranks = {Ordinal::natural(1)};
    s.tail_rank = Ordinal::natural(std::max<std::uint64_t>(1, p.rank.coefficient_at(Ordinal::natural(0))));
    // Spend the spare omega-parts on the listed piece.
    const std::uint64_t k = p.rank.coefficient_at(Ordinal::natural(1));
    if (k > 1) s.ranks[0] = Ordinal::omega_power(Ordinal::natural(1), k - 1);
    return StringMove{s};
  }
  opened_ = true;
  return fallback_.move(p);
}

// ---------------------------------------------------------------------------
// Referee

StringGameTrace simulate_dense_game(const DenseProperty& p1, const DenseProperty& p2, const Ordinal& rank,
                                    StringAdversary& adversary, const DenseGameOptions& options) {
  if (rank.is_zero() || rank >= omega_squared()) {
    throw Error("rank-out-of-range", "the starting rank must lie in [1, w^2)");
  }
  StringGameTrace trace;
  trace.left = p1.describe();
  trace.right = p2.describe();
  trace.rank = rank;
  StringPosition pos{p1, p2, rank};
  DenseStrategyII ii(p1, p2, options.support_bound);
  auto finish = [&](std::optional<Player> w, std::string reason) {
    trace.winner = w;
    trace.reason = std::move(reason);
    trace.endgame = ii.in_endgame();
    return trace;
  };
  for (std::size_t round = 0; round < options.round_cap; ++round) {
    if (pos.rank <= Ordinal::natural(1)) {
      return string_atomic_separator(pos.left, pos.right) ? finish(Player::I, "terminal-separator")
                                                          : finish(Player::II, "terminal-no-separator");
    }
    auto m = adversary.move(pos);
    if (!m) return finish(Player::II, "I-stalled");
    const Legality legal = string_legal(pos, *m, options.support_bound);
    if (!legal.legal) {
      trace.steps.push_back({describe(*m), "", "forfeit"});
      return finish(Player::II, "forfeit:" + legal.reason);
    }
    if (std::holds_alternative<StringClaim>(*m)) {
      trace.steps.push_back({describe(*m), "", ii.in_endgame() ? "endgame" : "maintain"});
      return finish(Player::I, "claim");
    }
    const auto& split = std::get<StringSplit>(*m);
    const PieceChoice c = player2_move(ii, pos, split);
    if ((!c.generated && c.index >= split.pieces.size()) || (c.generated && !split.proper())) {
      return finish(Player::I, "II-bad-choice");
    }
    const Clopen piece = piece_of(split, c);
    if (split.side == Side::Left) {
      pos.left = pos.left.restricted(piece);
    } else {
      pos.right = pos.right.restricted(piece);
    }
    pos.rank = rank_of(split, c);
    const bool endgame = ii.in_endgame();
    if (!endgame && !check_condition_e9(ii.left(), ii.right(), options.support_bound)) {
      trace.e9_maintained = false;
    }
    trace.steps.push_back({describe(*m), choice_text(c), endgame ? "endgame" : "maintain"});
  }
  if (pos.rank <= Ordinal::natural(1)) {
    return string_atomic_separator(pos.left, pos.right) ? finish(Player::I, "terminal-separator")
                                                        : finish(Player::II, "terminal-no-separator");
  }
  return finish(std::nullopt, "round-cap");
}

}  // namespace efg
