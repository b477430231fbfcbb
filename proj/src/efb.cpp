#include "efg/efb.hpp"

#include <algorithm>

#include "efg/error.hpp"

namespace efg {

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

std::string position_key(const EFBPosition& p) {
  return p.left.canonical_key() + "|" + p.right.canonical_key() + "|" + p.rank.to_string();
}

std::string move_kind(const Move& m) {
  struct {
    std::string operator()(const FiniteSplit&) const { return "finite-split"; }
    std::string operator()(const InfiniteSplit&) const { return "infinite-split"; }
    std::string operator()(const Supplement&) const { return "supplement"; }
    std::string operator()(const ClaimAtomicWin&) const { return "claim"; }
  } visitor;
  return std::visit(visitor, m);
}

namespace {

Legality illegal(std::string reason, std::string detail) {
  return {false, std::move(reason), std::move(detail)};
}

const StructClass& side_class(const EFBPosition& p, Side s) {
  return s == Side::Left ? p.left : p.right;
}

std::set<int> position_domain(const EFBPosition& p) {
  return p.left.empty() ? p.right.domain() : p.left.domain();
}

// Parts must be subclasses with the right domain whose union is the class.
Legality check_cover(const StructClass& whole, const std::vector<const StructClass*>& parts) {
  std::vector<TaggedStructure> seen;
  for (const StructClass* part : parts) {
    if (!part->empty() && part->domain() != whole.domain() && !whole.empty()) {
      return illegal("domain-mismatch", "a part binds different variables");
    }
    for (const auto& m : part->members()) {
      if (!whole.contains(m)) return illegal("not-a-cover", "a part contains a foreign member");
      seen.push_back(m);
    }
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  if (seen.size() != whole.size()) return illegal("not-a-cover", "the parts miss a member");
  return {};
}

}  // namespace

Legality efb_legal(const EFBPosition& p, const Move& m, const ComplexityMeasure& measure,
                   bool propositional) {
  if (!p.left.empty() && !p.right.empty() && p.left.domain() != p.right.domain()) {
    return illegal("domain-mismatch", "left and right classes bind different variables");
  }
  if (const auto* claim = std::get_if<ClaimAtomicWin>(&m)) {
    if (!claim->literal.is_literal()) return illegal("claim-fails", "claimed formula is not a literal");
    const auto fv = free_vars(claim->literal);
    const auto dom = position_domain(p);
    if (!std::includes(dom.begin(), dom.end(), fv.begin(), fv.end())) {
      return illegal("claim-fails", "literal mentions an unbound variable");
    }
    if (!separates(claim->literal, p.left, p.right)) {
      return illegal("claim-fails", to_text(claim->literal) + " does not separate");
    }
    return {};
  }
  if (p.rank <= Ordinal::natural(1)) {
    return illegal("terminal-position", "no moves other than a claim at rank " + p.rank.to_string());
  }
  if (const auto* split = std::get_if<FiniteSplit>(&m)) {
    for (const auto& r : split->ranks) {
      if (r.is_zero()) return illegal("zero-rank", "split ranks must be nonzero");
    }
    const Ordinal total = measure.r(split->ranks[0], split->ranks[1]);
    if (total > p.rank) {
      return illegal("rank-overflow", "r(" + split->ranks[0].to_string() + ", " +
                                          split->ranks[1].to_string() + ") = " + total.to_string() +
                                          " exceeds " + p.rank.to_string());
    }
    return check_cover(side_class(p, split->side), {&split->parts[0], &split->parts[1]});
  }
  if (const auto* split = std::get_if<InfiniteSplit>(&m)) {
    if (split->parts.empty()) return illegal("empty-part", "an infinite split must list a part");
    if (split->parts.size() != split->ranks.size()) {
      return illegal("not-a-cover", "every listed part needs a rank");
    }
    std::vector<FamilyEntry> entries;
    for (const auto& r : split->ranks) {
      if (r.is_zero()) return illegal("zero-rank", "split ranks must be nonzero");
      entries.push_back({r, Multiplicity::finite(1)});
    }
    bool infinite = false;
    for (const auto& e : split->tail) {
      if (e.value.is_zero()) return illegal("zero-rank", "split ranks must be nonzero");
      if (!e.multiplicity.many && e.multiplicity.count == 0) {
        return illegal("zero-rank", "tail multiplicities must be positive");
      }
      infinite = infinite || e.multiplicity.many;
      entries.push_back(e);
    }
    if (!infinite) return illegal("not-a-cover", "an infinite split needs omega-many ranks");
    const Ordinal total = measure.t(OmegaFamily(std::move(entries)));
    if (total > p.rank) {
      return illegal("rank-overflow",
                     "t(ranks) = " + total.to_string() + " exceeds " + p.rank.to_string());
    }
    std::vector<const StructClass*> parts;
    for (const auto& part : split->parts) parts.push_back(&part);
    return check_cover(side_class(p, split->side), parts);
  }
  const auto& sup = std::get<Supplement>(m);
  if (propositional) return illegal("wrong-mode", "supplementing moves are not allowed here");
  if (sup.new_rank.is_zero()) return illegal("zero-rank", "the new rank must be nonzero");
  if (sup.j < 0) return illegal("bad-choice-function", "variable indices are natural numbers");
  const Ordinal next = measure.q(sup.new_rank);
  if (next > p.rank) {
    return illegal("rank-overflow",
                   "q(" + sup.new_rank.to_string() + ") = " + next.to_string() + " exceeds " +
                       p.rank.to_string());
  }
  const StructClass& chosen = side_class(p, sup.side);
  if (sup.choice.size() != chosen.size()) {
    return illegal("bad-choice-function", "the choice function must cover every member");
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!chosen.members()[i].structure->contains(sup.choice[i])) {
      return illegal("bad-choice-function", "chosen element outside the member's universe");
    }
  }
  const StructClass& other = side_class(p, sup.side == Side::Left ? Side::Right : Side::Left);
  for (const auto& mem : other.members()) {
    if (mem.structure->universe.empty()) {
      return illegal("bad-choice-function", "a structure on the other side is empty");
    }
  }
  return {};
}

std::size_t choice_count(const Move& m) {
  if (const auto* s = std::get_if<FiniteSplit>(&m)) return s->parts.size();
  if (const auto* s = std::get_if<InfiniteSplit>(&m)) return s->parts.size();
  if (std::holds_alternative<Supplement>(m)) return 1;
  return 0;
}

EFBPosition apply_move(const EFBPosition& p, const Move& m, std::size_t choice) {
  EFBPosition next = p;
  if (const auto* s = std::get_if<FiniteSplit>(&m)) {
    (s->side == Side::Left ? next.left : next.right) = s->parts.at(choice);
    next.rank = s->ranks.at(choice);
  } else if (const auto* s = std::get_if<InfiniteSplit>(&m)) {
    (s->side == Side::Left ? next.left : next.right) = s->parts.at(choice);
    next.rank = s->ranks.at(choice);
  } else if (const auto* s = std::get_if<Supplement>(&m)) {
    if (s->side == Side::Left) {
      next.left = extend_with_choice(p.left, s->j, s->choice);
      next.right = extend_with_star(p.right, s->j);
    } else {
      next.left = extend_with_star(p.left, s->j);
      next.right = extend_with_choice(p.right, s->j, s->choice);
    }
    next.rank = s->new_rank;
  } else {
    throw Error("terminal-position", "a claim has no continuation");
  }
  return next;
}

GameTrace efb_referee(const EFBPosition& start, const ComplexityMeasure& measure,
                      const StrategyI& player1, const StrategyII& player2,
                      const RefereeOptions& options) {
  GameTrace trace;
  trace.initial = start;
  trace.measure = measure.name;
  trace.propositional = options.propositional;
  EFBPosition pos = start;
  auto finish = [&](std::optional<Player> winner, std::string reason) {
    trace.outcome = {winner, std::move(reason), pos};
    return trace;
  };
  for (std::size_t round = 0; round < options.round_cap; ++round) {
    if (pos.rank == Ordinal::natural(1)) {
      return atomic_separator(pos.left, pos.right) ? finish(Player::I, "terminal-separator")
                                                   : finish(Player::II, "terminal-no-separator");
    }
    std::optional<Move> move = player1(pos);
    if (!move) return finish(Player::II, "I-stalled");
    const Legality legal = efb_legal(pos, *move, measure, options.propositional);
    trace.steps.push_back({*move, std::nullopt});
    if (!legal.legal) return finish(Player::II, "forfeit:" + legal.reason);
    if (std::holds_alternative<ClaimAtomicWin>(*move)) return finish(Player::I, "claim");
    std::size_t choice = 0;
    if (choice_count(*move) > 1 || std::holds_alternative<InfiniteSplit>(*move)) {
      choice = player2(pos, *move);
      trace.steps.back().choice = choice;
      if (choice >= choice_count(*move)) return finish(Player::I, "II-bad-choice");
    }
    pos = apply_move(pos, *move, choice);
  }
  return finish(std::nullopt, "round-cap");
}

GameTrace replay(const GameTrace& trace, const ComplexityMeasure& measure, std::size_t round_cap) {
  std::size_t next_move = 0;
  std::size_t next_choice = 0;
  StrategyI p1 = [&](const EFBPosition&) -> std::optional<Move> {
    if (next_move >= trace.steps.size()) return std::nullopt;
    next_choice = next_move;
    return trace.steps[next_move++].move;
  };
  StrategyII p2 = [&](const EFBPosition&, const Move&) -> std::size_t {
    return trace.steps[next_choice].choice.value_or(0);
  };
  return efb_referee(trace.initial, measure, p1, p2, {round_cap, trace.propositional});
}

std::optional<Move> Strategy::operator()(const EFBPosition& p) const {
  auto it = table.find(position_key(p));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace efg
