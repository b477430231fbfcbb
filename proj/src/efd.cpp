#include "efg/efd.hpp"

#include <map>
#include <tuple>

#include "efg/error.hpp"
#include "efg/struct_class.hpp"

namespace efg {

const char* player_name(Player p) { return p == Player::I ? "I" : "II"; }

EFDPosition efd_referee_step(const Structure& a, const Structure& b, const EFDPosition& p,
                             const EFDMove& move, Element reply) {
  if (p.rank.is_zero()) throw Error("terminal-position", "the game has ended at rank 0");
  if (!(move.beta < p.rank)) {
    throw Error("ordinal-not-decreased",
                "ordinal " + move.beta.to_string() + " is not below " + p.rank.to_string());
  }
  const Structure& picked = move.in_a ? a : b;
  const Structure& other = move.in_a ? b : a;
  if (!picked.contains(move.element) || !other.contains(reply)) {
    throw Error("not-in-universe", "chosen element is outside its universe");
  }
  EFDPosition next = p;
  next.a_tuple.push_back(move.in_a ? move.element : reply);
  next.b_tuple.push_back(move.in_a ? reply : move.element);
  next.rank = move.beta;
  return next;
}

namespace {

class EfdSolver {
 public:
  EfdSolver(const Structure& a, const Structure& b, const EFDOptions& options)
      : a_(a), b_(b), options_(options) {}

  // True iff II wins from (as, bs, k).
  bool ii_wins(std::vector<Element>& as, std::vector<Element>& bs, unsigned k) {
    if (k == 0) return is_partial_iso(as, bs);
    auto key = std::make_tuple(as, bs, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > options_.node_budget) {
      throw Error("budget-exceeded", "EFD search exceeded its node budget");
    }
    bool i_can_move = !a_.universe.empty() || !b_.universe.empty();
    bool result = true;
    if (i_can_move) {
      const unsigned lo = options_.maximal_ordinal ? k - 1 : 0;
      for (unsigned beta = lo; beta < k && result; ++beta) {
        for (int side = 0; side < 2 && result; ++side) {
          const Structure& picked = side == 0 ? a_ : b_;
          const Structure& other = side == 0 ? b_ : a_;
          for (Element c : picked.universe) {
            bool answered = false;
            for (Element d : other.universe) {
              as.push_back(side == 0 ? c : d);
              bs.push_back(side == 0 ? d : c);
              answered = ii_wins(as, bs, beta);
              as.pop_back();
              bs.pop_back();
              if (answered) break;
            }
            if (!answered) {
              result = false;
              break;
            }
          }
        }
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  bool is_partial_iso(const std::vector<Element>& as, const std::vector<Element>& bs) const {
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t i = 0; i < as.size(); ++i) pairs.emplace_back(as[i], bs[i]);
    return partial_iso_check(a_, b_, pairs);
  }

  const Structure& a_;
  const Structure& b_;
  EFDOptions options_;
  std::size_t nodes_ = 0;
  std::map<std::tuple<std::vector<Element>, std::vector<Element>, unsigned>, bool> memo_;
};

}  // namespace

Player efd_winner(const Structure& a, const Structure& b, unsigned n, const EFDOptions& options) {
  EfdSolver solver(a, b, options);
  std::vector<Element> as;
  std::vector<Element> bs;
  return solver.ii_wins(as, bs, n) ? Player::II : Player::I;
}

}  // namespace efg
