#include "efg/solver.hpp"

#include <algorithm>
#include <bitset>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "efg/error.hpp"

namespace efg {

namespace {

constexpr std::size_t kMaxLiterals = 256;
using LitSet = std::bitset<kMaxLiterals>;
using Ids = std::vector<int>;

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Member {
  int structure = 0;
  std::vector<int> asg;  // element per variable slot, -1 when unbound
  LitSet truth;
};

struct InternalMove {
  enum class Kind { Claim, Split, Supplement } kind = Kind::Claim;
  Side side = Side::Left;
  int literal = -1;
  Ids parts[2];
  unsigned ranks[2] = {0, 0};
  int slot = 0;
  std::map<int, Element> choice;  // member id -> element
  unsigned new_rank = 0;
};

unsigned natural_of(const Ordinal& o) {
  auto n = o.as_natural();
  if (!n || *n > 1000) throw Error("infinite-rank", "the solver handles finite ranks only");
  return static_cast<unsigned>(*n);
}

bool intersects(const Ids& a, const Ids& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

void normalize(Ids& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

struct EFBSolver::Impl {
  ComplexityMeasure measure;
  SolverOptions options;
  Vocabulary vocabulary;
  std::vector<std::shared_ptr<const Structure>> structures;
  std::map<std::string, int> structure_index;
  std::vector<int> vars;  // variable index per slot
  std::vector<int> jslots;
  std::vector<Formula> literals;
  std::vector<unsigned> literal_vars;  // slot mask per literal
  std::vector<Member> members;
  std::map<std::pair<int, std::vector<int>>, int> interned;
  Ids root_a;
  Ids root_b;
  unsigned root_domain = 0;
  std::unordered_map<std::vector<int>, bool, VecHash> memo;
  std::unordered_map<unsigned, LitSet> allowed_cache;
  std::map<unsigned, std::vector<std::pair<unsigned, unsigned>>> pair_cache;
  std::size_t nodes = 0;

  Impl(const StructClass& a, const StructClass& b, ComplexityMeasure m, SolverOptions o)
      : measure(std::move(m)), options(o) {
    if (!a.empty() && !b.empty() && a.domain() != b.domain()) {
      throw Error("domain-mismatch", "left and right classes bind different variables");
    }
    const std::set<int> d0 = a.empty() ? b.domain() : a.domain();
    std::set<int> v = d0;
    for (std::size_t j = 0; j < options.jmax; ++j) v.insert(static_cast<int>(j));
    vars.assign(v.begin(), v.end());
    if (vars.size() > 16) throw Error("cap-exceeded", "too many variables for the solver");
    for (std::size_t j = 0; j < options.jmax; ++j) jslots.push_back(slot_of(static_cast<int>(j)));
    for (int var : d0) root_domain |= 1u << slot_of(var);
    for (const StructClass* c : {&a, &b}) {
      for (const auto& mem : c->members()) {
        if (structure_index.emplace(mem.id(), static_cast<int>(structures.size())).second) {
          structures.push_back(mem.structure);
          if (structures.size() == 1) vocabulary = mem.structure->vocabulary;
        }
      }
    }
    literals = literals_over(vocabulary, v);
    if (literals.size() > kMaxLiterals) {
      throw Error("cap-exceeded", "too many literals for the solver");
    }
    for (const auto& lit : literals) {
      unsigned mask = 0;
      for (int var : lit.vars()) mask |= 1u << slot_of(var);
      literal_vars.push_back(mask);
    }
    root_a = to_ids(a);
    root_b = to_ids(b);
  }

  int slot_of(int var) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), var);
    if (it == vars.end() || *it != var) {
      throw Error("domain-mismatch", "variable x" + std::to_string(var) + " is outside the game");
    }
    return static_cast<int>(it - vars.begin());
  }

  int intern(int s, std::vector<int> asg) {
    auto key = std::make_pair(s, asg);
    if (auto it = interned.find(key); it != interned.end()) return it->second;
    Member mem;
    mem.structure = s;
    mem.asg = std::move(asg);
    unsigned bound = 0;
    VarAssignment va;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (mem.asg[k] >= 0) {
        bound |= 1u << k;
        va[vars[k]] = mem.asg[k];
      }
    }
    for (std::size_t l = 0; l < literals.size(); ++l) {
      if ((literal_vars[l] & ~bound) == 0 && evaluate(literals[l], *structures[s], va)) {
        mem.truth.set(l);
      }
    }
    const int id = static_cast<int>(members.size());
    members.push_back(std::move(mem));
    interned.emplace(std::move(key), id);
    return id;
  }

  Ids to_ids(const StructClass& c) {
    Ids out;
    for (const auto& mem : c.members()) {
      auto it = structure_index.find(mem.id());
      if (it == structure_index.end()) {
        throw Error("domain-mismatch", "structure '" + mem.id() + "' is not part of the game");
      }
      std::vector<int> asg(vars.size(), -1);
      for (const auto& [var, e] : mem.assignment) asg[static_cast<std::size_t>(slot_of(var))] = e;
      out.push_back(intern(it->second, std::move(asg)));
    }
    normalize(out);
    return out;
  }

  unsigned domain_of(const EFBPosition& p) const {
    const std::set<int>& d = p.left.empty() ? p.right.domain() : p.left.domain();
    unsigned mask = 0;
    for (int var : d) mask |= 1u << slot_of(var);
    return mask;
  }

  StructClass to_class(const Ids& ids, unsigned domain) const {
    std::vector<TaggedStructure> out;
    for (int id : ids) {
      const Member& mem = members[static_cast<std::size_t>(id)];
      VarAssignment va;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (mem.asg[k] >= 0) va[vars[k]] = mem.asg[k];
      }
      out.push_back({structures[static_cast<std::size_t>(mem.structure)], std::move(va)});
    }
    std::set<int> d;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (domain & (1u << k)) d.insert(vars[k]);
    }
    return StructClass(std::move(out), std::move(d));
  }

  int rebind(int id, int slot, Element e) {
    const Member& mem = members[static_cast<std::size_t>(id)];
    std::vector<int> asg = mem.asg;
    asg[static_cast<std::size_t>(slot)] = e;
    return intern(mem.structure, std::move(asg));
  }

  const std::vector<Element>& universe_of(int id) const {
    return structures[static_cast<std::size_t>(members[static_cast<std::size_t>(id)].structure)]
        ->universe;
  }

  Ids star(const Ids& c, int slot) {
    Ids out;
    for (int id : c) {
      const auto& u = universe_of(id);
      if (u.empty()) throw Error("empty-universe", "cannot supplement an empty structure");
      for (Element e : u) out.push_back(rebind(id, slot, e));
    }
    normalize(out);
    return out;
  }

  const LitSet& allowed(unsigned domain) {
    auto it = allowed_cache.find(domain);
    if (it != allowed_cache.end()) return it->second;
    LitSet s;
    for (std::size_t l = 0; l < literals.size(); ++l) {
      if ((literal_vars[l] & ~domain) == 0) s.set(l);
    }
    return allowed_cache.emplace(domain, s).first->second;
  }

  // Literals true on all of a and false on all of b.
  LitSet separating(const Ids& a, const Ids& b, unsigned domain) {
    LitSet s = allowed(domain);
    for (int id : a) s &= members[static_cast<std::size_t>(id)].truth;
    for (int id : b) s &= ~members[static_cast<std::size_t>(id)].truth;
    return s;
  }

  // Maximal unordered (k1 <= k2) nonzero rank pairs with r(k1, k2) <= n.
  const std::vector<std::pair<unsigned, unsigned>>& split_ranks(unsigned n) {
    auto it = pair_cache.find(n);
    if (it != pair_cache.end()) return it->second;
    const Ordinal bound = Ordinal::natural(n);
    std::vector<std::pair<unsigned, unsigned>> all;
    for (unsigned k1 = 1; k1 < n; ++k1) {
      for (unsigned k2 = n - 1; k2 >= 1; --k2) {
        if (measure.r(Ordinal::natural(k1), Ordinal::natural(k2)) <= bound) {
          all.emplace_back(k1, k2);
          break;
        }
      }
    }
    std::vector<std::pair<unsigned, unsigned>> out;
    for (const auto& [k1, k2] : all) {
      bool dominated = false;
      for (const auto& [l1, l2] : all) {
        if ((l1 >= k1 && l2 >= k2 && (l1 != k1 || l2 != k2)) ||
            (l1 >= k2 && l2 >= k1 && (l1 != k2 || l2 != k1))) {
          dominated = true;
        }
      }
      auto p = std::make_pair(std::min(k1, k2), std::max(k1, k2));
      if (!dominated && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return pair_cache.emplace(n, std::move(out)).first->second;
  }

  unsigned supplement_rank(unsigned n) const {
    const Ordinal bound = Ordinal::natural(n);
    for (unsigned d = n - 1; d >= 1; --d) {
      if (measure.q(Ordinal::natural(d)) <= bound) return d;
    }
    return 0;
  }

  bool win(const Ids& a, const Ids& b, unsigned domain, unsigned n) {
    if (a.size() > options.class_cap || b.size() > options.class_cap) {
      throw Error("budget-exceeded", "class size exceeds the solver cap of " +
                                         std::to_string(options.class_cap));
    }
    std::vector<int> key;
    key.reserve(a.size() + b.size() + 3);
    key.push_back(static_cast<int>(domain));
    key.push_back(static_cast<int>(n));
    key.push_back(static_cast<int>(a.size()));
    key.insert(key.end(), a.begin(), a.end());
    key.insert(key.end(), b.begin(), b.end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const bool result = compute(a, b, domain, n, nullptr);
    if (++nodes > options.node_budget) {
      throw Error("budget-exceeded", "solver exceeded its node budget");
    }
    memo.emplace(std::move(key), result);
    return result;
  }

  bool win_side(Side side, const Ids& part, const Ids& a, const Ids& b, unsigned domain,
                unsigned k) {
    return side == Side::Left ? win(part, b, domain, k) : win(a, part, domain, k);
  }

  bool compute(const Ids& a, const Ids& b, unsigned domain, unsigned n, InternalMove* out) {
    const LitSet sep = separating(a, b, domain);
    if (sep.any()) {
      if (out) {
        out->kind = InternalMove::Kind::Claim;
        out->literal = static_cast<int>(sep._Find_first());
      }
      return true;
    }
    if (n <= 1) return false;
    if (intersects(a, b)) return false;
    if (a.size() > 1) {
      for (int id : a) {
        if (!win({id}, b, domain, n)) return false;
      }
    }
    if (b.size() > 1) {
      for (int id : b) {
        if (!win(a, {id}, domain, n)) return false;
      }
    }
    const auto& pairs = split_ranks(n);
    for (Side side : {Side::Left, Side::Right}) {
      for (const auto& [k1, k2] : pairs) {
        if (k1 == 1 && literal_split(side, a, b, domain, k2, out)) return true;
      }
    }
    if (supplement(a, b, domain, n, out)) return true;
    for (Side side : {Side::Left, Side::Right}) {
      for (const auto& [k1, k2] : pairs) {
        if (k1 >= 2 && general_split(side, a, b, domain, k1, k2, out)) return true;
      }
    }
    return false;
  }

  void record_split(InternalMove* out, Side side, Ids p1, unsigned k1, Ids p2, unsigned k2) {
    if (!out) return;
    out->kind = InternalMove::Kind::Split;
    out->side = side;
    out->parts[0] = std::move(p1);
    out->parts[1] = std::move(p2);
    out->ranks[0] = k1;
    out->ranks[1] = k2;
  }

  // Splits whose rank-1 part is the largest set a single literal settles.
  bool literal_split(Side side, const Ids& a, const Ids& b, unsigned domain, unsigned k2,
                     InternalMove* out) {
    const Ids& split = side == Side::Left ? a : b;
    if (split.size() < 2) return false;
    LitSet usable = allowed(domain);
    if (side == Side::Left) {
      for (int id : b) usable &= ~members[static_cast<std::size_t>(id)].truth;
    } else {
      for (int id : a) usable &= members[static_cast<std::size_t>(id)].truth;
    }
    std::set<Ids> tried;
    for (std::size_t l = usable._Find_first(); l < kMaxLiterals; l = usable._Find_next(l)) {
      Ids settled;
      Ids rest;
      for (int id : split) {
        const bool t = members[static_cast<std::size_t>(id)].truth.test(l);
        ((side == Side::Left) == t ? settled : rest).push_back(id);
      }
      if (settled.empty() || rest.empty() || !tried.insert(rest).second) continue;
      if (win_side(side, rest, a, b, domain, k2)) {
        record_split(out, side, std::move(settled), 1, std::move(rest), k2);
        return true;
      }
    }
    return false;
  }

  bool general_split(Side side, const Ids& a, const Ids& b, unsigned domain, unsigned k1,
                     unsigned k2, InternalMove* out) {
    const Ids& split = side == Side::Left ? a : b;
    if (split.size() < 2) return false;
    std::vector<int> free_members;
    Ids forced;
    for (int id : split) {
      if (win_side(side, {id}, a, b, domain, k1)) {
        free_members.push_back(id);
      } else if (k1 == k2 || !win_side(side, {id}, a, b, domain, k2)) {
        return false;
      } else {
        forced.push_back(id);
      }
    }
    const std::size_t f = free_members.size();
    if (f > 22) throw Error("budget-exceeded", "too many split candidates");
    const std::uint64_t full = (std::uint64_t{1} << f) - 1;
    std::vector<std::uint64_t> dead;
    for (std::size_t count = f; count >= 1; --count) {
      if (count == f && forced.empty()) continue;
      std::uint64_t mask = (std::uint64_t{1} << count) - 1;
      while (mask <= full) {
        const bool canonical = k1 != k2 || (mask & 1u);
        bool skip = !canonical;
        for (std::uint64_t d : dead) {
          if (skip || (mask & ~d) == 0) {
            skip = true;
            break;
          }
        }
        if (!skip) {
          Ids first;
          Ids second = forced;
          for (std::size_t i = 0; i < f; ++i) {
            ((mask >> i) & 1u ? first : second).push_back(free_members[i]);
          }
          normalize(second);
          if (win_side(side, first, a, b, domain, k1)) {
            if (win_side(side, second, a, b, domain, k2)) {
              record_split(out, side, std::move(first), k1, std::move(second), k2);
              return true;
            }
            dead.push_back(mask);
          }
        }
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        if (r == 0 || r > full + 1) break;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
    return false;
  }

  bool supplement(const Ids& a, const Ids& b, unsigned domain, unsigned n, InternalMove* out) {
    const unsigned delta = supplement_rank(n);
    if (delta == 0) return false;
    for (int slot : jslots) {
      const unsigned next_domain = domain | (1u << slot);
      for (Side side : {Side::Left, Side::Right}) {
        const Ids& chosen = side == Side::Left ? a : b;
        const Ids starred = star(side == Side::Left ? b : a, slot);
        std::vector<std::vector<std::pair<Element, int>>> options_per_member;
        bool viable = true;
        std::size_t combos = 1;
        for (int id : chosen) {
          std::vector<std::pair<Element, int>> opts;
          for (Element e : universe_of(id)) {
            const int moved = rebind(id, slot, e);
            const bool ok = side == Side::Left ? win({moved}, starred, next_domain, delta)
                                               : win(starred, {moved}, next_domain, delta);
            if (ok) opts.emplace_back(e, moved);
          }
          if (opts.empty()) {
            viable = false;
            break;
          }
          combos *= opts.size();
          if (combos > 2'000'000) throw Error("budget-exceeded", "too many choice functions");
          options_per_member.push_back(std::move(opts));
        }
        if (!viable) continue;
        std::set<Ids> seen;
        std::vector<std::size_t> pick(chosen.size(), 0);
        for (;;) {
          Ids image;
          for (std::size_t i = 0; i < chosen.size(); ++i) {
            image.push_back(options_per_member[i][pick[i]].second);
          }
          normalize(image);
          if (seen.insert(image).second) {
            const bool ok = side == Side::Left ? win(image, starred, next_domain, delta)
                                               : win(starred, image, next_domain, delta);
            if (ok) {
              if (out) {
                out->kind = InternalMove::Kind::Supplement;
                out->side = side;
                out->slot = slot;
                out->new_rank = delta;
                out->choice.clear();
                for (std::size_t i = 0; i < chosen.size(); ++i) {
                  out->choice[chosen[i]] = options_per_member[i][pick[i]].first;
                }
              }
              return true;
            }
          }
          std::size_t pos = 0;
          while (pos < pick.size() && ++pick[pos] == options_per_member[pos].size()) pick[pos++] = 0;
          if (pos == pick.size()) break;
        }
      }
    }
    return false;
  }

  Move to_move(const InternalMove& mv, const EFBPosition& p, const Ids& a, const Ids& b,
               unsigned domain) {
    switch (mv.kind) {
      case InternalMove::Kind::Claim:
        return ClaimAtomicWin{literals[static_cast<std::size_t>(mv.literal)]};
      case InternalMove::Kind::Split: {
        FiniteSplit s;
        s.side = mv.side;
        s.parts = {to_class(mv.parts[0], domain), to_class(mv.parts[1], domain)};
        s.ranks = {Ordinal::natural(mv.ranks[0]), Ordinal::natural(mv.ranks[1])};
        return s;
      }
      case InternalMove::Kind::Supplement: {
        Supplement s;
        s.side = mv.side;
        s.j = vars[static_cast<std::size_t>(mv.slot)];
        s.new_rank = Ordinal::natural(mv.new_rank);
        const StructClass& cls = mv.side == Side::Left ? p.left : p.right;
        (void)a;
        (void)b;
        for (const auto& mem : cls.members()) {
          const int id = to_ids(StructClass({mem}))[0];
          s.choice.push_back(mv.choice.at(id));
        }
        return s;
      }
    }
    throw Error("internal", "unknown move kind");
  }
};

EFBSolver::EFBSolver(const StructClass& a, const StructClass& b, ComplexityMeasure measure,
                     SolverOptions options)
    : impl_(std::make_unique<Impl>(a, b, std::move(measure), options)) {}

EFBSolver::~EFBSolver() = default;

bool EFBSolver::i_wins(unsigned n) {
  return impl_->win(impl_->root_a, impl_->root_b, impl_->root_domain, n);
}

bool EFBSolver::i_wins(const EFBPosition& p) {
  const unsigned n = natural_of(p.rank);
  if (n == 0) return false;
  return impl_->win(impl_->to_ids(p.left), impl_->to_ids(p.right), impl_->domain_of(p), n);
}

std::optional<Move> EFBSolver::winning_move(const EFBPosition& p) {
  const unsigned n = natural_of(p.rank);
  if (n == 0) return std::nullopt;
  const Ids a = impl_->to_ids(p.left);
  const Ids b = impl_->to_ids(p.right);
  const unsigned d = impl_->domain_of(p);
  if (!impl_->win(a, b, d, n)) return std::nullopt;
  InternalMove mv;
  if (!impl_->compute(a, b, d, n, &mv)) return std::nullopt;
  return impl_->to_move(mv, p, a, b, d);
}

std::size_t EFBSolver::losing_choice(const EFBPosition& p, const Move& m) {
  const std::size_t count = choice_count(m);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      if (!i_wins(apply_move(p, m, i))) return i;
    } catch (const Error& e) {
      if (e.code() != "infinite-rank") throw;
    }
  }
  return 0;
}

EFBPosition EFBSolver::start(unsigned n) const {
  EFBPosition p;
  p.left = impl_->to_class(impl_->root_a, impl_->root_domain);
  p.right = impl_->to_class(impl_->root_b, impl_->root_domain);
  p.rank = Ordinal::natural(n);
  return p;
}

Strategy EFBSolver::strategy(unsigned n) {
  Strategy out;
  std::deque<EFBPosition> queue{start(n)};
  while (!queue.empty()) {
    EFBPosition p = std::move(queue.front());
    queue.pop_front();
    const std::string key = position_key(p);
    if (out.table.count(key) > 0) continue;
    auto mv = winning_move(p);
    if (!mv) continue;
    out.table.emplace(key, *mv);
    for (std::size_t i = 0; i < choice_count(*mv); ++i) {
      EFBPosition child = apply_move(p, *mv, i);
      if (child.rank > Ordinal::natural(1)) queue.push_back(std::move(child));
    }
  }
  return out;
}

std::size_t EFBSolver::nodes() const { return impl_->nodes; }

std::optional<SolveResult> min_separating_value(const StructClass& a, const StructClass& b,
                                                const ComplexityMeasure& measure, unsigned budget,
                                                std::size_t jmax, unsigned budget_cap,
                                                std::size_t jmax_cap) {
  if (!passes_corner_battery(measure)) {
    throw Error("not-nice", "measure '" + measure.name + "' fails the niceness corner battery");
  }
  if (budget > budget_cap) {
    throw Error("cap-exceeded", "budget " + std::to_string(budget) + " exceeds the cap " +
                                    std::to_string(budget_cap));
  }
  if (jmax > jmax_cap) {
    throw Error("cap-exceeded",
                "jmax " + std::to_string(jmax) + " exceeds the cap " + std::to_string(jmax_cap));
  }
  SolverOptions options;
  options.jmax = jmax;
  EFBSolver solver(a, b, measure, options);
  for (unsigned n = 1; n <= budget; ++n) {
    if (solver.i_wins(n)) return SolveResult{n, solver.strategy(n)};
  }
  return std::nullopt;
}

}  // namespace efg
