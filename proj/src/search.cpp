#include "efg/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "efg/error.hpp"

namespace efg {

namespace {

std::optional<unsigned> finite_value(const Ordinal& o, unsigned max_value) {
  auto n = o.as_natural();
  if (!n || *n > max_value) return std::nullopt;
  return static_cast<unsigned>(*n);
}

std::set<int> first_vars(std::size_t jmax) {
  std::set<int> out;
  for (std::size_t j = 0; j < jmax; ++j) out.insert(static_cast<int>(j));
  return out;
}

}  // namespace

std::vector<Formula> enumerate_formulas(const EnumerationBudget& b, const ComplexityMeasure& m) {
  std::vector<std::vector<Formula>> levels(b.max_value + 1);
  if (b.max_value >= 1) {
    levels[1] = literals_over(b.vocabulary, first_vars(b.jmax));
    std::sort(levels[1].begin(), levels[1].end());
  }
  std::size_t total = levels.size() > 1 ? levels[1].size() : 0;
  for (unsigned v = 2; v <= b.max_value; ++v) {
    auto& level = levels[v];
    for (unsigned va = 1; va < v; ++va) {
      for (unsigned vb = va; vb < v; ++vb) {
        auto r = finite_value(m.r(Ordinal::natural(va), Ordinal::natural(vb)), b.max_value);
        if (!r || *r != v) continue;
        const auto& la = levels[va];
        const auto& lb = levels[vb];
        for (std::size_t i = 0; i < la.size(); ++i) {
          for (std::size_t k = (va == vb ? i + 1 : 0); k < lb.size(); ++k) {
            const Formula& lo = la[i] < lb[k] ? la[i] : lb[k];
            const Formula& hi = la[i] < lb[k] ? lb[k] : la[i];
            level.push_back(Formula::conj(lo, hi));
            level.push_back(Formula::disj(lo, hi));
          }
        }
      }
      auto q = finite_value(m.q(Ordinal::natural(va)), b.max_value);
      if (q && *q == v) {
        for (std::size_t j = 0; j < b.jmax; ++j) {
          for (const auto& f : levels[va]) {
            level.push_back(Formula::exists(static_cast<int>(j), f));
            level.push_back(Formula::forall(static_cast<int>(j), f));
          }
        }
      }
      if (total + level.size() > b.entry_cap) {
        throw Error("budget-exceeded", "formula enumeration exceeded its entry cap");
      }
    }
    std::sort(level.begin(), level.end());
    total += level.size();
  }
  std::vector<Formula> out;
  out.reserve(total);
  for (auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

namespace {

using Ext = std::vector<std::uint64_t>;

struct ExtKeyHash {
  std::size_t operator()(const std::pair<Ext, unsigned>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ k.second;
    for (std::uint64_t w : k.first) {
      h ^= w;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Entry {
  enum class Op { Literal, And, Or, Exists, Forall } op = Op::Literal;
  Ext ext;
  unsigned fv = 0;
  unsigned value = 0;
  int left = -1;
  int right = -1;
  int var = -1;
  int literal = -1;
};

class ExtensionSearch {
 public:
  ExtensionSearch(const StructClass& a, const StructClass& b, const ComplexityMeasure& m,
                  const EnumerationBudget& budget)
      : m_(m), budget_(budget) {
    if (!a.empty() && !b.empty() && a.domain() != b.domain()) {
      throw Error("domain-mismatch", "classes bind different variables");
    }
    const std::set<int> d0 = a.empty() ? b.domain() : a.domain();
    std::set<int> v = d0;
    for (std::size_t j = 0; j < budget.jmax; ++j) v.insert(static_cast<int>(j));
    vars_.assign(v.begin(), v.end());
    if (vars_.size() > 16) throw Error("cap-exceeded", "too many variables for the search");
    for (int var : d0) d0_mask_ |= 1u << slot_of(var);
    vocabulary_ = budget.vocabulary;
    for (const StructClass* c : {&a, &b}) {
      for (const auto& mem : c->members()) {
        if (index_.emplace(mem.id(), structures_.size()).second) {
          structures_.push_back(mem.structure);
          if (structures_.size() == 1) vocabulary_ = mem.structure->vocabulary;
        }
      }
    }
    build_universe();
    a_mask_ = member_mask(a);
    b_mask_ = member_mask(b);
    literals_ = literals_over(vocabulary_, v);
  }

  std::optional<SearchResult> run() {
    std::vector<std::vector<int>> levels(budget_.max_value + 1);
    if (budget_.max_value == 0) return std::nullopt;
    for (std::size_t l = 0; l < literals_.size(); ++l) {
      Entry e;
      e.literal = static_cast<int>(l);
      e.value = 1;
      e.ext = literal_ext(literals_[l]);
      for (int var : literals_[l].vars()) e.fv |= 1u << slot_of(var);
      if (auto hit = add(std::move(e), levels[1])) return hit;
    }
    for (unsigned v = 2; v <= budget_.max_value; ++v) {
      for (unsigned va = 1; va < v; ++va) {
        for (unsigned vb = va; vb < v; ++vb) {
          auto r = finite_value(m_.r(Ordinal::natural(va), Ordinal::natural(vb)), budget_.max_value);
          if (!r || *r != v) continue;
          const std::vector<int> la = levels[va];
          const std::vector<int> lb = levels[vb];
          for (std::size_t i = 0; i < la.size(); ++i) {
            for (std::size_t k = (va == vb ? i + 1 : 0); k < lb.size(); ++k) {
              for (Entry::Op op : {Entry::Op::And, Entry::Op::Or}) {
                Entry e;
                e.op = op;
                e.value = v;
                e.left = la[i];
                e.right = lb[k];
                const Entry& x = entries_[static_cast<std::size_t>(la[i])];
                const Entry& y = entries_[static_cast<std::size_t>(lb[k])];
                e.fv = x.fv | y.fv;
                e.ext.resize(x.ext.size());
                for (std::size_t w = 0; w < e.ext.size(); ++w) {
                  e.ext[w] = op == Entry::Op::And ? (x.ext[w] & y.ext[w]) : (x.ext[w] | y.ext[w]);
                }
                if (auto hit = add(std::move(e), levels[v])) return hit;
              }
            }
          }
        }
        auto q = finite_value(m_.q(Ordinal::natural(va)), budget_.max_value);
        if (!q || *q != v) continue;
        const std::vector<int> la = levels[va];
        for (std::size_t j = 0; j < budget_.jmax; ++j) {
          const int slot = slot_of(static_cast<int>(j));
          for (int idx : la) {
            for (Entry::Op op : {Entry::Op::Exists, Entry::Op::Forall}) {
              Entry e;
              e.op = op;
              e.value = v;
              e.left = idx;
              e.var = static_cast<int>(j);
              const Entry& x = entries_[static_cast<std::size_t>(idx)];
              e.fv = x.fv & ~(1u << slot);
              e.ext = quantify(x.ext, slot, op == Entry::Op::Exists);
              if (auto hit = add(std::move(e), levels[v])) return hit;
            }
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  int slot_of(int var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) {
      throw Error("domain-mismatch", "variable x" + std::to_string(var) + " is outside the search");
    }
    return static_cast<int>(it - vars_.begin());
  }

  void build_universe() {
    for (std::size_t s = 0; s < structures_.size(); ++s) {
      const auto& u = structures_[s]->universe;
      if (u.empty() && !vars_.empty()) {
        throw Error("empty-universe", "structure '" + structures_[s]->id + "' has no elements");
      }
      offset_.push_back(points_.size());
      std::vector<std::size_t> digits(vars_.size(), 0);
      for (;;) {
        std::vector<Element> asg;
        for (std::size_t d : digits) asg.push_back(u[d]);
        points_.push_back({s, std::move(asg)});
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == u.size()) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    }
    words_ = (points_.size() + 63) / 64;
    // Neighbours along each slot: the points differing only at that slot.
    groups_.assign(vars_.size(), {});
    for (std::size_t slot = 0; slot < vars_.size(); ++slot) {
      std::map<std::pair<std::size_t, std::vector<Element>>, std::vector<std::size_t>> by_rest;
      for (std::size_t p = 0; p < points_.size(); ++p) {
        auto rest = points_[p].second;
        rest[slot] = -1;
        by_rest[{points_[p].first, std::move(rest)}].push_back(p);
      }
      for (auto& [k, g] : by_rest) groups_[slot].push_back(std::move(g));
    }
  }

  std::size_t point_of(std::size_t s, const std::vector<Element>& asg) const {
    const auto& u = structures_[s]->universe;
    std::size_t idx = 0;
    std::size_t scale = 1;
    for (std::size_t k = 0; k < asg.size(); ++k) {
      const auto pos = static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), asg[k]) - u.begin());
      idx += pos * scale;
      scale *= u.size();
    }
    return offset_[s] + idx;
  }

  Ext member_mask(const StructClass& c) const {
    Ext out(words_, 0);
    for (const auto& mem : c.members()) {
      const std::size_t s = index_.at(mem.id());
      const auto& u = structures_[s]->universe;
      std::vector<Element> asg(vars_.size(), u.empty() ? 0 : u.front());
      for (const auto& [var, e] : mem.assignment) asg[static_cast<std::size_t>(slot_of(var))] = e;
      const std::size_t p = point_of(s, asg);
      out[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    return out;
  }

  Ext literal_ext(const Formula& lit) const {
    Ext out(words_, 0);
    for (std::size_t p = 0; p < points_.size(); ++p) {
      VarAssignment va;
      for (std::size_t k = 0; k < vars_.size(); ++k) va[vars_[k]] = points_[p].second[k];
      if (evaluate(lit, *structures_[points_[p].first], va)) out[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    return out;
  }

  Ext quantify(const Ext& in, int slot, bool existential) const {
    Ext out(words_, 0);
    for (const auto& g : groups_[static_cast<std::size_t>(slot)]) {
      bool acc = !existential;
      for (std::size_t p : g) {
        const bool bit = (in[p / 64] >> (p % 64)) & 1u;
        if (existential ? bit : !bit) {
          acc = existential;
          break;
        }
      }
      if (acc) {
        for (std::size_t p : g) out[p / 64] |= std::uint64_t{1} << (p % 64);
      }
    }
    return out;
  }

  bool separating(const Entry& e) const {
    if ((e.fv & ~d0_mask_) != 0) return false;
    for (std::size_t w = 0; w < words_; ++w) {
      if ((a_mask_[w] & ~e.ext[w]) != 0 || (b_mask_[w] & e.ext[w]) != 0) return false;
    }
    return true;
  }

  std::optional<SearchResult> add(Entry e, std::vector<int>& level) {
    auto key = std::make_pair(e.ext, e.fv);
    if (seen_.count(key) > 0) return std::nullopt;
    if (entries_.size() >= budget_.entry_cap) {
      throw Error("budget-exceeded", "formula search exceeded its entry cap");
    }
    const bool hit = separating(e);
    const int idx = static_cast<int>(entries_.size());
    entries_.push_back(std::move(e));
    seen_.emplace(std::move(key), idx);
    level.push_back(idx);
    if (hit) return SearchResult{build(idx), entries_.back().value};
    return std::nullopt;
  }

  Formula build(int idx) const {
    const Entry& e = entries_[static_cast<std::size_t>(idx)];
    switch (e.op) {
      case Entry::Op::Literal: return literals_[static_cast<std::size_t>(e.literal)];
      case Entry::Op::And: return Formula::conj(build(e.left), build(e.right));
      case Entry::Op::Or: return Formula::disj(build(e.left), build(e.right));
      case Entry::Op::Exists: return Formula::exists(e.var, build(e.left));
      case Entry::Op::Forall: return Formula::forall(e.var, build(e.left));
    }
    throw Error("internal", "unknown entry");
  }

  const ComplexityMeasure& m_;
  EnumerationBudget budget_;
  Vocabulary vocabulary_;
  std::vector<int> vars_;
  unsigned d0_mask_ = 0;
  std::vector<std::shared_ptr<const Structure>> structures_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::vector<Element>>> points_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::vector<std::size_t>>> groups_;
  std::size_t words_ = 0;
  Ext a_mask_;
  Ext b_mask_;
  std::vector<Formula> literals_;
  std::vector<Entry> entries_;
  std::unordered_map<std::pair<Ext, unsigned>, int, ExtKeyHash> seen_;
};

}  // namespace

std::optional<SearchResult> min_separating_formula(const StructClass& a, const StructClass& b,
                                                   const ComplexityMeasure& m,
                                                   const EnumerationBudget& budget) {
  return ExtensionSearch(a, b, m, budget).run();
}

}  // namespace efg
