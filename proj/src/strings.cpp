#include "efg/strings.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "efg/error.hpp"
#include "efg/measure.hpp"
#include "efg/structure.hpp"

namespace efg {

namespace {

constexpr std::size_t kMaxFreePositions = 22;

// Calls fn on every extension of base to the given positions; stops early
// when fn returns true and reports whether it did.
bool any_pattern(const std::vector<std::size_t>& positions, const Segment& base,
                 const std::function<bool(const Segment&)>& fn) {
  std::vector<std::size_t> free;
  for (std::size_t p : positions) {
    if (!base.count(p)) free.push_back(p);
  }
  if (free.size() > kMaxFreePositions) {
    throw Error("cap-exceeded", "too many free positions to enumerate");
  }
  Segment g = base;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
    for (std::size_t k = 0; k < free.size(); ++k) g[free[k]] = (bits >> k) & 1u;
    if (fn(g)) return true;
  }
  return false;
}

std::vector<std::size_t> merge_support(const std::vector<std::size_t>& a,
                                       const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<bool> bits_of(std::string_view s) {
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("parse-error", "expected bits in '" + std::string(s) + "'");
    out.push_back(c == '1');
  }
  return out;
}

std::string text_of(const std::vector<bool>& bits) {
  std::string out;
  for (bool b : bits) out += b ? '1' : '0';
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// UPString

UPString::UPString(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw Error("invalid-string", "the period must be nonempty");
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = period_[i] == period_[i - d];
    if (periodic) {
      period_.resize(d);
      break;
    }
  }
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

UPString UPString::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw Error("parse-error", "expected <prefix>(<period>) but got '" + std::string(text) + "'");
  }
  return UPString(bits_of(text.substr(0, open)),
                  bits_of(text.substr(open + 1, text.size() - open - 2)));
}

bool UPString::bit(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

std::string UPString::to_string() const { return text_of(prefix_) + "(" + text_of(period_) + ")"; }

// ---------------------------------------------------------------------------
// Segments

std::string segment_text(const Segment& g) {
  std::string out = "{";
  bool first = true;
  for (const auto& [pos, b] : g) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(pos) + ":" + (b ? "1" : "0");
  }
  return out + "}";
}

Segment parse_segment(std::string_view text) {
  Segment out;
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '{' || c == '}' || c == ' '; }),
          s.end());
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    const std::string item = s.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon + 2 != item.size() ||
        (item[colon + 1] != '0' && item[colon + 1] != '1')) {
      throw Error("parse-error", "segment entries look like pos:bit, got '" + item + "'");
    }
    out[std::stoul(item.substr(0, colon))] = item[colon + 1] == '1';
    start = end + 1;
  }
  return out;
}

bool compatible(const Segment& a, const Segment& b) {
  for (const auto& [pos, bit] : a) {
    auto it = b.find(pos);
    if (it != b.end() && it->second != bit) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Clopen sets

Clopen::Clopen(std::vector<std::size_t> support, std::vector<bool> table)
    : support_(std::move(support)), table_(std::move(table)) {}

Clopen Clopen::all() { return Clopen({}, {true}); }
Clopen Clopen::none() { return Clopen({}, {false}); }

Clopen Clopen::from_table(std::vector<std::size_t> support, std::vector<bool> table) {
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end()) {
    throw Error("invalid-clopen", "clopen support must be strictly increasing");
  }
  if (support.size() > 16 || table.size() != (std::size_t{1} << support.size())) {
    throw Error("invalid-clopen", "clopen table must have 2^|support| entries");
  }
  return Clopen(std::move(support), std::move(table));
}

Clopen Clopen::cylinder(const Segment& g) {
  std::vector<std::size_t> support;
  for (const auto& [pos, b] : g) support.push_back(pos);
  std::vector<bool> table(std::size_t{1} << support.size(), false);
  std::size_t index = 0;
  std::size_t k = 0;
  for (const auto& [pos, b] : g) index |= static_cast<std::size_t>(b) << k++;
  table[index] = true;
  return from_table(std::move(support), std::move(table));
}

bool Clopen::allows(const Segment& pattern) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    auto it = pattern.find(support_[k]);
    if (it == pattern.end()) throw Error("internal", "pattern misses a clopen support position");
    index |= static_cast<std::size_t>(it->second) << k;
  }
  return table_[index];
}

bool Clopen::contains(const UPString& h) const {
  Segment pattern;
  for (std::size_t p : support_) pattern[p] = h.bit(p);
  return allows(pattern);
}

bool Clopen::is_empty() const { return std::none_of(table_.begin(), table_.end(), [](bool b) { return b; }); }

Clopen Clopen::complement() const {
  std::vector<bool> table(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) table[i] = !table_[i];
  return Clopen(support_, std::move(table));
}

namespace {

Clopen combine(const Clopen& a, const Clopen& b, bool conjunction) {
  std::vector<std::size_t> support = merge_support(a.support(), b.support());
  if (support.size() > 16) throw Error("cap-exceeded", "combined clopen support is too large");
  std::vector<bool> table(std::size_t{1} << support.size());
  for (std::size_t index = 0; index < table.size(); ++index) {
    Segment pattern;
    for (std::size_t k = 0; k < support.size(); ++k) pattern[support[k]] = (index >> k) & 1u;
    const bool x = a.allows(pattern);
    const bool y = b.allows(pattern);
    table[index] = conjunction ? (x && y) : (x || y);
  }
  return Clopen::from_table(std::move(support), std::move(table));
}

}  // namespace

Clopen Clopen::intersect(const Clopen& other) const { return combine(*this, other, true); }
Clopen Clopen::unite(const Clopen& other) const { return combine(*this, other, false); }

std::string Clopen::to_string() const {
  std::string out = "clopen[";
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(support_[k]);
  }
  out += "]:";
  for (bool b : table_) out += b ? '1' : '0';
  return out;
}

// ---------------------------------------------------------------------------
// Dense properties

BaseProperty parse_base_property(std::string_view name) {
  if (name == "fin-ones") return BaseProperty::FinitelyManyOnes;
  if (name == "odd-ones") return BaseProperty::OddManyOnes;
  if (name == "ult-periodic") return BaseProperty::UltimatelyPeriodic;
  throw Error("unknown-property", "unknown base property '" + std::string(name) + "'");
}

std::string base_property_name(BaseProperty p) {
  switch (p) {
    case BaseProperty::FinitelyManyOnes: return "fin-ones";
    case BaseProperty::OddManyOnes: return "odd-ones";
    case BaseProperty::UltimatelyPeriodic: return "ult-periodic";
  }
  return "?";
}

std::vector<std::size_t> DenseProperty::support() const {
  std::vector<std::size_t> out;
  for (const auto& [pos, b] : filter) out.push_back(pos);
  for (const auto& c : clopens) out = merge_support(out, c.support());
  return out;
}

DenseProperty DenseProperty::restricted(const Clopen& c) const {
  DenseProperty out = *this;
  out.clopens.push_back(c);
  return out;
}

DenseProperty DenseProperty::with_filter(const Segment& g) const {
  DenseProperty out = *this;
  for (const auto& [pos, b] : g) {
    auto [it, fresh] = out.filter.emplace(pos, b);
    if (!fresh && it->second != b) out.clopens.push_back(Clopen::none());
  }
  return out;
}

std::string DenseProperty::describe() const {
  std::string out = base_property_name(base);
  if (!filter.empty()) out += " & " + segment_text(filter);
  for (const auto& c : clopens) out += " & " + c.to_string();
  return out;
}

bool allows(const DenseProperty& p, const Segment& pattern) {
  if (!compatible(p.filter, pattern)) return false;
  return std::all_of(p.clopens.begin(), p.clopens.end(),
                     [&](const Clopen& c) { return c.allows(pattern); });
}

namespace {

std::optional<Segment> extending_pattern(const DenseProperty& p, const Segment& g) {
  if (!compatible(g, p.filter)) return std::nullopt;
  std::optional<Segment> found;
  any_pattern(p.support(), g, [&](const Segment& pattern) {
    if (!allows(p, pattern)) return false;
    found = pattern;
    return true;
  });
  return found;
}

}  // namespace

bool ext(const DenseProperty& p, const Segment& g) { return extending_pattern(p, g).has_value(); }

std::optional<UPString> witness(const DenseProperty& p, const Segment& g) {
  auto pattern = extending_pattern(p, g);
  if (!pattern) return std::nullopt;
  std::vector<bool> prefix;
  if (!pattern->empty()) prefix.assign(pattern->rbegin()->first + 1, false);
  std::size_t ones = 0;
  for (const auto& [pos, b] : *pattern) {
    prefix[pos] = b;
    ones += b ? 1 : 0;
  }
  if (p.base == BaseProperty::OddManyOnes && ones % 2 == 0) prefix.push_back(true);
  return UPString(std::move(prefix), {false});
}

bool contains(const DenseProperty& p, const UPString& h) {
  const bool zero_tail = h.period() == std::vector<bool>{false};
  switch (p.base) {
    case BaseProperty::FinitelyManyOnes:
      if (!zero_tail) return false;
      break;
    case BaseProperty::OddManyOnes:
      if (!zero_tail || std::count(h.prefix().begin(), h.prefix().end(), true) % 2 == 0) return false;
      break;
    case BaseProperty::UltimatelyPeriodic:
      break;
  }
  Segment pattern;
  for (std::size_t pos : p.support()) pattern[pos] = h.bit(pos);
  return allows(p, pattern);
}

bool is_empty(const DenseProperty& p) { return !ext(p, {}); }

std::set<std::string> truncate(const DenseProperty& p, std::size_t length, std::size_t length_cap) {
  if (length > length_cap) {
    throw Error("cap-exceeded", "length " + std::to_string(length) + " exceeds the cap " +
                                    std::to_string(length_cap));
  }
  std::set<std::string> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
    Segment g;
    std::string s;
    for (std::size_t i = 0; i < length; ++i) {
      const bool b = (bits >> (length - 1 - i)) & 1u;
      g[i] = b;
      s += b ? '1' : '0';
    }
    if (ext(p, g)) out.insert(s);
  }
  return out;
}

bool is_d_dense(const std::set<std::string>& s, std::size_t d) {
  if (s.empty()) return false;
  const std::size_t length = s.begin()->size();
  if (d > length) throw Error("bad-argument", "d exceeds the string length");
  // Every pattern on exactly min(d, L) positions implies the smaller ones.
  std::vector<std::size_t> pick(d);
  for (std::size_t k = 0; k < d; ++k) pick[k] = k;
  for (;;) {
    std::set<std::uint64_t> seen;
    for (const auto& str : s) {
      std::uint64_t code = 0;
      for (std::size_t k = 0; k < d; ++k) code |= static_cast<std::uint64_t>(str[pick[k]] == '1') << k;
      seen.insert(code);
    }
    if (seen.size() != (std::uint64_t{1} << d)) return false;
    std::size_t k = d;
    while (k > 0 && pick[k - 1] == length - d + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t i = k; i < d; ++i) pick[i] = pick[i - 1] + 1;
  }
  return true;
}

std::vector<DensePair> dense_pair_corpus(std::size_t max_length, std::size_t max_d, std::size_t per_cell,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DensePair> out;
  for (std::size_t length = 2; length <= max_length; ++length) {
    std::set<std::string> even;
    std::set<std::string> odd;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << length); ++x) {
      std::string s;
      for (std::size_t i = 0; i < length; ++i) s += ((x >> (length - 1 - i)) & 1u) ? '1' : '0';
      (std::count(s.begin(), s.end(), '1') % 2 == 0 ? even : odd).insert(s);
    }
    for (std::size_t d = 1; d <= std::min(max_d, length - 1); ++d) {
      out.push_back({length, d, even, odd});
      for (std::size_t k = 1; k < per_cell; ++k) {
        DensePair p{length, d, even, odd};
        // Drop strings in random order whenever both sides stay d-dense.
        std::vector<std::pair<bool, std::string>> order;
        for (const auto& s : even) order.emplace_back(true, s);
        for (const auto& s : odd) order.emplace_back(false, s);
        std::shuffle(order.begin(), order.end(), rng);
        std::bernoulli_distribution keep_going(0.85);
        for (const auto& [left, s] : order) {
          auto& side = left ? p.left : p.right;
          side.erase(s);
          if (!is_d_dense(side, d)) side.insert(s);
          if (!keep_going(rng)) break;
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::optional<Segment> check_condition_e9(const DenseProperty& left, const DenseProperty& right,
                                          std::size_t support_bound) {
  const std::vector<std::size_t> support = merge_support(left.support(), right.support());
  std::map<std::size_t, int> agree;  // position -> bit while unanimous, -1 once split
  bool any_left = false;
  bool any_right = false;
  std::vector<std::pair<Segment, bool>> patterns;
  any_pattern(support, {}, [&](const Segment& pattern) {
    const bool l = allows(left, pattern);
    const bool r = allows(right, pattern);
    patterns.emplace_back(pattern, l && r);
    for (bool allowed : {l, r}) {
      if (!allowed) continue;
      for (const auto& [pos, b] : pattern) {
        auto [it, fresh] = agree.emplace(pos, b ? 1 : 0);
        if (!fresh && it->second != (b ? 1 : 0)) it->second = -1;
      }
    }
    any_left = any_left || l;
    any_right = any_right || r;
    return false;
  });
  if (!any_left || !any_right) return std::nullopt;
  Segment f_max;
  for (const auto& [pos, v] : agree) {
    if (v >= 0) f_max[pos] = v == 1;
  }
  auto holds = [&](const Segment& f) {
    for (const auto& [pattern, ok] : patterns) {
      if (!ok && compatible(pattern, f)) return false;
    }
    return true;
  };
  if (!holds(f_max)) return std::nullopt;
  if (f_max.size() <= support_bound) return f_max;
  // Only smaller segments are allowed; try them by increasing size.
  const std::vector<std::pair<std::size_t, bool>> entries(f_max.begin(), f_max.end());
  for (std::size_t size = 0; size <= support_bound; ++size) {
    std::vector<bool> mask(entries.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Segment f;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (mask[k]) f.insert(entries[k]);
      }
      if (holds(f)) return f;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// theta_t and Phi_P

Formula theta_formula(const UPString& t) {
  SymbolicFamily fam;
  fam.tag = "theta";
  fam.param = t.to_string();
  fam.dual_tag = "theta-dual";
  // One omega-indexed member shape: the literal p_i^t.
  const Formula lit = t.bit(0) ? Formula::atom(prop_symbol(0), {}) : Formula::neg_atom(prop_symbol(0), {});
  fam.members.push_back({lit, Multiplicity::omega_many()});
  return Formula::big_and(std::move(fam));
}

Formula phi_formula(const std::string& property_name) {
  SymbolicFamily fam;
  fam.tag = "phi";
  fam.param = property_name;
  fam.dual_tag = "phi-dual";
  fam.members.push_back({theta_formula(UPString({}, {false})), Multiplicity::omega_many()});
  return Formula::big_or(std::move(fam));
}

Formula phi_formula_finite(const std::vector<std::string>& strings) {
  std::vector<Formula> disjuncts;
  for (const auto& s : strings) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < s.size(); ++i) {
      lits.push_back(s[i] == '1' ? Formula::atom(prop_symbol(i), {})
                                 : Formula::neg_atom(prop_symbol(i), {}));
    }
    disjuncts.push_back(Formula::big_and(std::move(lits)));
  }
  return Formula::big_or(std::move(disjuncts));
}

Ordinal theta_size() { return size(theta_formula(UPString({true}, {false}))); }

Ordinal phi_size() { return size(phi_formula("countable")); }

bool eval_theta(const UPString& t, const UPString& h) { return t == h; }

}  // namespace efg
