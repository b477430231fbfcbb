#include "efg/struct_class.hpp"

#include <algorithm>
#include <map>

#include "efg/error.hpp"

namespace efg {

std::strong_ordering operator<=>(const TaggedStructure& a, const TaggedStructure& b) {
  if (auto c = a.id() <=> b.id(); c != 0) return c;
  return a.assignment <=> b.assignment;
}

bool operator==(const TaggedStructure& a, const TaggedStructure& b) { return (a <=> b) == 0; }

namespace {

std::set<int> domain_of(const VarAssignment& a) {
  std::set<int> out;
  for (const auto& [v, e] : a) out.insert(v);
  return out;
}

}  // namespace

StructClass::StructClass(std::vector<TaggedStructure> members, std::set<int> domain)
    : members_(std::move(members)), domain_(std::move(domain)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) return;
  domain_ = domain_of(members_.front().assignment);
  const Vocabulary& voc = members_.front().structure->vocabulary;
  for (const auto& m : members_) {
    if (domain_of(m.assignment) != domain_) {
      throw Error("domain-mismatch", "class members bind different variables");
    }
    if (m.structure->vocabulary != voc) {
      throw Error("domain-mismatch", "class members use different vocabularies");
    }
    for (const auto& [v, e] : m.assignment) {
      if (!m.structure->contains(e)) {
        throw Error("domain-mismatch", "assignment leaves the universe of '" + m.id() + "'");
      }
    }
  }
}

bool StructClass::contains(const TaggedStructure& m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

StructClass StructClass::subset(const std::vector<std::size_t>& indices) const {
  std::vector<TaggedStructure> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(members_.at(i));
  return StructClass(std::move(out), domain_);
}

std::string StructClass::canonical_key() const {
  std::string out = "[";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ";";
    out += members_[i].id() + "{";
    bool first = true;
    for (const auto& [v, e] : members_[i].assignment) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(v) + ":" + std::to_string(e);
    }
    out += "}";
  }
  return out + "]";
}

StructClass class_of(const std::vector<std::shared_ptr<const Structure>>& structures) {
  std::vector<TaggedStructure> members;
  for (const auto& s : structures) members.push_back({s, {}});
  return StructClass(std::move(members));
}

bool partial_iso_check(const Structure& a, const Structure& b,
                       const std::vector<std::pair<Element, Element>>& pairs) {
  std::map<Element, Element> forward;
  std::map<Element, Element> backward;
  for (const auto& [x, y] : pairs) {
    if (!a.contains(x) || !b.contains(y)) return false;
    auto [fit, fnew] = forward.emplace(x, y);
    if (!fnew && fit->second != y) return false;
    auto [bit, bnew] = backward.emplace(y, x);
    if (!bnew && bit->second != x) return false;
  }
  std::vector<Element> dom;
  for (const auto& [x, y] : forward) dom.push_back(x);
  for (const auto& [name, arity] : a.vocabulary) {
    if (arity == 0) {
      if (a.holds(name, {}) != b.holds(name, {})) return false;
      continue;
    }
    if (dom.empty()) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    for (;;) {
      std::vector<Element> ta;
      std::vector<Element> tb;
      for (std::size_t k : idx) {
        ta.push_back(dom[k]);
        tb.push_back(forward[dom[k]]);
      }
      if (a.holds(name, ta) != b.holds(name, tb)) return false;
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == dom.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return true;
}

StructClass extend_with_choice(const StructClass& c, int j, const std::vector<Element>& choice) {
  if (choice.size() != c.size()) {
    throw Error("bad-choice-function", "choice function covers " + std::to_string(choice.size()) +
                                           " of " + std::to_string(c.size()) + " members");
  }
  std::vector<TaggedStructure> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& m = c.members()[i];
    if (!m.structure->contains(choice[i])) {
      throw Error("bad-choice-function", "element " + std::to_string(choice[i]) +
                                             " is not in the universe of '" + m.id() + "'");
    }
    VarAssignment a = m.assignment;
    a[j] = choice[i];
    out.push_back({m.structure, std::move(a)});
  }
  std::set<int> domain = c.domain();
  domain.insert(j);
  return StructClass(std::move(out), std::move(domain));
}

StructClass extend_with_star(const StructClass& c, int j) {
  std::vector<TaggedStructure> out;
  for (const auto& m : c.members()) {
    if (m.structure->universe.empty()) {
      throw Error("empty-universe", "structure '" + m.id() + "' has an empty universe");
    }
    for (Element e : m.structure->universe) {
      VarAssignment a = m.assignment;
      a[j] = e;
      out.push_back({m.structure, std::move(a)});
    }
  }
  std::set<int> domain = c.domain();
  domain.insert(j);
  return StructClass(std::move(out), std::move(domain));
}

std::vector<Formula> literals_over(const Vocabulary& vocabulary, const std::set<int>& vars) {
  std::vector<Formula> out;
  const std::vector<int> vs(vars.begin(), vars.end());
  for (const auto& [name, arity] : vocabulary) {
    if (arity > 0 && vs.empty()) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    for (;;) {
      std::vector<int> tuple;
      for (std::size_t k : idx) tuple.push_back(vs[k]);
      out.push_back(Formula::atom(name, tuple));
      out.push_back(Formula::neg_atom(name, tuple));
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == vs.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t k = i; k < vs.size(); ++k) {
      out.push_back(Formula::eq(vs[i], vs[k]));
      out.push_back(Formula::neg_eq(vs[i], vs[k]));
    }
  }
  return out;
}

std::optional<Formula> atomic_separator(const StructClass& a, const StructClass& b) {
  if (!a.empty() && !b.empty() && a.domain() != b.domain()) {
    throw Error("domain-mismatch", "classes bind different variables");
  }
  const StructClass& probe = a.empty() ? b : a;
  if (probe.empty()) return std::nullopt;
  const Vocabulary& voc = probe.members().front().structure->vocabulary;
  for (const auto& lit : literals_over(voc, probe.domain())) {
    if (separates(lit, a, b)) return lit;
  }
  return std::nullopt;
}

bool separates(const Formula& f, const StructClass& a, const StructClass& b) {
  for (const auto& m : a.members()) {
    if (!evaluate(f, *m.structure, m.assignment)) return false;
  }
  for (const auto& m : b.members()) {
    if (evaluate(f, *m.structure, m.assignment)) return false;
  }
  return true;
}

}  // namespace efg
