#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "efg/formula.hpp"
#include "efg/structure.hpp"

namespace efg {

/// A structure together with a variable assignment into it.
struct TaggedStructure {
  std::shared_ptr<const Structure> structure;
  VarAssignment assignment;

  const std::string& id() const { return structure->id; }
};

std::strong_ordering operator<=>(const TaggedStructure& a, const TaggedStructure& b);
bool operator==(const TaggedStructure& a, const TaggedStructure& b);

/// Finite class of tagged structures over one vocabulary with one assignment
/// domain. Members are kept sorted by (structure id, assignment) and
/// deduplicated, so equal classes have equal member lists.
class StructClass {
 public:
  StructClass() = default;
  /// Throws Error("domain-mismatch") when members disagree on vocabulary or
  /// assignment domain. `domain` is only consulted for an empty class.
  explicit StructClass(std::vector<TaggedStructure> members, std::set<int> domain = {});

  const std::vector<TaggedStructure>& members() const { return members_; }
  const std::set<int>& domain() const { return domain_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const TaggedStructure& m) const;

  /// Members at the given positions of members().
  StructClass subset(const std::vector<std::size_t>& indices) const;

  /// Canonical text encoding, e.g. `[01{};10{}]` or `[K3{0:1,1:2}]`.
  std::string canonical_key() const;

  friend bool operator==(const StructClass& a, const StructClass& b) {
    return a.members_ == b.members_ && a.domain_ == b.domain_;
  }

 private:
  std::vector<TaggedStructure> members_;
  std::set<int> domain_;
};

/// Class of one member per structure, each with the empty assignment.
StructClass class_of(const std::vector<std::shared_ptr<const Structure>>& structures);

/// True iff pairs is an injective function from A to B preserving and
/// reflecting every relation and equality on its domain.
bool partial_iso_check(const Structure& a, const Structure& b,
                       const std::vector<std::pair<Element, Element>>& pairs);

/// A(F/j): choice[i] is the element picked for members()[i]. Throws
/// Error("bad-choice-function") for a wrong length or a foreign element.
StructClass extend_with_choice(const StructClass& c, int j, const std::vector<Element>& choice);

/// A(*/j). Throws Error("empty-universe") if a member has an empty universe.
StructClass extend_with_star(const StructClass& c, int j);

/// Every literal over the given variables: relation applications over all
/// variable tuples and (in)equalities x_i = x_j with i <= j, both polarities.
std::vector<Formula> literals_over(const Vocabulary& vocabulary, const std::set<int>& vars);

/// Some literal over the shared domain true on every member of `a` and false
/// on every member of `b`, if one exists.
std::optional<Formula> atomic_separator(const StructClass& a, const StructClass& b);

/// True iff every member of `a` satisfies f and no member of `b` does.
bool separates(const Formula& f, const StructClass& a, const StructClass& b);

}  // namespace efg
