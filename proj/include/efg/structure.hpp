#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace efg {

using Element = int;

/// Relational vocabulary: symbol name -> arity. Arity 0 gives propositional
/// symbols. Equality is built in and never listed.
using Vocabulary = std::map<std::string, int>;

/// Finite partial map from variable index to element id.
using VarAssignment = std::map<int, Element>;

/// A finite relational structure. `id` is a stable name used for canonical
/// ordering and serialization; two structures with the same id are expected
/// to be the same structure.
struct Structure {
  std::string id;
  Vocabulary vocabulary;
  std::vector<Element> universe;  // sorted, unique
  std::map<std::string, std::set<std::vector<Element>>> relations;

  bool contains(Element e) const;
  bool holds(const std::string& relation, const std::vector<Element>& tuple) const;
};

/// Builds a structure and checks arities and that tuples draw from the
/// universe. Throws Error("invalid-structure").
Structure make_structure(std::string id, Vocabulary vocabulary, std::vector<Element> universe,
                         std::map<std::string, std::set<std::vector<Element>>> relations);

/// Vocabulary {p0, ..., p_{length-1}} of 0-ary symbols.
Vocabulary propositional_vocabulary(std::size_t length);

/// The binary string `bits` (characters '0'/'1') as a propositional structure
/// over p0..p_{L-1} with the one-element universe {0}.
Structure bitstring_structure(const std::string& bits);

/// Name of the i-th propositional symbol ("p<i>").
std::string prop_symbol(std::size_t i);

}  // namespace efg
