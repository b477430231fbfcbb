#include "efg/structure.hpp"

#include <algorithm>

#include "efg/error.hpp"

namespace efg {

bool Structure::contains(Element e) const {
  return std::binary_search(universe.begin(), universe.end(), e);
}

bool Structure::holds(const std::string& relation, const std::vector<Element>& tuple) const {
  auto it = relations.find(relation);
  return it != relations.end() && it->second.count(tuple) > 0;
}

Structure make_structure(std::string id, Vocabulary vocabulary, std::vector<Element> universe,
                         std::map<std::string, std::set<std::vector<Element>>> relations) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  Structure s{std::move(id), std::move(vocabulary), std::move(universe), {}};
  for (auto& [name, tuples] : relations) {
    auto voc = s.vocabulary.find(name);
    if (voc == s.vocabulary.end()) {
      throw Error("invalid-structure", "structure '" + s.id + "' interprets unknown symbol " + name);
    }
    for (const auto& tuple : tuples) {
      if (static_cast<int>(tuple.size()) != voc->second) {
        throw Error("invalid-structure", "arity mismatch for " + name + " in '" + s.id + "'");
      }
      for (Element e : tuple) {
        if (!s.contains(e)) {
          throw Error("invalid-structure",
                      "tuple of " + name + " leaves the universe of '" + s.id + "'");
        }
      }
    }
    s.relations[name] = std::move(tuples);
  }
  return s;
}

std::string prop_symbol(std::size_t i) { return "p" + std::to_string(i); }

Vocabulary propositional_vocabulary(std::size_t length) {
  Vocabulary v;
  for (std::size_t i = 0; i < length; ++i) v[prop_symbol(i)] = 0;
  return v;
}

Structure bitstring_structure(const std::string& bits) {
  std::map<std::string, std::set<std::vector<Element>>> relations;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw Error("invalid-structure", "bit strings may only contain 0 and 1: " + bits);
    }
    if (bits[i] == '1') relations[prop_symbol(i)].insert(std::vector<Element>{});
  }
  return make_structure(bits, propositional_vocabulary(bits.size()), {0}, std::move(relations));
}

}  // namespace efg
