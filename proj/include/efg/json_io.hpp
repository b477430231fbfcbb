#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "efg/efb.hpp"
#include "efg/formula.hpp"
#include "efg/ordinal.hpp"
#include "efg/strings.hpp"
#include "efg/struct_class.hpp"

namespace efg {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into Error("malformed-json").
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const Ordinal& a);
Ordinal ordinal_from_json(const Json& j);

/// Tagged nodes: {"kind": "atom", "relation": "P", "vars": [0]},
/// {"kind": "and", "left": .., "right": ..}, {"kind": "bigand", "members": [..]},
/// {"kind": "exists", "var": 0, "body": ..}, ... Symbolic families carry
/// {"family": {"tag", "param", "dual", "members": [{"formula", "many"|"count"}]}}.
Json to_json(const Formula& f);
Formula formula_from_json(const Json& j);

Json to_json(const Vocabulary& v);
Vocabulary vocabulary_from_json(const Json& j);

/// {"universe": [ids], "relations": {name: [[ids]]}}; 0-ary relations hold
/// when their list contains the empty tuple.
Json to_json(const Structure& s);
Structure structure_from_json(const std::string& id, const Vocabulary& v, const Json& j);

/// Structures by id, shared between the classes of one file.
using StructureTable = std::map<std::string, std::shared_ptr<const Structure>>;

/// A class is either [[structureRef, {varIndex: elemId}], ...] against the
/// table, or {"strings": ["01", ...]} for propositional bit strings (whose
/// structures are added to the table).
StructClass class_from_json(const Json& j, StructureTable& table);
Json to_json(const StructClass& c);

/// A document with optional "vocabulary" and "structures" ({id: structure})
/// next to the class. Also accepts a bare {"strings": [...]} object.
StructClass load_class_document(const Json& doc, StructureTable& table);
StructureTable structures_from_json(const Json& doc);

struct CorpusInstance {
  std::string name;
  StructClass a;
  StructClass b;
  std::size_t jmax = 0;
  /// Expected least values by measure name; an empty optional means none
  /// within the recorded budget.
  std::map<std::string, std::optional<unsigned>> expected;
};

/// A list of entries {"name", "vocabulary"?, "structures"?, "classA",
/// "classB", "jmax"?, "expected"?: {measure: value|null}}.
std::vector<CorpusInstance> corpus_from_json(const Json& j);

Json to_json(const Move& m);
Move move_from_json(const Json& j, StructureTable& table);
Json to_json(const EFBPosition& p);
EFBPosition position_from_json(const Json& j, StructureTable& table);

/// Self-contained: carries every structure the trace mentions.
Json to_json(const GameTrace& t);
GameTrace trace_from_json(const Json& j);

/// Decision table: [{"position": key, "move": ...}] in key order.
Json to_json(const Strategy& s);

DenseProperty dense_property_from_json(const Json& j);

}  // namespace efg
