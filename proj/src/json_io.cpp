#include "efg/json_io.hpp"

#include <fstream>
#include <sstream>

#include "efg/error.hpp"
#include "efg/structure.hpp"

namespace efg {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error("malformed-json", message); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("bad value for ") + what);
  }
}

const char* kind_name(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Atom: return "atom";
    case Formula::Kind::Eq: return "eq";
    case Formula::Kind::NegAtom: return "negatom";
    case Formula::Kind::NegEq: return "neq";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::BigAnd: return "bigand";
    case Formula::Kind::BigOr: return "bigor";
    case Formula::Kind::Exists: return "exists";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::Not: return "not";
  }
  return "?";
}

Json multiplicity_json(const Multiplicity& m) {
  if (m.many) return "many";
  return m.count;
}

Multiplicity multiplicity_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "many") return Multiplicity::omega_many();
  return Multiplicity::finite(get<std::uint64_t>(j, "multiplicity"));
}

Json assignment_json(const VarAssignment& a) {
  Json out = Json::object();
  for (const auto& [var, elem] : a) out[std::to_string(var)] = elem;
  return out;
}

VarAssignment assignment_from(const Json& j) {
  if (!j.is_object()) bad("an assignment is an object {varIndex: elemId}");
  VarAssignment out;
  for (const auto& [key, value] : j.items()) {
    try {
      out[std::stoi(key)] = get<Element>(value, "element id");
    } catch (const std::invalid_argument&) {
      bad("variable indices are integers, got '" + key + "'");
    }
  }
  return out;
}

std::shared_ptr<const Structure> bitstring_ref(const std::string& bits, StructureTable& table) {
  auto it = table.find(bits);
  if (it != table.end()) return it->second;
  auto s = std::make_shared<const Structure>(bitstring_structure(bits));
  table.emplace(bits, s);
  return s;
}

Side side_from(const Json& j) {
  const auto s = get<std::string>(j, "side");
  if (s == side_name(Side::Left)) return Side::Left;
  if (s == side_name(Side::Right)) return Side::Right;
  bad("unknown side '" + s + "'");
}

void collect_structures(const StructClass& c, StructureTable& out) {
  for (const auto& m : c.members()) out.emplace(m.id(), m.structure);
}

void collect_structures(const Move& m, StructureTable& out) {
  if (const auto* s = std::get_if<FiniteSplit>(&m)) {
    for (const auto& p : s->parts) collect_structures(p, out);
  } else if (const auto* s = std::get_if<InfiniteSplit>(&m)) {
    for (const auto& p : s->parts) collect_structures(p, out);
  }
}

Json class_with_domain(const StructClass& c) {
  return Json{{"members", to_json(c)}, {"domain", Json(std::vector<int>(c.domain().begin(), c.domain().end()))}};
}

StructClass class_with_domain_from(const Json& j, StructureTable& table) {
  StructClass c = class_from_json(field(j, "members"), table);
  if (!c.empty()) return c;
  const auto d = get<std::vector<int>>(field(j, "domain"), "domain");
  return StructClass({}, std::set<int>(d.begin(), d.end()));
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed-json", e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

Json to_json(const Ordinal& a) { return a.to_string(); }

Ordinal ordinal_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Ordinal::natural(j.get<std::uint64_t>());
  return parse_ordinal(get<std::string>(j, "ordinal"));
}

// ---------------------------------------------------------------------------
// Formulas

Json to_json(const Formula& f) {
  Json out{{"kind", kind_name(f.kind())}};
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::NegAtom:
      out["relation"] = f.relation();
      out["vars"] = f.vars();
      break;
    case Formula::Kind::Eq:
    case Formula::Kind::NegEq:
      out["vars"] = f.vars();
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out["left"] = to_json(f.left());
      out["right"] = to_json(f.right());
      break;
    case Formula::Kind::BigAnd:
    case Formula::Kind::BigOr:
      if (f.is_symbolic()) {
        const auto& fam = f.symbolic();
        Json members = Json::array();
        for (const auto& m : fam.members) {
          members.push_back({{"formula", to_json(m.representative)}, {"multiplicity", multiplicity_json(m.multiplicity)}});
        }
        out["family"] = {{"tag", fam.tag}, {"param", fam.param}, {"members", members}};
        if (fam.dual_tag) out["family"]["dual"] = *fam.dual_tag;
      } else {
        Json members = Json::array();
        for (const auto& c : f.children()) members.push_back(to_json(c));
        out["members"] = members;
      }
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out["var"] = f.var();
      out["body"] = to_json(f.body());
      break;
    case Formula::Kind::Not:
      out["body"] = to_json(f.body());
      break;
  }
  return out;
}

Formula formula_from_json(const Json& j) {
  const auto kind = get<std::string>(field(j, "kind"), "kind");
  auto vars = [&] { return get<std::vector<int>>(field(j, "vars"), "vars"); };
  auto pair = [&] {
    const auto v = vars();
    if (v.size() != 2) bad("an (in)equality takes two variables");
    return v;
  };
  if (kind == "atom") return Formula::atom(get<std::string>(field(j, "relation"), "relation"), vars());
  if (kind == "negatom") return Formula::neg_atom(get<std::string>(field(j, "relation"), "relation"), vars());
  if (kind == "eq") {
    const auto v = pair();
    return Formula::eq(v[0], v[1]);
  }
  if (kind == "neq") {
    const auto v = pair();
    return Formula::neg_eq(v[0], v[1]);
  }
  if (kind == "and") return Formula::conj(formula_from_json(field(j, "left")), formula_from_json(field(j, "right")));
  if (kind == "or") return Formula::disj(formula_from_json(field(j, "left")), formula_from_json(field(j, "right")));
  if (kind == "bigand" || kind == "bigor") {
    const bool conj = kind == "bigand";
    if (j.contains("family")) {
      const Json& fj = j.at("family");
      SymbolicFamily fam;
      fam.tag = get<std::string>(field(fj, "tag"), "tag");
      fam.param = fj.value("param", "");
      if (fj.contains("dual")) fam.dual_tag = get<std::string>(fj.at("dual"), "dual");
      for (const auto& m : field(fj, "members")) {
        fam.members.push_back({formula_from_json(field(m, "formula")), multiplicity_from(field(m, "multiplicity"))});
      }
      if (fam.members.empty()) bad("a symbolic family needs members");
      return conj ? Formula::big_and(std::move(fam)) : Formula::big_or(std::move(fam));
    }
    std::vector<Formula> members;
    for (const auto& m : field(j, "members")) members.push_back(formula_from_json(m));
    return conj ? Formula::big_and(std::move(members)) : Formula::big_or(std::move(members));
  }
  if (kind == "exists") return Formula::exists(get<int>(field(j, "var"), "var"), formula_from_json(field(j, "body")));
  if (kind == "forall") return Formula::forall(get<int>(field(j, "var"), "var"), formula_from_json(field(j, "body")));
  if (kind == "not") return Formula::negation(formula_from_json(field(j, "body")));
  bad("unknown formula kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Structures and classes

Json to_json(const Vocabulary& v) {
  Json out = Json::object();
  for (const auto& [name, arity] : v) out[name] = arity;
  return out;
}

Vocabulary vocabulary_from_json(const Json& j) {
  if (!j.is_object()) bad("a vocabulary is an object {name: arity}");
  Vocabulary out;
  for (const auto& [name, arity] : j.items()) out[name] = get<int>(arity, "arity");
  return out;
}

Json to_json(const Structure& s) {
  Json relations = Json::object();
  for (const auto& [name, tuples] : s.relations) {
    Json list = Json::array();
    for (const auto& t : tuples) list.push_back(t);
    relations[name] = list;
  }
  return {{"universe", s.universe}, {"relations", relations}};
}

Structure structure_from_json(const std::string& id, const Vocabulary& v, const Json& j) {
  const auto universe = get<std::vector<Element>>(field(j, "universe"), "universe");
  std::map<std::string, std::set<std::vector<Element>>> relations;
  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j.at("relations").items()) {
      auto& rel = relations[name];
      for (const auto& t : tuples) rel.insert(get<std::vector<Element>>(t, "tuple"));
    }
  }
  return make_structure(id, v, universe, std::move(relations));
}

StructureTable structures_from_json(const Json& doc) {
  StructureTable table;
  if (!doc.is_object() || !doc.contains("structures")) return table;
  const Vocabulary v = doc.contains("vocabulary") ? vocabulary_from_json(doc.at("vocabulary")) : Vocabulary{};
  for (const auto& [id, sj] : doc.at("structures").items()) {
    table.emplace(id, std::make_shared<const Structure>(structure_from_json(id, v, sj)));
  }
  return table;
}

StructClass class_from_json(const Json& j, StructureTable& table) {
  if (j.is_object() && j.contains("strings")) {
    std::vector<TaggedStructure> members;
    for (const auto& s : j.at("strings")) members.push_back({bitstring_ref(get<std::string>(s, "bit string"), table), {}});
    if (members.empty()) bad("an empty string class has no length");
    return StructClass(std::move(members));
  }
  if (!j.is_array()) bad("a class is a list of [structureRef, assignment] pairs or {\"strings\": [...]}");
  std::vector<TaggedStructure> members;
  for (const auto& m : j) {
    if (!m.is_array() || m.empty() || m.size() > 2) bad("class members look like [structureRef, {varIndex: elemId}]");
    const auto ref = get<std::string>(m[0], "structure reference");
    auto it = table.find(ref);
    if (it == table.end()) bad("unknown structure '" + ref + "'");
    members.push_back({it->second, m.size() == 2 ? assignment_from(m[1]) : VarAssignment{}});
  }
  return StructClass(std::move(members));
}

Json to_json(const StructClass& c) {
  Json out = Json::array();
  for (const auto& m : c.members()) out.push_back(Json::array({m.id(), assignment_json(m.assignment)}));
  return out;
}

StructClass load_class_document(const Json& doc, StructureTable& table) {
  if (doc.is_object() && doc.contains("strings")) return class_from_json(doc, table);
  for (auto& [id, s] : structures_from_json(doc)) table.emplace(id, s);
  return class_from_json(field(doc, "class"), table);
}

std::vector<CorpusInstance> corpus_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("instances") ? j.at("instances") : j;
  if (!list.is_array()) bad("a corpus is a list of instances");
  std::vector<CorpusInstance> out;
  for (const auto& entry : list) {
    StructureTable table = structures_from_json(entry);
    CorpusInstance inst;
    inst.name = entry.value("name", "instance-" + std::to_string(out.size()));
    inst.a = class_from_json(field(entry, "classA"), table);
    inst.b = class_from_json(field(entry, "classB"), table);
    inst.jmax = entry.value("jmax", std::size_t{0});
    if (entry.contains("expected")) {
      for (const auto& [measure, value] : entry.at("expected").items()) {
        inst.expected[measure] = value.is_null() ? std::nullopt : std::optional<unsigned>(get<unsigned>(value, "expected"));
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moves, positions, traces

Json to_json(const Move& m) {
  Json out{{"kind", move_kind(m)}};
  if (const auto* s = std::get_if<FiniteSplit>(&m)) {
    out["side"] = side_name(s->side);
    out["parts"] = Json::array({to_json(s->parts[0]), to_json(s->parts[1])});
    out["ranks"] = Json::array({to_json(s->ranks[0]), to_json(s->ranks[1])});
  } else if (const auto* s = std::get_if<InfiniteSplit>(&m)) {
    out["side"] = side_name(s->side);
    out["parts"] = Json::array();
    for (const auto& p : s->parts) out["parts"].push_back(to_json(p));
    out["ranks"] = Json::array();
    for (const auto& r : s->ranks) out["ranks"].push_back(to_json(r));
    out["tail"] = Json::array();
    for (const auto& e : s->tail) {
      out["tail"].push_back({{"rank", to_json(e.value)}, {"multiplicity", multiplicity_json(e.multiplicity)}});
    }
  } else if (const auto* s = std::get_if<Supplement>(&m)) {
    out["side"] = side_name(s->side);
    out["var"] = s->j;
    out["choice"] = s->choice;
    out["rank"] = to_json(s->new_rank);
  } else {
    out["literal"] = to_json(std::get<ClaimAtomicWin>(m).literal);
  }
  return out;
}

Move move_from_json(const Json& j, StructureTable& table) {
  const auto kind = get<std::string>(field(j, "kind"), "move kind");
  if (kind == "finite-split") {
    FiniteSplit s;
    s.side = side_from(field(j, "side"));
    const Json& parts = field(j, "parts");
    const Json& ranks = field(j, "ranks");
    if (parts.size() != 2 || ranks.size() != 2) bad("a finite split has two parts and two ranks");
    for (std::size_t i = 0; i < 2; ++i) {
      s.parts[i] = class_from_json(parts[i], table);
      s.ranks[i] = ordinal_from_json(ranks[i]);
    }
    return s;
  }
  if (kind == "infinite-split") {
    InfiniteSplit s;
    s.side = side_from(field(j, "side"));
    for (const auto& p : field(j, "parts")) s.parts.push_back(class_from_json(p, table));
    for (const auto& r : field(j, "ranks")) s.ranks.push_back(ordinal_from_json(r));
    for (const auto& e : field(j, "tail")) {
      s.tail.push_back({ordinal_from_json(field(e, "rank")), multiplicity_from(field(e, "multiplicity"))});
    }
    return s;
  }
  if (kind == "supplement") {
    Supplement s;
    s.side = side_from(field(j, "side"));
    s.j = get<int>(field(j, "var"), "var");
    s.choice = get<std::vector<Element>>(field(j, "choice"), "choice");
    s.new_rank = ordinal_from_json(field(j, "rank"));
    return s;
  }
  if (kind == "claim") {
    return ClaimAtomicWin{formula_from_json(field(j, "literal"))};
  }
  bad("unknown move kind '" + kind + "'");
}

Json to_json(const EFBPosition& p) {
  return {{"left", class_with_domain(p.left)}, {"right", class_with_domain(p.right)}, {"rank", to_json(p.rank)}};
}

EFBPosition position_from_json(const Json& j, StructureTable& table) {
  return {class_with_domain_from(field(j, "left"), table), class_with_domain_from(field(j, "right"), table),
          ordinal_from_json(field(j, "rank"))};
}

Json to_json(const GameTrace& t) {
  StructureTable used;
  collect_structures(t.initial.left, used);
  collect_structures(t.initial.right, used);
  for (const auto& s : t.steps) collect_structures(s.move, used);
  Vocabulary vocabulary;
  Json structures = Json::object();
  for (const auto& [id, s] : used) {
    vocabulary = s->vocabulary;
    structures[id] = to_json(*s);
  }
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json step{{"move", to_json(s.move)}};
    step["choice"] = s.choice ? Json(*s.choice) : Json(nullptr);
    steps.push_back(step);
  }
  Json outcome{{"winner", t.outcome.winner ? Json(player_name(*t.outcome.winner)) : Json(nullptr)},
               {"reason", t.outcome.reason},
               {"terminal", to_json(t.outcome.terminal)}};
  return {{"measure", t.measure},       {"propositional", t.propositional}, {"vocabulary", to_json(vocabulary)},
          {"structures", structures},   {"initial", to_json(t.initial)},  {"steps", steps},
          {"outcome", outcome}};
}

GameTrace trace_from_json(const Json& j) {
  StructureTable table = structures_from_json(j);
  GameTrace t;
  t.measure = get<std::string>(field(j, "measure"), "measure");
  t.propositional = j.value("propositional", false);
  t.initial = position_from_json(field(j, "initial"), table);
  for (const auto& s : field(j, "steps")) {
    TraceStep step{move_from_json(field(s, "move"), table), std::nullopt};
    if (s.contains("choice") && !s.at("choice").is_null()) step.choice = get<std::size_t>(s.at("choice"), "choice");
    t.steps.push_back(std::move(step));
  }
  const Json& outcome = field(j, "outcome");
  const Json& winner = field(outcome, "winner");
  if (!winner.is_null()) {
    const auto w = get<std::string>(winner, "winner");
    t.outcome.winner = w == player_name(Player::I) ? Player::I : Player::II;
  }
  t.outcome.reason = outcome.value("reason", "");
  t.outcome.terminal = position_from_json(field(outcome, "terminal"), table);
  return t;
}

Json to_json(const Strategy& s) {
  Json out = Json::array();
  for (const auto& [key, move] : s.table) out.push_back({{"position", key}, {"move", to_json(move)}});
  return out;
}

DenseProperty dense_property_from_json(const Json& j) {
  DenseProperty p;
  p.base = parse_base_property(get<std::string>(field(j, "base"), "base"));
  if (j.contains("filter")) {
    const Json& f = j.at("filter");
    if (f.is_string()) {
      p.filter = parse_segment(f.get<std::string>());
    } else {
      for (const auto& [pos, bit] : f.items()) p.filter[std::stoul(pos)] = get<int>(bit, "bit") != 0;
    }
  }
  if (j.contains("clopens")) {
    for (const auto& c : j.at("clopens")) {
      const auto support = get<std::vector<std::size_t>>(field(c, "support"), "support");
      const auto table = get<std::string>(field(c, "table"), "table");
      std::vector<bool> bits;
      for (char ch : table) bits.push_back(ch == '1');
      p.clopens.push_back(Clopen::from_table(support, bits));
    }
  }
  return p;
}

}  // namespace efg
