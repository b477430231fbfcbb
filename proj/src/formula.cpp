#include "efg/formula.hpp"

#include <algorithm>
#include <cctype>

#include "efg/error.hpp"
#include "efg/measure.hpp"

namespace efg {

namespace {

Formula::Kind dual_kind(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Atom: return K::NegAtom;
    case K::NegAtom: return K::Atom;
    case K::Eq: return K::NegEq;
    case K::NegEq: return K::Eq;
    case K::And: return K::Or;
    case K::Or: return K::And;
    case K::BigAnd: return K::BigOr;
    case K::BigOr: return K::BigAnd;
    case K::Exists: return K::Forall;
    case K::Forall: return K::Exists;
    case K::Not: return K::Not;
  }
  return k;
}

std::shared_ptr<FormulaNode> node(Formula::Kind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

Formula Formula::atom(std::string relation, std::vector<int> vars) {
  auto n = node(Kind::Atom);
  n->relation = std::move(relation);
  n->vars = std::move(vars);
  return Formula(std::move(n));
}

Formula Formula::neg_atom(std::string relation, std::vector<int> vars) {
  auto n = node(Kind::NegAtom);
  n->relation = std::move(relation);
  n->vars = std::move(vars);
  return Formula(std::move(n));
}

Formula Formula::eq(int i, int j) {
  auto n = node(Kind::Eq);
  n->vars = {i, j};
  return Formula(std::move(n));
}

Formula Formula::neg_eq(int i, int j) {
  auto n = node(Kind::NegEq);
  n->vars = {i, j};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
  auto n = node(Kind::And);
  n->children = {std::move(left), std::move(right)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula left, Formula right) {
  auto n = node(Kind::Or);
  n->children = {std::move(left), std::move(right)};
  return Formula(std::move(n));
}

Formula Formula::big_and(std::vector<Formula> members) {
  auto n = node(Kind::BigAnd);
  n->children = std::move(members);
  return Formula(std::move(n));
}

Formula Formula::big_or(std::vector<Formula> members) {
  auto n = node(Kind::BigOr);
  n->children = std::move(members);
  return Formula(std::move(n));
}

Formula Formula::big_and(SymbolicFamily family) {
  if (family.members.empty()) throw Error("empty-family", "symbolic family without members");
  auto n = node(Kind::BigAnd);
  n->symbolic = std::move(family);
  return Formula(std::move(n));
}

Formula Formula::big_or(SymbolicFamily family) {
  if (family.members.empty()) throw Error("empty-family", "symbolic family without members");
  auto n = node(Kind::BigOr);
  n->symbolic = std::move(family);
  return Formula(std::move(n));
}

Formula Formula::exists(int var, Formula body) {
  auto n = node(Kind::Exists);
  n->var = var;
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::forall(int var, Formula body) {
  auto n = node(Kind::Forall);
  n->var = var;
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::negation(Formula body) {
  auto n = node(Kind::Not);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  const Kind k = kind();
  return k == Kind::Atom || k == Kind::NegAtom || k == Kind::Eq || k == Kind::NegEq;
}

bool Formula::is_symbolic() const { return node_->symbolic.has_value(); }

const std::string& Formula::relation() const { return node_->relation; }
const std::vector<int>& Formula::vars() const { return node_->vars; }
int Formula::var() const { return node_->var; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

const SymbolicFamily& Formula::symbolic() const {
  if (!node_->symbolic) throw Error("not-symbolic", "formula has no symbolic family");
  return *node_->symbolic;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (auto c = static_cast<int>(x.kind) <=> static_cast<int>(y.kind); c != 0) return c;
  if (auto c = x.relation <=> y.relation; c != 0) return c;
  if (auto c = x.vars <=> y.vars; c != 0) return c;
  if (auto c = x.var <=> y.var; c != 0) return c;
  if (auto c = x.symbolic.has_value() <=> y.symbolic.has_value(); c != 0) return c;
  if (x.symbolic) {
    if (auto c = x.symbolic->tag <=> y.symbolic->tag; c != 0) return c;
    if (auto c = x.symbolic->param <=> y.symbolic->param; c != 0) return c;
  }
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                y.children.begin(), y.children.end());
}

bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------
// Normal forms

bool is_nnf(const Formula& f) {
  if (f.kind() == Formula::Kind::Not) return false;
  if (f.is_symbolic()) {
    const auto& members = f.symbolic().members;
    return std::all_of(members.begin(), members.end(),
                       [](const SymbolicMember& m) { return is_nnf(m.representative); });
  }
  const auto& ch = f.children();
  return std::all_of(ch.begin(), ch.end(), [](const Formula& c) { return is_nnf(c); });
}

namespace {

Formula push_negation(const Formula& f, bool negate) {
  using K = Formula::Kind;
  const K k = negate ? dual_kind(f.kind()) : f.kind();
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom:
      return k == K::Atom ? Formula::atom(f.relation(), f.vars())
                          : Formula::neg_atom(f.relation(), f.vars());
    case K::Eq:
    case K::NegEq:
      return k == K::Eq ? Formula::eq(f.vars()[0], f.vars()[1])
                        : Formula::neg_eq(f.vars()[0], f.vars()[1]);
    case K::And:
    case K::Or: {
      Formula l = push_negation(f.left(), negate);
      Formula r = push_negation(f.right(), negate);
      return k == K::And ? Formula::conj(std::move(l), std::move(r))
                         : Formula::disj(std::move(l), std::move(r));
    }
    case K::BigAnd:
    case K::BigOr: {
      if (f.is_symbolic()) {
        const SymbolicFamily& fam = f.symbolic();
        SymbolicFamily out;
        out.param = fam.param;
        if (negate) {
          if (!fam.dual_tag) {
            throw Error("no-dual", "symbolic family '" + fam.tag + "' has no registered dual");
          }
          out.tag = *fam.dual_tag;
          out.dual_tag = fam.tag;
        } else {
          out.tag = fam.tag;
          out.dual_tag = fam.dual_tag;
        }
        for (const auto& m : fam.members) {
          out.members.push_back({push_negation(m.representative, negate), m.multiplicity});
        }
        return k == K::BigAnd ? Formula::big_and(std::move(out)) : Formula::big_or(std::move(out));
      }
      std::vector<Formula> members;
      members.reserve(f.children().size());
      for (const auto& c : f.children()) members.push_back(push_negation(c, negate));
      return k == K::BigAnd ? Formula::big_and(std::move(members))
                            : Formula::big_or(std::move(members));
    }
    case K::Exists:
    case K::Forall: {
      Formula b = push_negation(f.body(), negate);
      return k == K::Exists ? Formula::exists(f.var(), std::move(b))
                            : Formula::forall(f.var(), std::move(b));
    }
    case K::Not:
      return push_negation(f.body(), !negate);
  }
  throw Error("internal", "unknown formula kind");
}

}  // namespace

Formula to_nnf(const Formula& f) { return push_negation(f, false); }

// ---------------------------------------------------------------------------
// Measures, ranks, variables

Ordinal size(const Formula& f, const ComplexityMeasure& m) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom:
    case K::Eq:
    case K::NegEq:
      return Ordinal::natural(1);
    case K::And:
    case K::Or:
      return m.r(size(f.left(), m), size(f.right(), m));
    case K::Exists:
    case K::Forall:
      return m.q(size(f.body(), m));
    case K::BigAnd:
    case K::BigOr: {
      if (f.is_symbolic()) {
        std::vector<FamilyEntry> entries;
        for (const auto& member : f.symbolic().members) {
          entries.push_back({size(member.representative, m), member.multiplicity});
        }
        return m.t(OmegaFamily(std::move(entries)));
      }
      std::vector<Ordinal> values;
      values.reserve(f.children().size());
      for (const auto& c : f.children()) values.push_back(size(c, m));
      return m.t(OmegaFamily::from_list(values));
    }
    case K::Not:
      throw Error("not-nnf", "size is defined on negation normal form only");
  }
  throw Error("internal", "unknown formula kind");
}

Ordinal size(const Formula& f) {
  static const ComplexityMeasure measure = builtin_measure("size");
  return size(f, measure);
}

Ordinal quantifier_rank(const Formula& f) {
  using K = Formula::Kind;
  if (f.is_literal()) return Ordinal();
  if (f.kind() == K::Exists || f.kind() == K::Forall) return successor(quantifier_rank(f.body()));
  Ordinal out;
  if (f.is_symbolic()) {
    for (const auto& m : f.symbolic().members) out = max(out, quantifier_rank(m.representative));
    return out;
  }
  for (const auto& c : f.children()) out = max(out, quantifier_rank(c));
  return out;
}

std::set<int> free_vars(const Formula& f) {
  using K = Formula::Kind;
  if (f.is_literal()) return {f.vars().begin(), f.vars().end()};
  std::set<int> out;
  if (f.is_symbolic()) {
    for (const auto& m : f.symbolic().members) {
      auto sub = free_vars(m.representative);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
  for (const auto& c : f.children()) {
    auto sub = free_vars(c);
    out.insert(sub.begin(), sub.end());
  }
  if (f.kind() == K::Exists || f.kind() == K::Forall) out.erase(f.var());
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

Element lookup(const VarAssignment& a, int var) {
  auto it = a.find(var);
  if (it == a.end()) {
    throw Error("unbound-variable", "variable x" + std::to_string(var) + " is not assigned");
  }
  return it->second;
}

bool eval(const Formula& f, const Structure& s, VarAssignment& a) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom: {
      std::vector<Element> tuple;
      tuple.reserve(f.vars().size());
      for (int v : f.vars()) tuple.push_back(lookup(a, v));
      return s.holds(f.relation(), tuple) == (f.kind() == K::Atom);
    }
    case K::Eq:
    case K::NegEq:
      return (lookup(a, f.vars()[0]) == lookup(a, f.vars()[1])) == (f.kind() == K::Eq);
    case K::And:
      return eval(f.left(), s, a) && eval(f.right(), s, a);
    case K::Or:
      return eval(f.left(), s, a) || eval(f.right(), s, a);
    case K::BigAnd:
    case K::BigOr: {
      if (f.is_symbolic()) {
        throw Error("symbolic-family",
                    "symbolic family '" + f.symbolic().tag + "' has no generic evaluator");
      }
      const bool conj = f.kind() == K::BigAnd;
      for (const auto& c : f.children()) {
        if (eval(c, s, a) != conj) return !conj;
      }
      return conj;
    }
    case K::Exists:
    case K::Forall: {
      const bool existential = f.kind() == K::Exists;
      const int j = f.var();
      auto saved = a.find(j);
      std::optional<Element> old;
      if (saved != a.end()) old = saved->second;
      bool result = !existential;
      for (Element e : s.universe) {
        a[j] = e;
        if (eval(f.body(), s, a) == existential) {
          result = existential;
          break;
        }
      }
      if (old) {
        a[j] = *old;
      } else {
        a.erase(j);
      }
      return result;
    }
    case K::Not:
      return !eval(f.body(), s, a);
  }
  throw Error("internal", "unknown formula kind");
}

}  // namespace

bool evaluate(const Formula& f, const Structure& s, const VarAssignment& a) {
  VarAssignment scratch = a;
  return eval(f, s, scratch);
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

std::string var_name(int v) { return "x" + std::to_string(v); }

std::string atom_text(const Formula& f) {
  std::string out = f.relation();
  if (!f.vars().empty()) {
    out += "(";
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
      if (i > 0) out += ",";
      out += var_name(f.vars()[i]);
    }
    out += ")";
  }
  return out;
}

}  // namespace

std::string to_text(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: return atom_text(f);
    case K::NegAtom: return "~" + atom_text(f);
    case K::Eq: return var_name(f.vars()[0]) + " = " + var_name(f.vars()[1]);
    case K::NegEq: return var_name(f.vars()[0]) + " != " + var_name(f.vars()[1]);
    case K::And: return "(" + to_text(f.left()) + " & " + to_text(f.right()) + ")";
    case K::Or: return "(" + to_text(f.left()) + " | " + to_text(f.right()) + ")";
    case K::BigAnd:
    case K::BigOr: {
      const std::string head = f.kind() == K::BigAnd ? "AND" : "OR";
      if (f.is_symbolic()) return head + "{" + f.symbolic().tag + ":" + f.symbolic().param + "}";
      std::string out = head + "[";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i > 0) out += "; ";
        out += to_text(f.children()[i]);
      }
      return out + "]";
    }
    case K::Exists: return "E " + var_name(f.var()) + ". " + to_text(f.body());
    case K::Forall: return "A " + var_name(f.var()) + ". " + to_text(f.body());
    case K::Not: {
      const bool literal_eq = f.body().kind() == K::Eq || f.body().kind() == K::NegEq;
      return literal_eq ? "~(" + to_text(f.body()) + ")" : "~" + to_text(f.body());
    }
  }
  throw Error("internal", "unknown formula kind");
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_disj();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error("parse-error", "cannot parse formula at offset " + std::to_string(pos_) + ": " +
                                   why + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  static bool is_var_name(const std::string& s) {
    return s.size() >= 2 && s[0] == 'x' &&
           std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(c); });
  }

  int parse_var() {
    std::string id = peek_ident();
    if (!is_var_name(id)) fail("expected a variable x<n>");
    pos_ += id.size();
    return std::stoi(id.substr(1));
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (accept("|")) f = Formula::disj(f, parse_conj());
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conj(f, parse_unary());
    return f;
  }

  std::vector<Formula> parse_list() {
    std::vector<Formula> out;
    if (accept("]")) return out;
    out.push_back(parse_disj());
    while (accept(";")) out.push_back(parse_disj());
    expect("]");
    return out;
  }

  Formula parse_unary() {
    skip_ws();
    if (accept("~")) {
      Formula body = parse_unary();
      if (body.kind() == Formula::Kind::Atom) return Formula::neg_atom(body.relation(), body.vars());
      if (body.kind() == Formula::Kind::Eq) return Formula::neg_eq(body.vars()[0], body.vars()[1]);
      return Formula::negation(body);
    }
    if (accept("(")) {
      Formula f = parse_disj();
      expect(")");
      return f;
    }
    std::string id = peek_ident();
    if (id.empty()) fail("expected a formula");
    if (is_var_name(id)) {
      const int i = parse_var();
      if (accept("!=")) return Formula::neg_eq(i, parse_var());
      expect("=");
      return Formula::eq(i, parse_var());
    }
    const std::size_t save = pos_;
    pos_ += id.size();
    if (id == "E" || id == "A") {
      if (is_var_name(peek_ident())) {
        const int j = parse_var();
        expect(".");
        Formula body = parse_unary();
        return id == "E" ? Formula::exists(j, body) : Formula::forall(j, body);
      }
    }
    if ((id == "AND" || id == "OR") && accept("[")) {
      auto members = parse_list();
      return id == "AND" ? Formula::big_and(std::move(members)) : Formula::big_or(std::move(members));
    }
    if (!std::isalpha(static_cast<unsigned char>(id[0]))) {
      pos_ = save;
      fail("relation names start with a letter");
    }
    std::vector<int> vars;
    if (accept("(")) {
      if (!accept(")")) {
        vars.push_back(parse_var());
        while (accept(",")) vars.push_back(parse_var());
        expect(")");
      }
    }
    return Formula::atom(id, std::move(vars));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace efg
