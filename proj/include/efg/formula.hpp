#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "efg/ordinal.hpp"
#include "efg/structure.hpp"

namespace efg {

struct ComplexityMeasure;
class Formula;
struct FormulaNode;

/// One shape of member in a symbolic countable connective, repeated
/// `multiplicity` times (possibly omega-many).
struct SymbolicMember;

/// A countable conjunction/disjunction body that is not listed explicitly.
/// `tag`/`param` name the schema (e.g. "theta" with the string it pins down);
/// `members` give one representative formula per member shape so that sizes
/// and ranks can be computed; `dual_tag` names the schema of the negation.
struct SymbolicFamily {
  std::string tag;
  std::string param;
  std::vector<SymbolicMember> members;
  std::optional<std::string> dual_tag;
};

/// Formula of L_{omega_1 omega} over a relational vocabulary. Cheap to copy:
/// nodes are immutable and shared.
class Formula {
 public:
  enum class Kind { Atom, Eq, NegAtom, NegEq, And, Or, BigAnd, BigOr, Exists, Forall, Not };

  static Formula atom(std::string relation, std::vector<int> vars);
  static Formula neg_atom(std::string relation, std::vector<int> vars);
  static Formula eq(int i, int j);
  static Formula neg_eq(int i, int j);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula big_and(std::vector<Formula> members);
  static Formula big_or(std::vector<Formula> members);
  static Formula big_and(SymbolicFamily family);
  static Formula big_or(SymbolicFamily family);
  static Formula exists(int var, Formula body);
  static Formula forall(int var, Formula body);
  static Formula negation(Formula body);

  Kind kind() const;
  bool is_literal() const;
  bool is_symbolic() const;

  const std::string& relation() const;
  /// Variable indices of an atom, or {i, j} for an (in)equality.
  const std::vector<int>& vars() const;
  /// Quantified variable.
  int var() const;
  /// Operands: two for And/Or, one for quantifiers and Not, the explicit list
  /// for BigAnd/BigOr (empty when symbolic).
  const std::vector<Formula>& children() const;
  const Formula& left() const { return children().at(0); }
  const Formula& right() const { return children().at(1); }
  const Formula& body() const { return children().at(0); }
  const SymbolicFamily& symbolic() const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct SymbolicMember {
  Formula representative;
  Multiplicity multiplicity;
};

struct FormulaNode {
  Formula::Kind kind;
  std::string relation;
  std::vector<int> vars;
  int var = 0;
  std::vector<Formula> children;
  std::optional<SymbolicFamily> symbolic;
};

bool is_nnf(const Formula& f);
/// Pushes negations to literals (double negation, De Morgan for binary and
/// countable connectives, quantifier duals). Throws Error("no-dual") for a
/// symbolic family without a registered dual.
Formula to_nnf(const Formula& f);

/// Measure-parametric complexity: literals 1, And/Or via m.r, quantifiers via
/// m.q, BigAnd/BigOr via m.t on the family of member values.
Ordinal size(const Formula& f, const ComplexityMeasure& m);
/// size under the builtin `size` measure.
Ordinal size(const Formula& f);
Ordinal quantifier_rank(const Formula& f);
std::set<int> free_vars(const Formula& f);

/// Tarskian satisfaction. Throws Error("unbound-variable") for a free variable
/// outside the assignment and Error("symbolic-family") on symbolic bodies.
bool evaluate(const Formula& f, const Structure& s, const VarAssignment& a);

/// Compact text syntax, e.g. `E x0. (P(x0) & Q(x0))`, `~p1`, `x0 != x1`,
/// `AND[p0; p1; p2]`. Symbolic families print as `AND{tag:param}` and do not
/// parse back.
std::string to_text(const Formula& f);
Formula parse_formula(std::string_view text);

}  // namespace efg
