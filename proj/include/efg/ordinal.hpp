#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace efg {

struct CnfTerm;

/// An ordinal below epsilon_0 in Cantor normal form:
///   omega^e1 * c1 + ... + omega^ek * ck,  e1 > ... > ek,  ci >= 1.
/// The empty term list is 0. Values are immutable once built.
class Ordinal {
 public:
  Ordinal();
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  /// omega^exponent * coefficient (coefficient 0 yields 0).
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);
  /// Validates strictly decreasing exponents and positive coefficients.
  static Ordinal from_terms(std::vector<CnfTerm> terms);

  const std::vector<CnfTerm>& terms() const { return terms_; }

  bool is_zero() const;
  bool is_finite() const;
  std::optional<std::uint64_t> as_natural() const;
  /// Exponent of the leading term; 0 for the ordinal 0.
  Ordinal leading_exponent() const;
  /// Coefficient attached to `exponent` (0 when absent).
  std::uint64_t coefficient_at(const Ordinal& exponent) const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<CnfTerm> terms_;
};

struct CnfTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 0;
};

std::ostream& operator<<(std::ostream& os, const Ordinal& a);

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
Ordinal successor(const Ordinal& a);
/// Hessenberg natural sum: coefficientwise merge of the two normal forms.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);
/// k-fold natural sum a # ... # a; k must be at least 1.
Ordinal scale_by_nat(const Ordinal& a, std::uint64_t k);
Ordinal max(const Ordinal& a, const Ordinal& b);
/// Terms of `a` whose exponent is >= `min_exponent`.
Ordinal truncate_below(const Ordinal& a, const Ordinal& min_exponent);

/// Multiplicity of a family entry: a positive count or omega-many.
struct Multiplicity {
  bool many = false;
  std::uint64_t count = 1;

  static Multiplicity finite(std::uint64_t n) { return {false, n}; }
  static Multiplicity omega_many() { return {true, 0}; }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

struct FamilyEntry {
  Ordinal value;
  Multiplicity multiplicity;
};

/// A multiset description of an omega-indexed sequence of ordinals: each
/// entry contributes `value` either `count` times or omega-many times.
/// Entry order carries no meaning.
class OmegaFamily {
 public:
  explicit OmegaFamily(std::vector<FamilyEntry> entries);

  /// Finite list padded with omega-many zeros (an eventually-zero sequence).
  static OmegaFamily from_list(const std::vector<Ordinal>& values);
  /// The constant sequence (value, value, ...).
  static OmegaFamily constant(const Ordinal& value);

  const std::vector<FamilyEntry>& entries() const { return entries_; }
  /// True iff some entry repeats omega-many times.
  bool is_infinite() const;
  /// Largest value occurring in the family (the supremum of its members).
  Ordinal max_value() const;

 private:
  std::vector<FamilyEntry> entries_;
};

/// sup_n (g_0 # ... # g_{n-1}) for the sequence described by `family`.
Ordinal infinite_natural_sum(const OmegaFamily& family);

/// Parses the CNF text syntax: `0`, naturals, `w`, `w^<exp>`, `*<coef>` and
/// `+` between terms, e.g. `w^2*3+w+4` or `w^(w+1)`. Non-CNF input (terms not
/// strictly decreasing) is rejected with code "parse-error".
Ordinal parse_ordinal(std::string_view text);

/// Evaluates `cnf # cnf # ...` using the natural sum.
Ordinal eval_ordinal_expression(std::string_view text);

}  // namespace efg
