#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "efg/formula.hpp"
#include "efg/ordinal.hpp"

namespace efg {

/// Infinite binary string prefix . period^omega, kept normalized: the period
/// is primitive and the prefix is as short as possible.
class UPString {
 public:
  UPString(std::vector<bool> prefix, std::vector<bool> period);

  /// Text form `<prefix>(<period>)`, e.g. `10(0)` or `(01)`.
  static UPString parse(std::string_view text);

  bool bit(std::size_t i) const;
  const std::vector<bool>& prefix() const { return prefix_; }
  const std::vector<bool>& period() const { return period_; }
  std::string to_string() const;

  friend bool operator==(const UPString&, const UPString&) = default;

 private:
  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

/// Finite partial map from positions to bits.
using Segment = std::map<std::size_t, bool>;

std::string segment_text(const Segment& g);
Segment parse_segment(std::string_view text);
/// True iff the two segments agree where both are defined.
bool compatible(const Segment& a, const Segment& b);

/// A set of strings determined by the bits on a finite support: `table`
/// holds one flag per pattern, bit k of the index giving the bit at support[k].
class Clopen {
 public:
  static Clopen all();
  static Clopen none();
  static Clopen cylinder(const Segment& g);
  static Clopen from_table(std::vector<std::size_t> support, std::vector<bool> table);

  Clopen complement() const;
  Clopen intersect(const Clopen& other) const;
  Clopen unite(const Clopen& other) const;

  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<bool>& table() const { return table_; }
  /// `pattern` must define every support position.
  bool allows(const Segment& pattern) const;
  bool contains(const UPString& h) const;
  bool is_empty() const;
  std::string to_string() const;

 private:
  Clopen(std::vector<std::size_t> support, std::vector<bool> table);
  std::vector<std::size_t> support_;
  std::vector<bool> table_;
};

enum class BaseProperty { FinitelyManyOnes, OddManyOnes, UltimatelyPeriodic };

BaseProperty parse_base_property(std::string_view name);
std::string base_property_name(BaseProperty p);

/// A base property cut down by a segment every member must extend and by a
/// list of clopen sets. Each base is dense and never constrains finitely many
/// positions, so membership of finite patterns is decided on the support.
struct DenseProperty {
  BaseProperty base = BaseProperty::FinitelyManyOnes;
  Segment filter;
  std::vector<Clopen> clopens;

  std::vector<std::size_t> support() const;
  DenseProperty restricted(const Clopen& c) const;
  DenseProperty with_filter(const Segment& g) const;
  std::string describe() const;
};

/// Does the pattern (defined on all of p.support()) survive filter and clopens?
bool allows(const DenseProperty& p, const Segment& pattern);
/// Does some member extend g?
bool ext(const DenseProperty& p, const Segment& g);
/// A member extending g, when ext(p, g).
std::optional<UPString> witness(const DenseProperty& p, const Segment& g);
bool contains(const DenseProperty& p, const UPString& h);
bool is_empty(const DenseProperty& p);

/// Initial segments of length L of the members. Throws Error("cap-exceeded")
/// for L > length_cap.
std::set<std::string> truncate(const DenseProperty& p, std::size_t length, std::size_t length_cap = 12);

/// Every pattern on at most d of the L positions occurs in some string of s.
bool is_d_dense(const std::set<std::string>& s, std::size_t d);

struct DensePair {
  std::size_t length = 0;
  std::size_t d = 0;
  std::set<std::string> left;
  std::set<std::string> right;
};

/// Disjoint pairs of d-dense subsets of 2^L for 2 <= L <= max_length and
/// 1 <= d <= min(max_d, L-1): the parity split and `per_cell - 1` seeded
/// thinnings of it that keep both sides d-dense.
std::vector<DensePair> dense_pair_corpus(std::size_t max_length, std::size_t max_d, std::size_t per_cell,
                                         std::uint64_t seed);

/// A segment f with |dom f| <= support_bound such that every member of both
/// classes extends f and every extension of f has members in both classes.
std::optional<Segment> check_condition_e9(const DenseProperty& left, const DenseProperty& right,
                                          std::size_t support_bound);

/// theta_t as a countable conjunction of the literals p_i^t.
Formula theta_formula(const UPString& t);
/// Phi_P for a countably infinite P: a countable disjunction of theta_t.
Formula phi_formula(const std::string& property_name);
/// Phi over finitely many strings, each cut to its finite length.
Formula phi_formula_finite(const std::vector<std::string>& strings);
Ordinal theta_size();
Ordinal phi_size();
/// t |= theta_h.
bool eval_theta(const UPString& t, const UPString& h);

}  // namespace efg
