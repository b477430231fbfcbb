#include "efg/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "efg/error.hpp"

namespace efg {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error("overflow", "ordinal coefficient overflow");
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error("overflow", "ordinal coefficient overflow");
  }
  return out;
}

}  // namespace

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal out;
  if (n > 0) out.terms_.push_back(CnfTerm{Ordinal(), n});
  return out;
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal out;
  if (coefficient > 0) out.terms_.push_back(CnfTerm{exponent, coefficient});
  return out;
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw Error("not-cnf", "CNF coefficients must be positive");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw Error("not-cnf", "CNF exponents must be strictly decreasing");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool Ordinal::is_zero() const { return terms_.empty(); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<std::uint64_t> Ordinal::as_natural() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

Ordinal Ordinal::leading_exponent() const {
  return terms_.empty() ? Ordinal() : terms_.front().exponent;
}

std::uint64_t Ordinal::coefficient_at(const Ordinal& exponent) const {
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coefficient;
  }
  return 0;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (auto c = x.coefficient <=> y.coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal successor(const Ordinal& a) { return natural_sum(a, Ordinal::natural(1)); }

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<CnfTerm> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].exponent > y[j].exponent)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].exponent > x[i].exponent) {
      out.push_back(y[j++]);
    } else {
      out.push_back(CnfTerm{x[i].exponent, checked_add(x[i].coefficient, y[j].coefficient)});
      ++i;
      ++j;
    }
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal scale_by_nat(const Ordinal& a, std::uint64_t k) {
  if (k == 0) throw Error("invalid-argument", "scale_by_nat requires k >= 1");
  std::vector<CnfTerm> out = a.terms();
  for (auto& t : out) t.coefficient = checked_mul(t.coefficient, k);
  return Ordinal::from_terms(std::move(out));
}

Ordinal max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

Ordinal truncate_below(const Ordinal& a, const Ordinal& min_exponent) {
  std::vector<CnfTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent >= min_exponent) out.push_back(t);
  }
  return Ordinal::from_terms(std::move(out));
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i > 0) out += "+";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (t.exponent != natural(1)) {
      const bool bare = t.exponent.is_finite() || t.exponent == omega();
      out += "^";
      out += bare ? t.exponent.to_string() : "(" + t.exponent.to_string() + ")";
    }
    if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << a.to_string(); }

// ---------------------------------------------------------------------------
// Families and the infinite natural sum

OmegaFamily::OmegaFamily(std::vector<FamilyEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("empty-family", "an omega family needs at least one entry");
  for (const auto& e : entries_) {
    if (!e.multiplicity.many && e.multiplicity.count == 0) {
      throw Error("empty-family", "finite multiplicities must be positive");
    }
  }
}

OmegaFamily OmegaFamily::from_list(const std::vector<Ordinal>& values) {
  std::vector<FamilyEntry> entries;
  entries.reserve(values.size() + 1);
  for (const auto& v : values) entries.push_back({v, Multiplicity::finite(1)});
  entries.push_back({Ordinal(), Multiplicity::omega_many()});
  return OmegaFamily(std::move(entries));
}

OmegaFamily OmegaFamily::constant(const Ordinal& value) {
  return OmegaFamily({FamilyEntry{value, Multiplicity::omega_many()}});
}

bool OmegaFamily::is_infinite() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const FamilyEntry& e) { return e.multiplicity.many; });
}

Ordinal OmegaFamily::max_value() const {
  Ordinal out;
  for (const auto& e : entries_) out = max(out, e.value);
  return out;
}

Ordinal infinite_natural_sum(const OmegaFamily& family) {
  // Finite part F, then the omega-many block rounds the leading repeated
  // exponent b up to a single omega^(b+1) on top of F's terms above b.
  Ordinal finite_part;
  std::optional<Ordinal> top_repeated;
  for (const auto& e : family.entries()) {
    if (e.multiplicity.many) {
      if (e.value.is_zero()) continue;
      const Ordinal lead = e.value.leading_exponent();
      if (!top_repeated || *top_repeated < lead) top_repeated = lead;
    } else if (!e.value.is_zero()) {
      finite_part = natural_sum(finite_part, scale_by_nat(e.value, e.multiplicity.count));
    }
  }
  if (!top_repeated) return finite_part;
  const Ordinal next = successor(*top_repeated);
  return natural_sum(truncate_below(finite_part, next), Ordinal::omega_power(next));
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_cnf() {
    std::vector<CnfTerm> terms;
    terms.push_back(parse_term());
    while (peek() == '+') {
      ++pos_;
      terms.push_back(parse_term());
    }
    if (terms.size() == 1 && terms[0].coefficient == 0) return Ordinal();
    for (const auto& t : terms) {
      if (t.coefficient == 0) fail("zero term inside a sum");
    }
    try {
      return Ordinal::from_terms(std::move(terms));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect_end() {
    if (peek() != '\0') fail("unexpected trailing input");
  }

  void consume(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error("parse-error", "cannot parse ordinal '" + std::string(text_) + "': " + why);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_omega() {
    const char c = peek();
    if (c == 'w') return true;
    return text_.substr(pos_).starts_with("\xCF\x89");
  }

  void eat_omega() { pos_ += (text_[pos_] == 'w') ? 1 : 2; }

  std::uint64_t parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a natural number");
    }
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(text_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  CnfTerm parse_term() {
    if (!at_omega()) return CnfTerm{Ordinal(), parse_nat()};
    eat_omega();
    Ordinal exponent = Ordinal::natural(1);
    if (peek() == '^') {
      ++pos_;
      if (peek() == '(') {
        ++pos_;
        exponent = parse_cnf();
        consume(')');
      } else if (at_omega()) {
        eat_omega();
        exponent = Ordinal::omega();
      } else {
        exponent = Ordinal::natural(parse_nat());
      }
    }
    std::uint64_t coefficient = 1;
    if (peek() == '*') {
      ++pos_;
      coefficient = parse_nat();
      if (coefficient == 0) fail("zero coefficient");
    }
    if (exponent.is_zero()) fail("w^0 is not in normal form; write a natural number");
    return CnfTerm{exponent, coefficient};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  OrdinalParser p(text);
  Ordinal out = p.parse_cnf();
  p.expect_end();
  return out;
}

Ordinal eval_ordinal_expression(std::string_view text) {
  OrdinalParser p(text);
  Ordinal out = p.parse_cnf();
  while (p.peek() == '#') {
    p.consume('#');
    out = natural_sum(out, p.parse_cnf());
  }
  p.expect_end();
  return out;
}

}  // namespace efg
