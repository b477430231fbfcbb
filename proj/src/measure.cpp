#include "efg/measure.hpp"

#include <random>
#include <sstream>

#include "efg/error.hpp"

namespace efg {

namespace {

Ordinal sup_of_successors(const OmegaFamily& fam) {
  Ordinal out;
  for (const auto& e : fam.entries()) out = max(out, successor(e.value));
  return out;
}

std::string family_text(const OmegaFamily& fam) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& e : fam.entries()) {
    if (!first) os << ", ";
    first = false;
    os << "(" << e.value << ", ";
    if (e.multiplicity.many) {
      os << "MANY";
    } else {
      os << e.multiplicity.count;
    }
    os << ")";
  }
  os << "}";
  return os.str();
}

// Nonzero ordinal below omega^3 with small coefficients.
Ordinal random_ordinal(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, 4);
  for (;;) {
    std::vector<CnfTerm> terms;
    for (int e = 2; e >= 0; --e) {
      const int c = coef(rng);
      if (c > 0) terms.push_back({Ordinal::natural(e), static_cast<std::uint64_t>(c)});
    }
    if (!terms.empty()) return Ordinal::from_terms(std::move(terms));
  }
}

OmegaFamily random_family(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<FamilyEntry> entries;
  const int finite = count(rng) - 1;
  for (int i = 0; i < finite; ++i) {
    entries.push_back({random_ordinal(rng), Multiplicity::finite(count(rng))});
  }
  const int many = count(rng);
  for (int i = 0; i < many; ++i) entries.push_back({random_ordinal(rng), Multiplicity::omega_many()});
  return OmegaFamily(std::move(entries));
}

class Checker {
 public:
  Checker(const ComplexityMeasure& m, NicenessReport& report) : m_(m), report_(report) {}

  void q(const Ordinal& g) {
    ++report_.checked;
    const Ordinal out = m_.q(g);
    if (!(out > g)) fail("q", "q(" + g.to_string() + ")", out);
  }

  void r(const Ordinal& a, const Ordinal& b) {
    ++report_.checked;
    const Ordinal out = m_.r(a, b);
    if (!(out > a && out > b)) fail("r", "r(" + a.to_string() + ", " + b.to_string() + ")", out);
  }

  void t(const OmegaFamily& fam) {
    ++report_.checked;
    const Ordinal out = m_.t(fam);
    if (!(out > fam.max_value())) fail("t", "t(" + family_text(fam) + ")", out);
  }

 private:
  void fail(const std::string& condition, std::string input, const Ordinal& out) {
    report_.pass = false;
    if (report_.witnesses.size() < 16) report_.witnesses.push_back({condition, std::move(input), out});
  }

  const ComplexityMeasure& m_;
  NicenessReport& report_;
};

std::vector<Ordinal> corner_ordinals() {
  const Ordinal w = Ordinal::omega();
  return {Ordinal::natural(1), w, successor(w), Ordinal::omega_power(Ordinal::natural(2))};
}

void run_corner_battery(Checker& check) {
  const auto corners = corner_ordinals();
  for (const auto& a : corners) {
    check.q(a);
    check.t(OmegaFamily::constant(a));
    for (const auto& b : corners) check.r(a, b);
  }
}

}  // namespace

ComplexityMeasure builtin_measure(std::string_view name) {
  if (name == "size") {
    return {"size", successor, natural_sum, infinite_natural_sum};
  }
  if (name == "c1") {
    return {"c1", successor,
            [](const Ordinal& a, const Ordinal& b) { return max(successor(a), successor(b)); },
            sup_of_successors};
  }
  if (name == "qrank") {
    return {"qrank", successor, [](const Ordinal& a, const Ordinal& b) { return max(a, b); },
            [](const OmegaFamily& fam) { return fam.max_value(); }};
  }
  throw Error("unknown-measure", "unknown complexity measure '" + std::string(name) + "'");
}

std::vector<std::string> builtin_measure_names() { return {"size", "c1", "qrank"}; }

std::string NicenessWitness::describe() const { return input + " = " + output.to_string(); }

NicenessReport check_nice(const ComplexityMeasure& m, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error("bad-argument", "check_nice needs at least one sample");
  NicenessReport report;
  report.measure = m.name;
  Checker check(m, report);
  run_corner_battery(check);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Ordinal a = random_ordinal(rng);
    const Ordinal b = random_ordinal(rng);
    check.q(a);
    check.r(a, b);
    check.t(random_family(rng));
  }
  return report;
}

bool passes_corner_battery(const ComplexityMeasure& m) {
  NicenessReport report;
  Checker check(m, report);
  run_corner_battery(check);
  return report.pass;
}

}  // namespace efg
