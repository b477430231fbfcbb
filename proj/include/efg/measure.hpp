#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "efg/ordinal.hpp"

namespace efg {

/// Abstract complexity measure given by
///   q : value of a quantified formula from its body,
///   r : value of a binary connective from its operands,
///   t : value of a countable connective from the family of member values.
/// Literals always have value 1.
struct ComplexityMeasure {
  std::string name;
  std::function<Ordinal(const Ordinal&)> q;
  std::function<Ordinal(const Ordinal&, const Ordinal&)> r;
  std::function<Ordinal(const OmegaFamily&)> t;
};

/// "size" (successor, natural sum, infinite natural sum), "c1" (successor,
/// sup of successors, sup of member successors) or "qrank" (successor, sup,
/// sup). Throws Error("unknown-measure").
ComplexityMeasure builtin_measure(std::string_view name);
std::vector<std::string> builtin_measure_names();

struct NicenessWitness {
  std::string condition;  // "q", "r" or "t"
  std::string input;      // textual arguments
  Ordinal output;
  std::string describe() const;
};

struct NicenessReport {
  std::string measure;
  bool pass = true;
  std::size_t checked = 0;
  std::vector<NicenessWitness> witnesses;
};

/// Samples the three niceness conditions on `samples` pseudo-random nonzero
/// ordinals and families below omega^3 plus a fixed corner battery. Keeps at
/// most 16 witnesses. Deterministic for a fixed seed.
NicenessReport check_nice(const ComplexityMeasure& m, std::size_t samples, std::uint64_t seed);

/// The corner battery alone (1, w, w+1, w^2, equal pairs, constant families).
bool passes_corner_battery(const ComplexityMeasure& m);

}  // namespace efg
