#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace efg {

struct Caps {
  unsigned budget = 8;
  std::size_t jmax = 4;
  std::size_t support_bound = 8;
  std::size_t length_cap = 12;
  std::size_t round_cap = 50;
};

enum class OutputFormat { Json, Table };

struct RunConfig {
  std::uint64_t seed = 0;
  Caps caps;
  OutputFormat format = OutputFormat::Table;
};

/// Applies "key=value,..." overrides (keys budget, jMax, supportBound,
/// lengthCap, roundCap). Throws Error("bad-config") on unknown keys or
/// non-positive values.
Caps apply_cap_overrides(Caps base, std::string_view spec);

/// Caps with the overrides from EFGAME_CAPS, if set.
Caps caps_from_environment(Caps base = {});

OutputFormat parse_output_format(std::string_view name);

}  // namespace efg
