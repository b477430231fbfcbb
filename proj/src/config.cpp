#include "efg/config.hpp"

#include <cstdlib>

#include "efg/error.hpp"

namespace efg {

Caps apply_cap_overrides(Caps base, std::string_view spec) {
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    const std::string item(spec.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad-config", "cap overrides look like key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    unsigned long value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("bad-config", "cap '" + key + "' needs a positive integer");
    }
    if (value == 0) throw Error("bad-config", "cap '" + key + "' must be positive");
    if (key == "budget") {
      base.budget = static_cast<unsigned>(value);
    } else if (key == "jMax" || key == "jmax") {
      base.jmax = value;
    } else if (key == "supportBound") {
      base.support_bound = value;
    } else if (key == "lengthCap") {
      base.length_cap = value;
    } else if (key == "roundCap") {
      base.round_cap = value;
    } else {
      throw Error("bad-config", "unknown cap '" + key + "'");
    }
  }
  return base;
}

Caps caps_from_environment(Caps base) {
  const char* spec = std::getenv("EFGAME_CAPS");
  return spec ? apply_cap_overrides(base, spec) : base;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "table") return OutputFormat::Table;
  throw Error("bad-config", "output format is json or table");
}

}  // namespace efg
