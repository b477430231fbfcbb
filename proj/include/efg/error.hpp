#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace efg {

/// Domain error carrying a machine-readable reason code (e.g. "rank-overflow",
/// "budget-exceeded", "parse-error"). Every failing operation in the library
/// throws this type so callers can report the code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace efg
