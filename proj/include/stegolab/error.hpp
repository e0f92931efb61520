#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stegolab {

enum class ErrorCategory {
  Format,    // malformed PGM or CSV input
  Capacity,  // message does not fit the cover
  Framing,   // length prefix inconsistent with the stego image
  Metric,    // metric undefined for the given input
  Training,  // classifier could not be trained
  Invalid,   // precondition on an argument violated
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace stegolab
