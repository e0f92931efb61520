#include "stegolab/error.hpp"

namespace stegolab {

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Format: return "format";
    case ErrorCategory::Capacity: return "capacity";
    case ErrorCategory::Framing: return "framing";
    case ErrorCategory::Metric: return "metric";
    case ErrorCategory::Training: return "training";
    case ErrorCategory::Invalid: return "invalid";
  }
  return "unknown";
}

}  // namespace stegolab
