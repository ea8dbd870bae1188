#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace grover {

/// Per-call bookkeeping. Operations accept an optional pointer to one of these;
/// it is never shared between calls by the library itself.
struct Diagnostics {
  std::size_t oracle_calls = 0;
  std::size_t diffusion_calls = 0;
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool has_warning(const std::string& needle) const {
    for (const auto& w : warnings)
      if (w.find(needle) != std::string::npos) return true;
    return false;
  }
};

}  // namespace grover
