#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "cadyn/error.hpp"

namespace cadyn {

/// Selects between the serial reference kernels and the OpenMP ones.
/// Both produce identical results; only wall time differs.
enum class Exec { Serial, Parallel };

/// Cap on exhaustive enumeration work.
struct Budget {
  static constexpr std::uint64_t kDefault = 10'000'000;
  std::uint64_t limit = kDefault;

  void require(std::uint64_t amount, const std::string& what) const {
    if (amount > limit) throw BudgetExceeded(what, amount, limit);
  }
};

/// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    result *= base;
  }
  return result;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace cadyn
