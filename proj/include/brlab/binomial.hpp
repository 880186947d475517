#pragma once

#include <cstdint>

#include "brlab/error.hpp"

namespace brlab {

/// C(n, k) for non-negative arguments; 0 when k > n. Throws InvalidDimension
/// if the result does not fit 64 bits.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > UINT64_MAX) throw Error(ErrorKind::InvalidDimension, "binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace brlab
