#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "sunflower/error.hpp"

namespace sunflower {

// Cantor pairing pi(a,b) = (a+b)(a+b+1)/2 + b, a bijection omega^2 -> omega.
inline std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  unsigned __int128 v = s * (s + 1) / 2 + b;
  if (v > UINT64_MAX) throw error(errc::overflow, "cantor_pair out of range");
  return static_cast<std::uint64_t>(v);
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // w = floor((sqrt(8z+1)-1)/2), corrected for floating point error.
  std::uint64_t w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  std::uint64_t b = z - w * (w + 1) / 2;
  std::uint64_t a = w - b;
  return {a, b};
}

}  // namespace sunflower
