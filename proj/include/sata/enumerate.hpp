#pragma once

#include <cstdint>
#include <vector>

#include "sata/core.hpp"

namespace sata {

// Product of per-robot primitive counts, saturating at 2^63-1.
inline std::uint64_t count_choices(const Instance& inst) {
  std::uint64_t product = 1;
  for (int i = 0; i < inst.robot_count(); ++i) {
    std::uint64_t p = static_cast<std::uint64_t>(inst.primitive_count(i));
    if (product > UINT64_MAX / 2 / p) return UINT64_MAX / 2;
    product *= p;
  }
  return product;
}

// Visits every joint primitive choice in lexicographic order (robot 0 is the
// most significant digit). Returns the number of choices visited.
template <typename F>
std::uint64_t enumerate_choices(const Instance& inst, F&& fn) {
  const int n = inst.robot_count();
  std::vector<int> chosen(n, 0);
  std::uint64_t visited = 0;
  while (true) {
    fn(static_cast<const std::vector<int>&>(chosen));
    ++visited;
    int i = n - 1;
    while (i >= 0 && chosen[i] + 1 == inst.primitive_count(i)) chosen[i--] = 0;
    if (i < 0) break;
    ++chosen[i];
  }
  return visited;
}

}  // namespace sata
