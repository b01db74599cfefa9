#pragma once

#include <cstdint>

#include "sata/core.hpp"

namespace sata {

struct OracleResult {
  Assignment best;
  double optimum = 0.0;
  std::uint64_t enumerated = 0;
};

// Exact total-quality optimum by exhaustive enumeration of joint primitive
// choices (per-target ownership is induced, so enumerating x suffices).
// Ties resolve to the lexicographically smallest choice vector.
OracleResult brute_force_wta(const Instance& inst, std::uint64_t cap = 1000000);

// Exact min-over-targets optimum by the same enumeration. An optimum of 0
// means some target stays uncovered under every joint choice.
OracleResult brute_force_bottleneck(const Instance& inst, std::uint64_t cap = 1000000);

// Centralized relaxation of the min-over-targets problem on the full
// instance. Instances containing an uncoverable target get w = 0 with zero
// mass everywhere.
FractionalSolution centralized_lp(const Instance& inst);

// Centralized relaxation followed by per-robot argmax rounding.
Assignment lp_round_baseline(const Instance& inst);

// Uniform independent primitive choice per robot with induced ownership.
Assignment random_baseline(const Instance& inst, std::uint64_t seed);

}  // namespace sata
