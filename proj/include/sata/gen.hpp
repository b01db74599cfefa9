#pragma once

#include <cstdint>
#include <string>

#include "sata/core.hpp"

namespace sata {

enum class WeightMode { Binary, Uniform };

struct GenConfig {
  int robot_count = 2;
  int primitives_per_robot = 2;
  int target_count = 4;
  double phi_percent = 25.0;  // requested coverage density, in (0, 100]
  WeightMode weight_mode = WeightMode::Binary;
  std::uint64_t seed = 0;
};

// Seeded random tripartite instance. Construction order: one random target
// edge per primitive, one random primitive edge per target, random edges
// until the induced comm graph is connected, then random fill edges until the
// measured density first reaches phi_percent. Small instances may exceed a low
// phi_percent after the structural passes alone; the measured density of the
// output is authoritative. Duplicate edges are never created.
Instance generate(const GenConfig& config);

// Coverage density: 100 * edge_count / (total primitives * target count).
// Throws on a zero target count.
double measure_phi(const Instance& inst);

WeightMode weight_mode_from_string(const std::string& name);
std::string to_string(WeightMode mode);

}  // namespace sata
