#pragma once

#include <string>
#include <vector>

#include "sata/core.hpp"
#include "sata/netsim.hpp"

namespace sata {

enum class TieBreak {
  Lowest,       // lowest primitive index among tied candidates
  Adversarial,  // highest primitive index among tied candidates
};

struct GreedyStep {
  int robot;
  int chosen_primitive;
  std::vector<double> w_prime;  // candidate scores over the robot's primitives
  std::vector<double> w_after;  // per-target quality vector after the pick
};

struct GreedyTrace {
  std::vector<int> order;
  std::vector<GreedyStep> steps;
  int rounds_used = 0;
};

struct GreedyResult {
  Assignment assignment;
  GreedyTrace trace;
};

// Sequential total-quality greedy: each robot in `order` picks the primitive
// maximizing sum_j max(w_j, c), updates w, and targets are finally owned by
// the robot whose pick covers them best. `order` must be a permutation.
GreedyResult greedy_wta(const Instance& inst, const std::vector<int>& order);

// Myopic min-over-targets greedy. Exists to exhibit the failure mode of
// greedily chasing the bottleneck objective; the adversarial tie-break picks
// the worst deterministic option among tied scores.
Assignment greedy_bottleneck(const Instance& inst, const std::vector<int>& order,
                             TieBreak tie_break);

struct DistributedGreedyResult {
  Assignment assignment;
  int rounds = 0;
  RoundLog log;
  GreedyTrace trace;
};

// greedy_wta executed over the synchronous network: components run
// concurrently, the robot with the k-th smallest id in its component selects
// and broadcasts its quality vector in round k. Total rounds equal the size
// of the largest component; the assignment matches the centralized run.
DistributedGreedyResult greedy_distributed(const Instance& inst);

std::string trace_to_json_string(const GreedyTrace& trace);

std::vector<int> ascending_order(int robot_count);

}  // namespace sata
