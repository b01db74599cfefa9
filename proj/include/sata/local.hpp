#pragma once

#include <vector>

#include "sata/core.hpp"
#include "sata/lp.hpp"
#include "sata/netsim.hpp"

namespace sata {

struct LocalParams {
  int h = 2;               // neighborhood radius in comm hops
  double epsilon = 0.1;    // accepted for reporting/compatibility; must be > 0
};

// What one robot knows after h flooding rounds: the robots within h hops,
// their primitives, and every target those primitives cover. boundary_flags
// marks view targets that also have covering primitives outside the view
// (their in-view coverage understates the global instance).
struct LocalView {
  int center = -1;
  int horizon = 0;
  MaxMinLP subgraph;
  std::vector<bool> boundary_flags;  // aligned with subgraph.targets
};

struct GatherResult {
  std::vector<LocalView> views;  // one per robot
  int rounds = 0;
  RoundLog log;
};

// Floods primitive-coverage tables for exactly params.h synchronous rounds.
GatherResult gather_views(const Instance& inst, const LocalParams& params);

struct LocalSolveResult {
  FractionalSolution solution;
  int rounds = 0;
  RoundLog log;
  std::vector<LocalView> views;
};

// Each robot solves the max-min LP of its h-hop view (out-of-view coverage
// counts as zero) and adopts the x values of its own primitives. Rounds used
// equal h regardless of instance size.
LocalSolveResult solve_local(const Instance& inst, const LocalParams& params);

// Integral selection from a fractional one: per-robot argmax (ties to the
// lowest index); a robot with no fractional mass takes primitive 1.
Assignment round_solution(const Instance& inst, const FractionalSolution& frac);

struct TargetRealization {
  std::vector<int> realizer;  // per target; -1 = no covering primitive exists
  bool all_realized() const;
};

// Deterministic target-node realization: lowest robot id with a covering
// primitive.
TargetRealization realize_targets(const Instance& inst);

struct InstanceDegrees {
  int delta_r = 0;  // max primitives per robot
  int delta_t = 0;  // max covering primitives per target
};

InstanceDegrees instance_degrees(const Instance& inst);

// Reported approximation-ratio expression for a given horizon/epsilon and
// instance degrees; +infinity when h == 0.
double approximation_ratio_bound(const LocalParams& params, const InstanceDegrees& degrees);

}  // namespace sata
