#pragma once

#include <cstdint>
#include <vector>

#include "sata/core.hpp"

namespace sata {

// A max-min coverage LP restricted to a subgraph: maximize w subject to one
// simplex constraint per robot and one coverage >= w constraint per target.
// Robot and target entries carry the originating global ids; coverage lists
// are indexed by local target position.
struct MaxMinLP {
  std::vector<int> robots;   // global robot ids, ascending
  std::vector<int> targets;  // global target ids, ascending
  std::vector<std::vector<std::vector<TargetWeight>>> coverage;  // [robot][primitive][edge]

  int total_primitives() const;
};

// Full-instance problem over the targets that have at least one covering
// primitive (the kernel rejects uncoverable targets; Eq-level semantics for
// instances containing them live in the callers).
MaxMinLP make_full_lp(const Instance& inst);

// Problem restricted to a robot subset and the targets their primitives cover.
MaxMinLP make_sub_lp(const Instance& inst, const std::vector<int>& robot_subset);

// Problem where each robot keeps only its chosen primitive.
MaxMinLP make_restricted_lp(const Instance& inst, const std::vector<int>& chosen_primitive);

struct LpOptions {
  int primitive_cap = 200;
  double dynamic_range_cap = 1e12;  // max/min positive weight ratio
};

// Optimal (x, w) of the max-min LP by dense two-phase simplex with Bland's
// rule. x is indexed by local robot position. Additive accuracy in w is well
// below 1e-8 at the supported sizes.
FractionalSolution solve_maxmin_lp(const MaxMinLP& problem, const LpOptions& options = {});

struct Lemma1Report {
  double ilp_via_lp = 0.0;  // best over integral choices, inner value from the simplex
  double ilp_direct = 0.0;  // best over integral choices, inner value evaluated directly
  double lp_upper = 0.0;    // relaxed optimum
  std::uint64_t enumerated = 0;
  bool pass = false;
};

// Cross-checks the two routes to the integer-constrained max-min optimum:
// for every joint choice the simplex on the restricted problem must agree
// with the direct min-over-targets evaluation (tolerance 1e-9), and the
// relaxed optimum must dominate.
Lemma1Report check_lemma1_equivalence(const Instance& inst, std::uint64_t enumeration_cap = 1000000);

}  // namespace sata
