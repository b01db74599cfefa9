#include "sata/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sata/enumerate.hpp"
#include "sata/local.hpp"
#include "sata/lp.hpp"
#include "sata/rng.hpp"

namespace sata {

namespace {

void check_cap(const Instance& inst, std::uint64_t cap) {
  if (count_choices(inst) > cap)
    throw std::invalid_argument("oracle: joint choice count exceeds enumeration cap");
}

}  // namespace

OracleResult brute_force_wta(const Instance& inst, std::uint64_t cap) {
  check_cap(inst, cap);
  OracleResult result;
  std::vector<int> best_chosen;
  std::vector<double> per_target_best(inst.target_count());

  result.enumerated = enumerate_choices(inst, [&](const std::vector<int>& chosen) {
    std::fill(per_target_best.begin(), per_target_best.end(), 0.0);
    for (int i = 0; i < inst.robot_count(); ++i)
      for (const TargetWeight& tw : inst.coverage(i, chosen[i]))
        if (tw.weight > per_target_best[tw.target]) per_target_best[tw.target] = tw.weight;
    double value = 0.0;
    for (double v : per_target_best) value += v;
    // Lexicographic enumeration + strict improvement = smallest optimal vector.
    if (best_chosen.empty() || value > result.optimum) {
      result.optimum = value;
      best_chosen = chosen;
    }
  });

  InducedWta induced = eval_wta_from_x(inst, best_chosen);
  result.best.chosen_primitive = std::move(best_chosen);
  result.best.target_owner = std::move(induced.target_owner);
  return result;
}

OracleResult brute_force_bottleneck(const Instance& inst, std::uint64_t cap) {
  check_cap(inst, cap);
  OracleResult result;
  std::vector<int> best_chosen;
  std::vector<double> sums(inst.target_count());

  result.enumerated = enumerate_choices(inst, [&](const std::vector<int>& chosen) {
    double value;
    if (inst.target_count() == 0) {
      value = std::numeric_limits<double>::infinity();
    } else {
      std::fill(sums.begin(), sums.end(), 0.0);
      for (int i = 0; i < inst.robot_count(); ++i)
        for (const TargetWeight& tw : inst.coverage(i, chosen[i])) sums[tw.target] += tw.weight;
      value = *std::min_element(sums.begin(), sums.end());
    }
    if (best_chosen.empty() || value > result.optimum) {
      result.optimum = value;
      best_chosen = chosen;
    }
  });

  result.best.chosen_primitive = std::move(best_chosen);
  return result;
}

FractionalSolution centralized_lp(const Instance& inst) {
  FractionalSolution solution;
  solution.x.resize(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    solution.x[i].assign(inst.primitive_count(i), 0.0);
  solution.w = 0.0;

  if (inst.target_count() == 0) return solution;
  MaxMinLP full = make_full_lp(inst);
  if (static_cast<int>(full.targets.size()) != inst.target_count())
    return solution;  // an uncoverable target pins w to 0

  LpOptions options;
  options.primitive_cap = std::max(options.primitive_cap, inst.total_primitives());
  FractionalSolution lp = solve_maxmin_lp(full, options);
  for (int i = 0; i < inst.robot_count(); ++i) solution.x[i] = lp.x[i];
  solution.w = lp.w;
  return solution;
}

Assignment lp_round_baseline(const Instance& inst) {
  return round_solution(inst, centralized_lp(inst));
}

Assignment random_baseline(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  Assignment assignment;
  assignment.chosen_primitive.resize(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    assignment.chosen_primitive[i] = rng.next_int(inst.primitive_count(i));
  assignment.target_owner = eval_wta_from_x(inst, assignment.chosen_primitive).target_owner;
  return assignment;
}

}  // namespace sata
