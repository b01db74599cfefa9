#include "sata/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sata/enumerate.hpp"

namespace sata {

namespace {

constexpr double kPivotTol = 1e-9;

// Dense tableau simplex, minimization over Az = b, z >= 0, b >= 0.
// Entering/leaving choices follow Bland's rule throughout, so no cycling.
class Simplex {
 public:
  Simplex(std::vector<std::vector<double>> a, std::vector<double> b, int structural_cols)
      : rows_(static_cast<int>(a.size())),
        structural_(structural_cols),
        tableau_(std::move(a)),
        rhs_(std::move(b)),
        basis_(rows_) {
    // Append the identity of artificial columns; they form the initial basis.
    for (int r = 0; r < rows_; ++r) {
      tableau_[r].resize(structural_ + rows_, 0.0);
      tableau_[r][structural_ + r] = 1.0;
      basis_[r] = structural_ + r;
    }
  }

  // Returns the phase-2 objective value for minimization costs `cost`
  // (length structural_; artificials are barred from re-entering).
  double solve(const std::vector<double>& cost) {
    std::vector<double> phase1(structural_ + rows_, 0.0);
    for (int r = 0; r < rows_; ++r) phase1[structural_ + r] = 1.0;
    run(phase1, /*allow_artificials=*/true);
    if (objective(phase1) > 1e-7) throw std::logic_error("simplex: infeasible system");

    std::vector<double> phase2(structural_ + rows_, 0.0);
    std::copy(cost.begin(), cost.end(), phase2.begin());
    run(phase2, /*allow_artificials=*/false);
    return objective(phase2);
  }

  double value_of(int column) const {
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] == column) return rhs_[r];
    return 0.0;
  }

 private:
  double objective(const std::vector<double>& cost) const {
    double total = 0.0;
    for (int r = 0; r < rows_; ++r) total += cost[basis_[r]] * rhs_[r];
    return total;
  }

  void run(const std::vector<double>& cost, bool allow_artificials) {
    const int cols = structural_ + rows_;
    std::vector<bool> in_basis(cols, false);
    for (int b : basis_) in_basis[b] = true;

    while (true) {
      // Reduced costs from scratch each iteration: sizes here are tiny and
      // this keeps the pivot loop free of objective-row bookkeeping.
      int entering = -1;
      const int limit = allow_artificials ? cols : structural_;
      for (int j = 0; j < limit && entering < 0; ++j) {
        if (in_basis[j]) continue;
        double rc = cost[j];
        for (int r = 0; r < rows_; ++r) rc -= cost[basis_[r]] * tableau_[r][j];
        if (rc < -kPivotTol) entering = j;  // Bland: first improving column
      }
      if (entering < 0) return;

      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r)
        if (tableau_[r][entering] > kPivotTol)
          best_ratio = std::min(best_ratio, rhs_[r] / tableau_[r][entering]);
      if (!std::isfinite(best_ratio)) throw std::logic_error("simplex: unbounded objective");

      // Bland again: among (near-)minimal ratios, leave the smallest basis
      // variable. Degenerate ties are exact zeros, so cycling is excluded.
      int leaving_row = -1;
      for (int r = 0; r < rows_; ++r) {
        if (tableau_[r][entering] <= kPivotTol) continue;
        if (rhs_[r] / tableau_[r][entering] > best_ratio + kPivotTol) continue;
        if (leaving_row < 0 || basis_[r] < basis_[leaving_row]) leaving_row = r;
      }

      pivot(leaving_row, entering, in_basis);
    }
  }

  void pivot(int row, int col, std::vector<bool>& in_basis) {
    double scale = tableau_[row][col];
    for (double& v : tableau_[row]) v /= scale;
    rhs_[row] /= scale;
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      double factor = tableau_[r][col];
      if (factor == 0.0) continue;
      for (int j = 0; j < static_cast<int>(tableau_[r].size()); ++j)
        tableau_[r][j] -= factor * tableau_[row][j];
      rhs_[r] -= factor * rhs_[row];
      if (rhs_[r] < 0.0 && rhs_[r] > -1e-11) rhs_[r] = 0.0;
    }
    in_basis[basis_[row]] = false;
    in_basis[col] = true;
    basis_[row] = col;
  }

  int rows_;
  int structural_;
  std::vector<std::vector<double>> tableau_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
};

void check_problem(const MaxMinLP& problem, const LpOptions& options) {
  if (problem.robots.size() != problem.coverage.size())
    throw std::invalid_argument("max-min LP: robots/coverage size mismatch");
  if (problem.targets.empty())
    throw std::invalid_argument("max-min LP: at least one target required");
  if (problem.total_primitives() > options.primitive_cap)
    throw std::invalid_argument("max-min LP: primitive count " +
                                std::to_string(problem.total_primitives()) + " exceeds cap " +
                                std::to_string(options.primitive_cap));

  double min_weight = std::numeric_limits<double>::infinity();
  double max_weight = 0.0;
  std::vector<bool> covered(problem.targets.size(), false);
  for (const auto& prims : problem.coverage) {
    for (const auto& edges : prims) {
      for (const TargetWeight& tw : edges) {
        if (tw.target < 0 || tw.target >= static_cast<int>(problem.targets.size()))
          throw std::invalid_argument("max-min LP: local target index out of range");
        if (tw.weight <= 0.0) continue;
        covered[tw.target] = true;
        min_weight = std::min(min_weight, tw.weight);
        max_weight = std::max(max_weight, tw.weight);
      }
    }
  }
  for (std::size_t j = 0; j < covered.size(); ++j)
    if (!covered[j])
      throw std::invalid_argument("max-min LP: target " + std::to_string(problem.targets[j] + 1) +
                                  " has no covering primitive; callers must filter");
  if (max_weight > 0.0 && max_weight / min_weight > options.dynamic_range_cap)
    throw std::invalid_argument("max-min LP: weight dynamic range exceeds cap");
}

}  // namespace

int MaxMinLP::total_primitives() const {
  int total = 0;
  for (const auto& prims : coverage) total += static_cast<int>(prims.size());
  return total;
}

MaxMinLP make_sub_lp(const Instance& inst, const std::vector<int>& robot_subset) {
  MaxMinLP problem;
  problem.robots = robot_subset;
  std::sort(problem.robots.begin(), problem.robots.end());
  problem.robots.erase(std::unique(problem.robots.begin(), problem.robots.end()),
                       problem.robots.end());

  std::vector<int> local_target(inst.target_count(), -1);
  for (int i : problem.robots)
    for (int m = 0; m < inst.primitive_count(i); ++m)
      for (const TargetWeight& tw : inst.coverage(i, m))
        if (tw.weight > 0.0) local_target[tw.target] = 0;
  for (int j = 0; j < inst.target_count(); ++j) {
    if (local_target[j] == 0) {
      local_target[j] = static_cast<int>(problem.targets.size());
      problem.targets.push_back(j);
    }
  }

  problem.coverage.reserve(problem.robots.size());
  for (int i : problem.robots) {
    std::vector<std::vector<TargetWeight>> prims(inst.primitive_count(i));
    for (int m = 0; m < inst.primitive_count(i); ++m)
      for (const TargetWeight& tw : inst.coverage(i, m))
        if (tw.weight > 0.0) prims[m].push_back({local_target[tw.target], tw.weight});
    problem.coverage.push_back(std::move(prims));
  }
  return problem;
}

MaxMinLP make_full_lp(const Instance& inst) {
  std::vector<int> all(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i) all[i] = i;
  return make_sub_lp(inst, all);
}

MaxMinLP make_restricted_lp(const Instance& inst, const std::vector<int>& chosen_primitive) {
  Instance restricted(std::vector<int>(inst.robot_count(), 1), inst.target_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    for (const TargetWeight& tw : inst.coverage(i, chosen_primitive[i]))
      restricted.set_weight(i, 0, tw.target, tw.weight);
  return make_full_lp(restricted);
}

FractionalSolution solve_maxmin_lp(const MaxMinLP& problem, const LpOptions& options) {
  check_problem(problem, options);

  const int num_robots = static_cast<int>(problem.robots.size());
  const int num_targets = static_cast<int>(problem.targets.size());
  const int n = problem.total_primitives();

  // Column layout: x (n), w (1), robot slacks (num_robots), target surpluses
  // (num_targets). Rows: robot simplex equalities then coverage equalities.
  const int col_w = n;
  const int col_slack = n + 1;
  const int col_surplus = col_slack + num_robots;
  const int structural = col_surplus + num_targets;

  std::vector<int> first_col(num_robots + 1, 0);
  for (int a = 0; a < num_robots; ++a)
    first_col[a + 1] = first_col[a] + static_cast<int>(problem.coverage[a].size());

  std::vector<std::vector<double>> a_matrix(num_robots + num_targets,
                                            std::vector<double>(structural, 0.0));
  std::vector<double> b(num_robots + num_targets, 0.0);
  for (int a = 0; a < num_robots; ++a) {
    for (int m = 0; m < static_cast<int>(problem.coverage[a].size()); ++m)
      a_matrix[a][first_col[a] + m] = 1.0;
    a_matrix[a][col_slack + a] = 1.0;
    b[a] = 1.0;
  }
  for (int a = 0; a < num_robots; ++a)
    for (int m = 0; m < static_cast<int>(problem.coverage[a].size()); ++m)
      for (const TargetWeight& tw : problem.coverage[a][m])
        a_matrix[num_robots + tw.target][first_col[a] + m] += tw.weight;
  for (int j = 0; j < num_targets; ++j) {
    a_matrix[num_robots + j][col_w] = -1.0;
    a_matrix[num_robots + j][col_surplus + j] = -1.0;
  }

  std::vector<double> cost(structural, 0.0);
  cost[col_w] = -1.0;  // maximize w

  Simplex simplex(std::move(a_matrix), std::move(b), structural);
  simplex.solve(cost);

  FractionalSolution solution;
  solution.w = simplex.value_of(col_w);
  solution.x.resize(num_robots);
  for (int a = 0; a < num_robots; ++a) {
    solution.x[a].resize(problem.coverage[a].size());
    for (int m = 0; m < static_cast<int>(problem.coverage[a].size()); ++m)
      solution.x[a][m] = std::max(0.0, simplex.value_of(first_col[a] + m));
  }

  // Certify the optimum against the attained bottleneck of x*.
  std::vector<double> sums(num_targets, 0.0);
  for (int a = 0; a < num_robots; ++a)
    for (int m = 0; m < static_cast<int>(problem.coverage[a].size()); ++m)
      for (const TargetWeight& tw : problem.coverage[a][m])
        sums[tw.target] += tw.weight * solution.x[a][m];
  double attained = *std::min_element(sums.begin(), sums.end());
  if (std::abs(attained - solution.w) > 1e-7)
    throw std::logic_error("simplex: optimum does not match attained bottleneck");
  for (int a = 0; a < num_robots; ++a) {
    double mass = 0.0;
    for (double v : solution.x[a]) mass += v;
    if (mass > 1.0 + 1e-8) throw std::logic_error("simplex: simplex constraint violated");
  }
  return solution;
}

Lemma1Report check_lemma1_equivalence(const Instance& inst, std::uint64_t enumeration_cap) {
  if (count_choices(inst) > enumeration_cap)
    throw std::invalid_argument("lemma1 check: enumeration cap exceeded");

  Lemma1Report report;
  double best_lp_route = 0.0;
  double best_direct = 0.0;
  report.enumerated = enumerate_choices(inst, [&](const std::vector<int>& chosen) {
    BottleneckValue direct = eval_bottleneck(inst, Assignment{chosen, std::nullopt});
    double direct_value = direct.vacuous ? 0.0 : direct.value;
    best_direct = std::max(best_direct, direct_value);

    // The inner maximum of w for a fixed choice, via the simplex route. A
    // target with no coverage under the choice pins w to 0 without a solve.
    double lp_route = 0.0;
    bool all_covered = inst.target_count() > 0;
    MaxMinLP restricted = make_restricted_lp(inst, chosen);
    if (static_cast<int>(restricted.targets.size()) != inst.target_count()) all_covered = false;
    if (all_covered) lp_route = solve_maxmin_lp(restricted).w;
    best_lp_route = std::max(best_lp_route, lp_route);
  });

  report.ilp_via_lp = best_lp_route;
  report.ilp_direct = best_direct;
  MaxMinLP full = make_full_lp(inst);
  report.lp_upper =
      (static_cast<int>(full.targets.size()) == inst.target_count() && !full.targets.empty())
          ? solve_maxmin_lp(full).w
          : 0.0;
  report.pass = std::abs(report.ilp_via_lp - report.ilp_direct) <= 1e-9 &&
                report.lp_upper >= report.ilp_direct - 1e-9;
  return report;
}

}  // namespace sata
