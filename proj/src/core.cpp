#include "sata/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sata {

Instance::Instance(std::vector<int> primitives_per_robot, int target_count)
    : target_count_(target_count) {
  if (target_count < 0) throw std::invalid_argument("Instance: negative target count");
  coverage_.reserve(primitives_per_robot.size());
  for (int p : primitives_per_robot) {
    if (p <= 0) throw std::invalid_argument("Instance: robot must have at least one primitive");
    coverage_.emplace_back(p);
  }
}

int Instance::total_primitives() const {
  int total = 0;
  for (const auto& prims : coverage_) total += static_cast<int>(prims.size());
  return total;
}

double Instance::weight(int robot, int primitive, int target) const {
  const auto& row = coverage_[robot][primitive];
  auto it = std::lower_bound(row.begin(), row.end(), target,
                             [](const TargetWeight& tw, int t) { return tw.target < t; });
  return (it != row.end() && it->target == target) ? it->weight : 0.0;
}

void Instance::set_weight(int robot, int primitive, int target, double w) {
  auto& row = coverage_[robot][primitive];
  auto it = std::lower_bound(row.begin(), row.end(), target,
                             [](const TargetWeight& tw, int t) { return tw.target < t; });
  if (it != row.end() && it->target == target) {
    if (w == 0.0)
      row.erase(it);
    else
      it->weight = w;
  } else if (w != 0.0) {
    row.insert(it, TargetWeight{target, w});
  }
}

int Instance::edge_count() const {
  int count = 0;
  for_each_edge([&](int, int, int, double w) {
    if (w > 0.0) ++count;
  });
  return count;
}

void CommGraph::add_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("CommGraph: self-loop");
  auto insert_sorted = [](std::vector<int>& list, int v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
  };
  insert_sorted(adj_[a], b);
  insert_sorted(adj_[b], a);
}

bool CommGraph::has_edge(int a, int b) const {
  const auto& list = adj_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

int CommGraph::edge_count() const {
  int degree_sum = 0;
  for (const auto& list : adj_) degree_sum += static_cast<int>(list.size());
  return degree_sum / 2;
}

std::string ValidationReport::joined() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i > 0) out << "; ";
    out << errors[i];
  }
  return out.str();
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  inst.for_each_edge([&](int i, int m, int j, double w) {
    std::ostringstream edge;
    edge << "edge (robot " << i + 1 << ", primitive " << m + 1 << ", target " << j + 1 << ")";
    if (!(w >= 0.0) || !std::isfinite(w)) {
      report.errors.push_back(edge.str() + ": weight " + std::to_string(w) +
                              " must be a finite nonnegative value");
    }
    if (j < 0 || j >= inst.target_count()) {
      report.errors.push_back(edge.str() + ": target index out of range (target count " +
                              std::to_string(inst.target_count()) + ")");
    }
  });
  return report;
}

ValidationReport validate_fractional(const Instance& inst, const FractionalSolution& frac) {
  ValidationReport report;
  if (static_cast<int>(frac.x.size()) != inst.robot_count()) {
    report.errors.push_back("x has " + std::to_string(frac.x.size()) + " robot rows, instance has " +
                            std::to_string(inst.robot_count()));
    return report;
  }
  for (int i = 0; i < inst.robot_count(); ++i) {
    if (static_cast<int>(frac.x[i].size()) != inst.primitive_count(i)) {
      report.errors.push_back("robot " + std::to_string(i + 1) + ": x row size mismatch");
      continue;
    }
    double sum = 0.0;
    for (double v : frac.x[i]) {
      if (v < -1e-12)
        report.errors.push_back("robot " + std::to_string(i + 1) + ": negative x value " +
                                std::to_string(v));
      sum += v;
    }
    if (sum > 1.0 + 1e-9)
      report.errors.push_back("robot " + std::to_string(i + 1) + ": primitive mass " +
                              std::to_string(sum) + " exceeds 1");
  }
  return report;
}

CommGraph derive_comm_graph(const Instance& inst) {
  CommGraph graph(inst.robot_count());
  // Robots covering a common target are pairwise connected.
  std::vector<std::vector<int>> robots_by_target(inst.target_count());
  inst.for_each_edge([&](int i, int, int j, double w) {
    if (w <= 0.0 || j < 0 || j >= inst.target_count()) return;
    auto& list = robots_by_target[j];
    if (list.empty() || list.back() != i) list.push_back(i);
  });
  for (auto& list : robots_by_target) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) graph.add_edge(list[a], list[b]);
  }
  return graph;
}

int comm_graph_diameter(const CommGraph& graph) {
  const int n = graph.robot_count();
  int diameter = 0;
  std::vector<int> dist(n);
  for (int start = 0; start < n; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[v]);
      for (int u : graph.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  return diameter;
}

namespace {

void check_assignment_shape(const Instance& inst, const Assignment& sol) {
  if (static_cast<int>(sol.chosen_primitive.size()) != inst.robot_count())
    throw std::invalid_argument("assignment: chosen_primitive size mismatch");
  for (int i = 0; i < inst.robot_count(); ++i) {
    int m = sol.chosen_primitive[i];
    if (m < 0 || m >= inst.primitive_count(i))
      throw std::invalid_argument("assignment: primitive index out of range for robot " +
                                  std::to_string(i + 1));
  }
}

std::vector<double> coverage_sums(const Instance& inst, const std::vector<int>& chosen) {
  std::vector<double> sums(inst.target_count(), 0.0);
  for (int i = 0; i < inst.robot_count(); ++i)
    for (const TargetWeight& tw : inst.coverage(i, chosen[i])) sums[tw.target] += tw.weight;
  return sums;
}

}  // namespace

BottleneckValue eval_bottleneck(const Instance& inst, const Assignment& sol) {
  check_assignment_shape(inst, sol);
  if (inst.target_count() == 0) return BottleneckValue::vacuous_value();
  std::vector<double> sums = coverage_sums(inst, sol.chosen_primitive);
  return {*std::min_element(sums.begin(), sums.end()), false};
}

BottleneckValue eval_bottleneck(const Instance& inst, const FractionalSolution& sol) {
  ValidationReport shape = validate_fractional(inst, sol);
  if (!shape.ok()) throw std::invalid_argument("fractional solution: " + shape.joined());
  if (inst.target_count() == 0) return BottleneckValue::vacuous_value();
  std::vector<double> sums(inst.target_count(), 0.0);
  inst.for_each_edge([&](int i, int m, int j, double w) { sums[j] += w * sol.x[i][m]; });
  return {*std::min_element(sums.begin(), sums.end()), false};
}

double eval_wta(const Instance& inst, const Assignment& sol) {
  check_assignment_shape(inst, sol);
  if (!sol.target_owner)
    throw std::invalid_argument("eval_wta: assignment has no target ownership");
  const auto& owner = *sol.target_owner;
  if (static_cast<int>(owner.size()) != inst.target_count())
    throw std::invalid_argument("eval_wta: target_owner size mismatch");
  double total = 0.0;
  for (int j = 0; j < inst.target_count(); ++j) {
    int i = owner[j];
    if (i < 0) continue;
    if (i >= inst.robot_count()) throw std::invalid_argument("eval_wta: owner out of range");
    total += inst.weight(i, sol.chosen_primitive[i], j);
  }
  return total;
}

InducedWta eval_wta_from_x(const Instance& inst, const std::vector<int>& chosen_primitive) {
  Assignment shape{chosen_primitive, std::nullopt};
  check_assignment_shape(inst, shape);
  InducedWta result;
  result.target_owner.assign(inst.target_count(), -1);
  std::vector<double> best(inst.target_count(), 0.0);
  for (int i = 0; i < inst.robot_count(); ++i) {
    for (const TargetWeight& tw : inst.coverage(i, chosen_primitive[i])) {
      if (tw.weight > best[tw.target]) {
        best[tw.target] = tw.weight;
        result.target_owner[tw.target] = i;
      }
    }
  }
  result.value = std::accumulate(best.begin(), best.end(), 0.0);
  return result;
}

}  // namespace sata
