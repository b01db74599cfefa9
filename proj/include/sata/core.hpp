#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sata {

// One sparse sensing edge: a primitive observes `target` with quality `weight`.
// Targets absent from a primitive's coverage list have weight 0 (not observable).
struct TargetWeight {
  int target;
  double weight;
};

// Tripartite weighted sensing graph: robots, per-robot motion primitives and
// targets. All indices are 0-based internally; file formats are 1-based.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<int> primitives_per_robot, int target_count);

  int robot_count() const { return static_cast<int>(coverage_.size()); }
  int target_count() const { return target_count_; }
  int primitive_count(int robot) const { return static_cast<int>(coverage_[robot].size()); }
  int total_primitives() const;

  // Stored weight, or 0 when the (robot, primitive, target) edge is absent.
  double weight(int robot, int primitive, int target) const;

  // Setting a zero weight removes the edge. Out-of-range targets and negative
  // weights are storable so that validate_instance() can report them.
  void set_weight(int robot, int primitive, int target, double w);

  // Sparse coverage list of one primitive, sorted by target.
  const std::vector<TargetWeight>& coverage(int robot, int primitive) const {
    return coverage_[robot][primitive];
  }

  // Count of stored (strictly positive) sensing edges.
  int edge_count() const;

  template <typename F>
  void for_each_edge(F&& fn) const {
    for (int i = 0; i < robot_count(); ++i)
      for (int m = 0; m < primitive_count(i); ++m)
        for (const TargetWeight& tw : coverage_[i][m]) fn(i, m, tw.target, tw.weight);
  }

 private:
  std::vector<std::vector<std::vector<TargetWeight>>> coverage_;
  int target_count_ = 0;
};

// Integral selection: one primitive per robot, plus the optional one-robot-per-
// target ownership used by the total-quality objective. owner -1 = unowned.
struct Assignment {
  std::vector<int> chosen_primitive;
  std::optional<std::vector<int>> target_owner;
};

// Relaxed selection: x[robot][primitive] in [0,1] with per-robot sum <= 1,
// and the bottleneck value w attained by x.
struct FractionalSolution {
  std::vector<std::vector<double>> x;
  double w = 0.0;
};

// Robot-to-robot edges: two robots are connected iff some target is observable
// by a primitive of each.
class CommGraph {
 public:
  CommGraph() = default;
  explicit CommGraph(int robot_count) : adj_(robot_count) {}

  int robot_count() const { return static_cast<int>(adj_.size()); }
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int edge_count() const;

 private:
  std::vector<std::vector<int>> adj_;  // sorted, symmetric, no self-loops
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
  std::string joined() const;
};

ValidationReport validate_instance(const Instance& inst);

// Checks FractionalSolution shape and simplex constraints against inst
// (per-robot sum <= 1 + 1e-9, x >= -1e-12).
ValidationReport validate_fractional(const Instance& inst, const FractionalSolution& frac);

CommGraph derive_comm_graph(const Instance& inst);

// Max over connected components of the component's diameter in hops.
int comm_graph_diameter(const CommGraph& graph);

struct BottleneckValue {
  double value = 0.0;
  bool vacuous = false;  // no targets: min over empty set, value is +infinity

  static BottleneckValue vacuous_value() {
    return {std::numeric_limits<double>::infinity(), true};
  }
};

// min over targets of the summed coverage attained by the selection.
BottleneckValue eval_bottleneck(const Instance& inst, const Assignment& sol);
BottleneckValue eval_bottleneck(const Instance& inst, const FractionalSolution& sol);

// Total quality collected by target owners; requires target_owner.
double eval_wta(const Instance& inst, const Assignment& sol);

struct InducedWta {
  double value = 0.0;
  std::vector<int> target_owner;  // -1 for targets nobody covers
};

// Total-quality value of a primitive selection with the induced ownership:
// each target goes to the robot whose chosen primitive covers it best
// (ties to the lowest robot id); uncovered targets stay unowned.
InducedWta eval_wta_from_x(const Instance& inst, const std::vector<int>& chosen_primitive);

}  // namespace sata
