#include "sata/local.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <map>
#include <stdexcept>

namespace sata {

namespace {

void check_params(const LocalParams& params) {
  if (params.h < 0) throw std::invalid_argument("local solver: h must be >= 0");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("local solver: epsilon must be > 0");
}

using CoverageTable = std::map<int, std::vector<std::vector<TargetWeight>>>;

// Fixed-width little-endian framing of a robot->primitive-coverage table.
std::string pack_table(const CoverageTable& table) {
  std::string out;
  auto put_i32 = [&out](int v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
  };
  auto put_f64 = [&out](double v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
  };
  put_i32(static_cast<int>(table.size()));
  for (const auto& [robot, prims] : table) {
    put_i32(robot);
    put_i32(static_cast<int>(prims.size()));
    for (const auto& edges : prims) {
      put_i32(static_cast<int>(edges.size()));
      for (const TargetWeight& tw : edges) {
        put_i32(tw.target);
        put_f64(tw.weight);
      }
    }
  }
  return out;
}

CoverageTable unpack_table(const std::string& payload) {
  CoverageTable table;
  std::size_t pos = 0;
  auto get_i32 = [&](int& v) {
    std::memcpy(&v, payload.data() + pos, 4);
    pos += 4;
  };
  auto get_f64 = [&](double& v) {
    std::memcpy(&v, payload.data() + pos, 8);
    pos += 8;
  };
  int robots = 0;
  get_i32(robots);
  for (int r = 0; r < robots; ++r) {
    int robot = 0, prim_count = 0;
    get_i32(robot);
    get_i32(prim_count);
    std::vector<std::vector<TargetWeight>> prims(prim_count);
    for (auto& edges : prims) {
      int edge_count = 0;
      get_i32(edge_count);
      edges.resize(edge_count);
      for (TargetWeight& tw : edges) {
        get_i32(tw.target);
        get_f64(tw.weight);
      }
    }
    table.emplace(robot, std::move(prims));
  }
  return table;
}

class FloodNode : public Node {
 public:
  FloodNode(const Instance& inst, const CommGraph& graph, int robot, int horizon)
      : graph_(graph), robot_(robot), horizon_(horizon) {
    std::vector<std::vector<TargetWeight>> own(inst.primitive_count(robot));
    for (int m = 0; m < inst.primitive_count(robot); ++m) {
      for (const TargetWeight& tw : inst.coverage(robot, m))
        if (tw.weight > 0.0) own[m].push_back(tw);
    }
    known_.emplace(robot, std::move(own));
  }

  std::vector<Message> send(int) override {
    std::vector<Message> out;
    std::string payload = pack_table(known_);
    for (int neighbor : graph_.neighbors(robot_))
      out.push_back({robot_, neighbor, payload});
    return out;
  }

  void receive(int round, std::span<const Message> inbox) override {
    for (const Message& msg : inbox) {
      CoverageTable incoming = unpack_table(msg.payload);
      for (auto& [robot, prims] : incoming) known_.try_emplace(robot, std::move(prims));
    }
    rounds_done_ = round;
  }

  bool done() const override { return rounds_done_ >= horizon_; }

  const CoverageTable& known() const { return known_; }

 private:
  const CommGraph& graph_;
  int robot_;
  int horizon_;
  int rounds_done_ = 0;
  CoverageTable known_;
};

}  // namespace

bool TargetRealization::all_realized() const {
  return std::all_of(realizer.begin(), realizer.end(), [](int r) { return r >= 0; });
}

GatherResult gather_views(const Instance& inst, const LocalParams& params) {
  check_params(params);
  CommGraph graph = derive_comm_graph(inst);

  std::vector<std::unique_ptr<Node>> nodes;
  nodes.reserve(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    nodes.push_back(std::make_unique<FloodNode>(inst, graph, i, params.h));

  GatherResult result;
  result.log = run_rounds(graph, nodes, params.h);
  result.rounds = result.log.rounds;

  // Global covering-primitive counts drive the boundary flags.
  std::vector<int> global_cover_count(inst.target_count(), 0);
  inst.for_each_edge([&](int, int, int j, double w) {
    if (w > 0.0) ++global_cover_count[j];
  });

  result.views.reserve(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i) {
    const auto& known = static_cast<const FloodNode*>(nodes[i].get())->known();
    LocalView view;
    view.center = i;
    view.horizon = params.h;

    std::vector<int> local_target(inst.target_count(), -1);
    std::vector<int> in_view_cover_count(inst.target_count(), 0);
    for (const auto& [robot, prims] : known) {
      view.subgraph.robots.push_back(robot);
      for (const auto& edges : prims)
        for (const TargetWeight& tw : edges) {
          if (local_target[tw.target] < 0) local_target[tw.target] = 0;
          ++in_view_cover_count[tw.target];
        }
    }
    for (int j = 0; j < inst.target_count(); ++j) {
      if (local_target[j] == 0) {
        local_target[j] = static_cast<int>(view.subgraph.targets.size());
        view.subgraph.targets.push_back(j);
        view.boundary_flags.push_back(in_view_cover_count[j] < global_cover_count[j]);
      }
    }
    for (const auto& [robot, prims] : known) {
      std::vector<std::vector<TargetWeight>> local_prims(prims.size());
      for (std::size_t m = 0; m < prims.size(); ++m)
        for (const TargetWeight& tw : prims[m])
          local_prims[m].push_back({local_target[tw.target], tw.weight});
      view.subgraph.coverage.push_back(std::move(local_prims));
    }
    result.views.push_back(std::move(view));
  }
  return result;
}

LocalSolveResult solve_local(const Instance& inst, const LocalParams& params) {
  GatherResult gathered = gather_views(inst, params);

  LocalSolveResult result;
  result.rounds = gathered.rounds;
  result.log = std::move(gathered.log);

  result.solution.x.resize(inst.robot_count());
  for (int i = 0; i < inst.robot_count(); ++i)
    result.solution.x[i].assign(inst.primitive_count(i), 0.0);

  for (LocalView& view : gathered.views) {
    if (!view.subgraph.targets.empty()) {
      LpOptions options;
      options.primitive_cap = std::max(options.primitive_cap, inst.total_primitives());
      FractionalSolution view_solution = solve_maxmin_lp(view.subgraph, options);
      auto self = std::find(view.subgraph.robots.begin(), view.subgraph.robots.end(), view.center);
      std::size_t self_index = self - view.subgraph.robots.begin();
      result.solution.x[view.center] = view_solution.x[self_index];
    }
    // A view with no observable targets leaves the robot's mass at zero;
    // rounding later resolves it to primitive 1.
  }

  BottleneckValue global = eval_bottleneck(inst, result.solution);
  result.solution.w = global.vacuous ? 0.0 : global.value;
  result.views = std::move(gathered.views);
  return result;
}

Assignment round_solution(const Instance& inst, const FractionalSolution& frac) {
  ValidationReport shape = validate_fractional(inst, frac);
  if (!shape.ok()) throw std::invalid_argument("round_solution: " + shape.joined());

  Assignment assignment;
  assignment.chosen_primitive.assign(inst.robot_count(), 0);
  for (int i = 0; i < inst.robot_count(); ++i) {
    auto best = std::max_element(frac.x[i].begin(), frac.x[i].end());
    assignment.chosen_primitive[i] =
        (*best > 1e-12) ? static_cast<int>(best - frac.x[i].begin()) : 0;
  }
  return assignment;
}

TargetRealization realize_targets(const Instance& inst) {
  TargetRealization realization;
  realization.realizer.assign(inst.target_count(), -1);
  inst.for_each_edge([&](int i, int, int j, double w) {
    if (w > 0.0 && (realization.realizer[j] < 0 || i < realization.realizer[j]))
      realization.realizer[j] = i;
  });
  return realization;
}

InstanceDegrees instance_degrees(const Instance& inst) {
  InstanceDegrees degrees;
  for (int i = 0; i < inst.robot_count(); ++i)
    degrees.delta_r = std::max(degrees.delta_r, inst.primitive_count(i));
  std::vector<int> cover_count(inst.target_count(), 0);
  inst.for_each_edge([&](int, int, int j, double w) {
    if (w > 0.0) ++cover_count[j];
  });
  for (int c : cover_count) degrees.delta_t = std::max(degrees.delta_t, c);
  return degrees;
}

double approximation_ratio_bound(const LocalParams& params, const InstanceDegrees& degrees) {
  if (params.h == 0) return std::numeric_limits<double>::infinity();
  double delta_t_term = degrees.delta_t > 0 ? 1.0 - 1.0 / degrees.delta_t : 0.0;
  return degrees.delta_r * (1.0 + params.epsilon) * (1.0 + 1.0 / params.h) * delta_t_term;
}

}  // namespace sata
