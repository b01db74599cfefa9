#include "sata/gen.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sata/netsim.hpp"
#include "sata/rng.hpp"

namespace sata {

namespace {

void check_config(const GenConfig& config) {
  if (config.robot_count < 1 || config.primitives_per_robot < 1 || config.target_count < 1)
    throw std::invalid_argument("generator: counts must be positive");
  if (!(config.phi_percent > 0.0) || config.phi_percent > 100.0)
    throw std::invalid_argument("generator: phi_percent must lie in (0, 100]");
}

double sample_weight(const GenConfig& config, Rng& rng) {
  return config.weight_mode == WeightMode::Binary ? 1.0 : rng.next_open_closed();
}

struct PrimitiveRef {
  int robot;
  int primitive;
};

}  // namespace

Instance generate(const GenConfig& config) {
  check_config(config);
  Rng rng = Rng(config.seed).split(0x67656e);

  Instance inst(std::vector<int>(config.robot_count, config.primitives_per_robot),
                config.target_count);
  std::vector<PrimitiveRef> primitives;
  for (int i = 0; i < config.robot_count; ++i)
    for (int m = 0; m < config.primitives_per_robot; ++m) primitives.push_back({i, m});
  const int total_primitives = static_cast<int>(primitives.size());

  // One target per primitive; distinct primitives make distinct edges.
  for (const PrimitiveRef& p : primitives)
    inst.set_weight(p.robot, p.primitive, rng.next_int(config.target_count),
                    sample_weight(config, rng));

  // One new primitive edge per target, resampling past existing pairs. A
  // target already adjacent to every primitive has nothing left to add.
  for (int j = 0; j < config.target_count; ++j) {
    bool added = false;
    for (int attempts = 0; attempts < 64 && !added; ++attempts) {
      const PrimitiveRef& p = primitives[rng.next_int(total_primitives)];
      if (inst.weight(p.robot, p.primitive, j) == 0.0) {
        inst.set_weight(p.robot, p.primitive, j, sample_weight(config, rng));
        added = true;
      }
    }
    if (!added) {
      for (const PrimitiveRef& p : primitives) {
        if (inst.weight(p.robot, p.primitive, j) == 0.0) {
          inst.set_weight(p.robot, p.primitive, j, sample_weight(config, rng));
          break;
        }
      }
    }
  }

  // Join comm components: an edge from a primitive in one component to a
  // target covered by another merges them.
  while (true) {
    std::vector<std::vector<int>> comps = components(derive_comm_graph(inst));
    if (comps.size() <= 1) break;

    std::vector<int> component_of(config.robot_count, -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int robot : comps[c]) component_of[robot] = static_cast<int>(c);

    std::vector<int> anchor_targets;  // targets covered by the first component
    for (int j = 0; j < config.target_count; ++j)
      for (int robot : comps[0]) {
        bool covers = false;
        for (int m = 0; m < inst.primitive_count(robot) && !covers; ++m)
          covers = inst.weight(robot, m, j) > 0.0;
        if (covers) {
          anchor_targets.push_back(j);
          break;
        }
      }

    std::vector<PrimitiveRef> outside;
    for (const PrimitiveRef& p : primitives)
      if (component_of[p.robot] != 0) outside.push_back(p);

    int target = anchor_targets[rng.next_int(static_cast<int>(anchor_targets.size()))];
    const PrimitiveRef& p = outside[rng.next_int(static_cast<int>(outside.size()))];
    inst.set_weight(p.robot, p.primitive, target, sample_weight(config, rng));
  }

  // Fill with fresh random edges until the density first crosses the request.
  if (measure_phi(inst) < config.phi_percent) {
    std::vector<std::pair<PrimitiveRef, int>> absent;
    for (const PrimitiveRef& p : primitives)
      for (int j = 0; j < config.target_count; ++j)
        if (inst.weight(p.robot, p.primitive, j) == 0.0) absent.push_back({p, j});
    // Partial Fisher-Yates: draw without replacement in seeded order.
    std::size_t next = 0;
    while (measure_phi(inst) < config.phi_percent && next < absent.size()) {
      std::size_t pick = next + rng.next_int(static_cast<int>(absent.size() - next));
      std::swap(absent[next], absent[pick]);
      const auto& [p, j] = absent[next++];
      inst.set_weight(p.robot, p.primitive, j, sample_weight(config, rng));
    }
  }
  return inst;
}

double measure_phi(const Instance& inst) {
  if (inst.target_count() == 0)
    throw std::invalid_argument("measure_phi: zero targets");
  return 100.0 * inst.edge_count() /
         (static_cast<double>(inst.total_primitives()) * inst.target_count());
}

WeightMode weight_mode_from_string(const std::string& name) {
  if (name == "binary") return WeightMode::Binary;
  if (name == "uniform") return WeightMode::Uniform;
  throw std::invalid_argument("unknown weight mode: " + name);
}

std::string to_string(WeightMode mode) {
  return mode == WeightMode::Binary ? "binary" : "uniform";
}

}  // namespace sata
