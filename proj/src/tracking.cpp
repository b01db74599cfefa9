#include "sata/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sata/greedy.hpp"
#include "sata/oracle.hpp"

namespace sata {

namespace {

constexpr double kMinDistance = 0.1;  // inverse-distance clamp
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double distance(const Pose& a, const Pose& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool inside(const SimConfig& config, double x, double y) {
  return x >= 0.0 && x <= config.arena_side && y >= 0.0 && y <= config.arena_side;
}

Pose clamped(const SimConfig& config, Pose pose) {
  pose.x = std::clamp(pose.x, 0.0, config.arena_side);
  pose.y = std::clamp(pose.y, 0.0, config.arena_side);
  return pose;
}

double quality_of(const SimConfig& config, double dist) {
  if (dist > config.sensing_range) return 0.0;
  if (config.quality == QualityMode::Count) return 1.0;
  return 1.0 / std::max(dist, kMinDistance);
}

void check_config(const SimConfig& config) {
  if (config.arena_side <= 0.0 || config.robot_step <= 0.0 || config.sensing_range <= 0.0 ||
      config.comm_range <= 0.0)
    throw std::invalid_argument("sim config: lengths must be positive");
  if (config.target_step < 0.0)
    throw std::invalid_argument("sim config: target step must be >= 0");
  if (config.turn_period < 1) throw std::invalid_argument("sim config: turn period must be >= 1");
  if (config.robot_count < 1 || config.target_count < 0 || config.steps < 0)
    throw std::invalid_argument("sim config: bad counts");
  if (config.library == PrimitiveLibrary::Fan && config.fan_count + config.include_stay < 1)
    throw std::invalid_argument("sim config: empty primitive library");
}

Pose uniform_pose(const SimConfig& config, Rng& rng) {
  Pose pose;
  pose.x = rng.next_double() * config.arena_side;
  pose.y = rng.next_double() * config.arena_side;
  pose.heading = rng.next_double() * kTwoPi;
  return pose;
}

}  // namespace

SimConfig gazebo_like_preset() {
  SimConfig config;
  config.arena_side = 30.0;
  config.robot_step = 1.0;  // assumption: source setup leaves this open
  config.target_step = 0.5;
  config.turn_period = 25;
  config.sensing_range = 5.0;
  config.comm_range = 10.0;
  config.library = PrimitiveLibrary::Fan;
  config.fan_count = 20;
  config.include_stay = true;
  config.quality = QualityMode::Count;
  config.steps = 200;
  config.robot_count = 10;
  config.target_count = 30;
  return config;
}

SimConfig parker_cmp_preset() {
  SimConfig config;
  config.arena_side = 200.0;
  config.robot_step = 10.0;
  config.target_step = 5.0;
  config.turn_period = 25;
  config.sensing_range = 40.0;
  config.comm_range = 80.0;
  config.library = PrimitiveLibrary::Fan;
  config.fan_count = 20;
  config.include_stay = true;
  config.quality = QualityMode::Count;
  config.steps = 200;
  config.robot_count = 10;
  config.target_count = 30;
  return config;
}

SimConfig preset_by_name(const std::string& name) {
  if (name == "gazebo-like") return gazebo_like_preset();
  if (name == "parker-cmp") return parker_cmp_preset();
  throw std::invalid_argument("unknown preset: " + name);
}

std::string sim_config_to_json(const SimConfig& config) {
  nlohmann::json doc{
      {"arena_side", config.arena_side},
      {"robot_step", config.robot_step},
      {"target_step", config.target_step},
      {"turn_period", config.turn_period},
      {"sensing_range", config.sensing_range},
      {"comm_range", config.comm_range},
      {"library", config.library == PrimitiveLibrary::Fan ? "fan" : "random-arc"},
      {"fan_count", config.fan_count},
      {"include_stay", config.include_stay},
      {"arc_half_angle_deg", config.arc_half_angle_deg},
      {"arc_max_step", config.arc_max_step},
      {"quality", config.quality == QualityMode::Count ? "count" : "inverse-distance"},
      {"steps", config.steps},
      {"seed", config.seed},
      {"robot_count", config.robot_count},
      {"target_count", config.target_count},
  };
  return doc.dump(2) + "\n";
}

SimConfig sim_config_from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  SimConfig config;
  auto read = [&doc](const char* key, auto& field) {
    if (doc.contains(key)) field = doc.at(key).template get<std::decay_t<decltype(field)>>();
  };
  read("arena_side", config.arena_side);
  read("robot_step", config.robot_step);
  read("target_step", config.target_step);
  read("turn_period", config.turn_period);
  read("sensing_range", config.sensing_range);
  read("comm_range", config.comm_range);
  if (doc.contains("library")) {
    std::string lib = doc.at("library").get<std::string>();
    if (lib == "fan")
      config.library = PrimitiveLibrary::Fan;
    else if (lib == "random-arc")
      config.library = PrimitiveLibrary::RandomArc;
    else
      throw std::invalid_argument("sim config: unknown library " + lib);
  }
  read("fan_count", config.fan_count);
  read("include_stay", config.include_stay);
  read("arc_half_angle_deg", config.arc_half_angle_deg);
  read("arc_max_step", config.arc_max_step);
  if (doc.contains("quality")) {
    std::string q = doc.at("quality").get<std::string>();
    if (q == "count")
      config.quality = QualityMode::Count;
    else if (q == "inverse-distance")
      config.quality = QualityMode::InverseDistance;
    else
      throw std::invalid_argument("sim config: unknown quality " + q);
  }
  read("steps", config.steps);
  read("seed", config.seed);
  read("robot_count", config.robot_count);
  read("target_count", config.target_count);
  check_config(config);
  return config;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sim_config_from_json_text(buffer.str());
}

WorldState init_world(const SimConfig& config, Rng& world_rng) {
  check_config(config);
  WorldState world;
  world.robots.reserve(config.robot_count);
  for (int i = 0; i < config.robot_count; ++i)
    world.robots.push_back(uniform_pose(config, world_rng));
  world.targets.reserve(config.target_count);
  for (int j = 0; j < config.target_count; ++j)
    world.targets.push_back(uniform_pose(config, world_rng));
  world.steps_since_turn.assign(config.target_count, 0);
  return world;
}

void step_targets(WorldState& world, const SimConfig& config, Rng& world_rng) {
  for (std::size_t j = 0; j < world.targets.size(); ++j) {
    Pose& target = world.targets[j];
    if (++world.steps_since_turn[j] >= config.turn_period) {
      target.heading = world_rng.next_double() * kTwoPi;
      world.steps_since_turn[j] = 0;
    }
    double nx = target.x + config.target_step * std::cos(target.heading);
    double ny = target.y + config.target_step * std::sin(target.heading);
    int guard = 0;
    while (!inside(config, nx, ny) && guard++ < 1000) {
      target.heading = world_rng.next_double() * kTwoPi;
      nx = target.x + config.target_step * std::cos(target.heading);
      ny = target.y + config.target_step * std::sin(target.heading);
    }
    if (!inside(config, nx, ny)) {
      // Arena narrower than one step; stop rather than escape.
      nx = target.x;
      ny = target.y;
    }
    target.x = nx;
    target.y = ny;
  }
}

PrimitiveStateSet build_primitives(const WorldState& world, const SimConfig& config,
                                   Rng& policy_rng) {
  PrimitiveStateSet set;
  set.candidates.resize(world.robots.size());
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    const Pose& robot = world.robots[i];
    auto& candidates = set.candidates[i];
    if (config.include_stay) candidates.push_back(robot);
    if (config.library == PrimitiveLibrary::Fan) {
      for (int t = 0; t < config.fan_count; ++t) {
        double heading = kTwoPi * t / config.fan_count;
        Pose pose = clamped(config, {robot.x + config.robot_step * std::cos(heading),
                                     robot.y + config.robot_step * std::sin(heading), heading});
        candidates.push_back(pose);
      }
    } else {
      double half = config.arc_half_angle_deg * std::numbers::pi / 180.0;
      double heading = robot.heading + (2.0 * policy_rng.next_double() - 1.0) * half;
      double length = policy_rng.next_open_closed() * config.arc_max_step;
      Pose pose = clamped(config, {robot.x + length * std::cos(heading),
                                   robot.y + length * std::sin(heading), heading});
      candidates.push_back(pose);
    }
  }
  return set;
}

Snapshot snapshot_instance(const WorldState& world, const PrimitiveStateSet& primitives,
                           const SimConfig& config) {
  const int robot_count = static_cast<int>(world.robots.size());
  const int target_count = static_cast<int>(world.targets.size());
  if (static_cast<int>(primitives.candidates.size()) != robot_count)
    throw std::invalid_argument("snapshot: candidate set does not match world");

  Snapshot snap;
  std::vector<int> prim_counts;
  prim_counts.reserve(robot_count);
  for (const auto& c : primitives.candidates) prim_counts.push_back(static_cast<int>(c.size()));
  snap.instance = Instance(prim_counts, target_count);

  snap.predicted.resize(target_count);
  for (int j = 0; j < target_count; ++j) {
    const Pose& t = world.targets[j];
    snap.predicted[j] = {t.x + config.target_step * std::cos(t.heading),
                         t.y + config.target_step * std::sin(t.heading), t.heading};
  }

  for (int i = 0; i < robot_count; ++i) {
    for (int j = 0; j < target_count; ++j) {
      // Only targets the robot currently observes are candidates for its edges.
      if (distance(world.robots[i], world.targets[j]) > config.sensing_range) continue;
      for (int m = 0; m < prim_counts[i]; ++m) {
        double d = distance(primitives.candidates[i][m], snap.predicted[j]);
        double q = quality_of(config, d);
        if (q > 0.0) snap.instance.set_weight(i, m, j, q);
      }
    }
  }

  // Robots sharing an observable target are assumed connectable; count the
  // pairs for which the geometric disk disagrees.
  CommGraph graph = derive_comm_graph(snap.instance);
  for (int a = 0; a < robot_count; ++a)
    for (int b : graph.neighbors(a))
      if (b > a && distance(world.robots[a], world.robots[b]) > config.comm_range)
        ++snap.range_violations;
  return snap;
}

std::vector<Pose> parker_policy(const WorldState& world, const SimConfig& config) {
  std::vector<Pose> next;
  next.reserve(world.robots.size());
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    const Pose& robot = world.robots[i];
    double fx = 0.0, fy = 0.0;
    for (const Pose& target : world.targets) {
      double d = distance(robot, target);
      if (d > config.sensing_range || d < 1e-12) continue;
      fx += (target.x - robot.x) / d;
      fy += (target.y - robot.y) / d;
    }
    for (std::size_t l = 0; l < world.robots.size(); ++l) {
      if (l == i) continue;
      double d = distance(robot, world.robots[l]);
      if (d > config.comm_range / 2.0 || d < 1e-12) continue;
      fx -= (world.robots[l].x - robot.x) / d;
      fy -= (world.robots[l].y - robot.y) / d;
    }
    double norm = std::hypot(fx, fy);
    if (norm < 1e-9) {
      next.push_back(robot);  // balanced forces: stay
    } else {
      double heading = std::atan2(fy, fx);
      next.push_back(clamped(config, {robot.x + config.robot_step * fx / norm,
                                      robot.y + config.robot_step * fy / norm, heading}));
    }
  }
  return next;
}

PolicyKind policy_from_string(const std::string& name) {
  if (name == "greedy") return PolicyKind::Greedy;
  if (name == "local") return PolicyKind::Local;
  if (name == "random") return PolicyKind::Random;
  if (name == "parker") return PolicyKind::Parker;
  throw std::invalid_argument("unknown policy: " + name);
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Greedy: return "greedy";
    case PolicyKind::Local: return "local";
    case PolicyKind::Random: return "random";
    case PolicyKind::Parker: return "parker";
  }
  return "unknown";
}

double EpisodeReport::mean_actual() const {
  if (steps.empty()) return 0.0;
  double sum = 0.0;
  for (const EpisodeStep& s : steps) sum += s.actual;
  return sum / static_cast<double>(steps.size());
}

double EpisodeReport::mean_estimated() const {
  if (steps.empty()) return 0.0;
  double sum = 0.0;
  for (const EpisodeStep& s : steps) sum += s.estimated;
  return sum / static_cast<double>(steps.size());
}

std::uint64_t world_hash(const WorldState& world) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over pose bit patterns
  auto absorb = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int shift = 0; shift < 64; shift += 8) {
      h ^= (bits >> shift) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  absorb(static_cast<double>(world.step));
  for (const Pose& p : world.robots) {
    absorb(p.x);
    absorb(p.y);
    absorb(p.heading);
  }
  for (const Pose& p : world.targets) {
    absorb(p.x);
    absorb(p.y);
    absorb(p.heading);
  }
  for (int c : world.steps_since_turn) absorb(static_cast<double>(c));
  return h;
}

EpisodeReport run_episode(const SimConfig& config, const Policy& policy) {
  check_config(config);
  Rng root(config.seed);
  Rng world_rng = root.split(1);
  Rng policy_rng = root.split(2);

  WorldState world = init_world(config, world_rng);
  EpisodeReport report;
  report.initial_world_hash = world_hash(world);
  report.steps.reserve(config.steps);

  for (int k = 0; k < config.steps; ++k) {
    PrimitiveStateSet primitives;
    std::vector<int> chosen;
    int rounds = 0;
    std::uint64_t bytes = 0;

    if (policy.kind == PolicyKind::Parker) {
      primitives.candidates.resize(world.robots.size());
      std::vector<Pose> next = parker_policy(world, config);
      for (std::size_t i = 0; i < next.size(); ++i) primitives.candidates[i] = {next[i]};
      chosen.assign(world.robots.size(), 0);
    } else {
      primitives = build_primitives(world, config, policy_rng);
    }

    Snapshot snap = snapshot_instance(world, primitives, config);
    report.range_violations += snap.range_violations;

    switch (policy.kind) {
      case PolicyKind::Greedy: {
        DistributedGreedyResult result = greedy_distributed(snap.instance);
        chosen = result.assignment.chosen_primitive;
        rounds = result.rounds;
        bytes = result.log.total_bytes();
        break;
      }
      case PolicyKind::Local: {
        LocalSolveResult result = solve_local(snap.instance, policy.local);
        chosen = round_solution(snap.instance, result.solution).chosen_primitive;
        rounds = result.rounds;
        bytes = result.log.total_bytes();
        break;
      }
      case PolicyKind::Random: {
        chosen = random_baseline(snap.instance, policy_rng.next_u64()).chosen_primitive;
        break;
      }
      case PolicyKind::Parker:
        break;  // chosen already set
    }

    double estimated = eval_wta_from_x(snap.instance, chosen).value;
    for (std::size_t i = 0; i < world.robots.size(); ++i)
      world.robots[i] = primitives.candidates[i][chosen[i]];

    step_targets(world, config, world_rng);
    ++world.step;

    double actual = 0.0;
    for (const Pose& target : world.targets) {
      double best = 0.0;
      for (const Pose& robot : world.robots)
        best = std::max(best, quality_of(config, distance(robot, target)));
      actual += best;
    }

    report.steps.push_back({k, estimated, actual, rounds, bytes});
  }
  return report;
}

void write_episode_csv_header(std::ostream& out) {
  out << "step,policy,estimated,actual,rounds,bytes,seed\n";
}

void write_episode_csv_rows(std::ostream& out, const EpisodeReport& report,
                            const std::string& policy_name, std::uint64_t seed) {
  for (const EpisodeStep& s : report.steps) {
    out << s.step << ',' << policy_name << ',';
    out.precision(17);
    out << s.estimated << ',' << s.actual << ',' << s.rounds << ',' << s.bytes << ',' << seed
        << '\n';
  }
}

void write_episode_histogram(std::ostream& out, const EpisodeReport& report, double bin_width) {
  if (bin_width <= 0.0) throw std::invalid_argument("histogram: bin width must be positive");
  double max_value = 0.0;
  for (const EpisodeStep& s : report.steps)
    max_value = std::max({max_value, s.estimated, s.actual});
  int bins = static_cast<int>(max_value / bin_width) + 1;
  std::vector<int> estimated_counts(bins, 0), actual_counts(bins, 0);
  for (const EpisodeStep& s : report.steps) {
    ++estimated_counts[static_cast<int>(s.estimated / bin_width)];
    ++actual_counts[static_cast<int>(s.actual / bin_width)];
  }
  out << "bin_lo,bin_hi,estimated_count,actual_count\n";
  for (int b = 0; b < bins; ++b)
    out << b * bin_width << ',' << (b + 1) * bin_width << ',' << estimated_counts[b] << ','
        << actual_counts[b] << '\n';
}

}  // namespace sata
