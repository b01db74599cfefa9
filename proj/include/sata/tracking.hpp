#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sata/core.hpp"
#include "sata/local.hpp"
#include "sata/rng.hpp"

namespace sata {

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians
};

struct WorldState {
  int step = 0;
  std::vector<Pose> robots;
  std::vector<Pose> targets;
  std::vector<int> steps_since_turn;  // per target
};

enum class QualityMode { Count, InverseDistance };

enum class PrimitiveLibrary {
  Fan,        // stay-in-place plus evenly spaced headings at full step length
  RandomArc,  // stay plus one pose sampled within a heading arc, random length
};

struct SimConfig {
  double arena_side = 200.0;  // square arena [0, side] x [0, side]
  double robot_step = 10.0;
  double target_step = 5.0;
  int turn_period = 25;
  double sensing_range = 40.0;
  double comm_range = 80.0;
  PrimitiveLibrary library = PrimitiveLibrary::Fan;
  int fan_count = 20;
  bool include_stay = true;
  double arc_half_angle_deg = 30.0;
  double arc_max_step = 1.0;
  QualityMode quality = QualityMode::Count;
  int steps = 200;
  std::uint64_t seed = 0;
  int robot_count = 10;
  int target_count = 30;
};

// Small dense arena with short FOV, 21-pose fan library.
SimConfig gazebo_like_preset();
// Wide arena with long ranges and fast agents for baseline comparisons.
SimConfig parker_cmp_preset();
SimConfig preset_by_name(const std::string& name);

std::string sim_config_to_json(const SimConfig& config);
SimConfig sim_config_from_json_text(const std::string& text);
SimConfig load_sim_config(const std::string& path);

// Candidate next poses per robot; index 0 is the stay pose when included.
struct PrimitiveStateSet {
  std::vector<std::vector<Pose>> candidates;
};

WorldState init_world(const SimConfig& config, Rng& world_rng);

// Straight-line target motion with periodic random turns; at the walls the
// heading is resampled until the next step stays inside.
void step_targets(WorldState& world, const SimConfig& config, Rng& world_rng);

PrimitiveStateSet build_primitives(const WorldState& world, const SimConfig& config,
                                   Rng& policy_rng);

struct Snapshot {
  Instance instance;            // target ids align with world target indices
  std::vector<Pose> predicted;  // one-step linear extrapolation per target
  int range_violations = 0;     // robot pairs sharing a target beyond comm range
};

// Combinatorial problem of the current step: an edge exists when a candidate
// pose keeps a target (observed by that robot last step) within sensing range
// of its predicted position. Count mode sets weight 1; inverse-distance mode
// sets 1/max(distance, 0.1).
Snapshot snapshot_instance(const WorldState& world, const PrimitiveStateSet& primitives,
                           const SimConfig& config);

// Attraction to sensed targets, repulsion from robots within half comm range,
// full-step motion along the normalized force. Returns next poses.
std::vector<Pose> parker_policy(const WorldState& world, const SimConfig& config);

enum class PolicyKind { Greedy, Local, Random, Parker };

struct Policy {
  PolicyKind kind = PolicyKind::Greedy;
  LocalParams local;  // used when kind == Local
};

PolicyKind policy_from_string(const std::string& name);
std::string to_string(PolicyKind kind);

struct EpisodeStep {
  int step;
  double estimated;  // solution value on the predicted snapshot
  double actual;     // realized per-target best coverage after execution
  int rounds;
  std::uint64_t bytes;
};

struct EpisodeReport {
  std::vector<EpisodeStep> steps;
  std::uint64_t initial_world_hash = 0;
  int range_violations = 0;

  double mean_actual() const;
  double mean_estimated() const;
};

// Selection/execution loop: snapshot, select primitives (through the network
// simulator where the policy communicates), execute, move targets, measure.
// Bit-reproducible per (config, policy): world randomness and policy
// randomness flow from separate streams split off config.seed.
EpisodeReport run_episode(const SimConfig& config, const Policy& policy);

std::uint64_t world_hash(const WorldState& world);

void write_episode_csv_header(std::ostream& out);
void write_episode_csv_rows(std::ostream& out, const EpisodeReport& report,
                            const std::string& policy_name, std::uint64_t seed);
// Fixed-width histogram of the estimated and actual series.
void write_episode_histogram(std::ostream& out, const EpisodeReport& report, double bin_width);

}  // namespace sata
