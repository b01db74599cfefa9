#include "sata/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "sata/greedy.hpp"
#include "sata/oracle.hpp"
#include "sata/rng.hpp"

namespace sata {

namespace {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, const SweepCase& c, int trial) {
  std::uint64_t h = mix64(master_seed + 0x5357454550ull);
  h = mix64(h ^ static_cast<std::uint64_t>(c.robots));
  h = mix64(h ^ static_cast<std::uint64_t>(c.targets));
  h = mix64(h ^ static_cast<std::uint64_t>(c.phi * 1024.0));
  h = mix64(h ^ static_cast<std::uint64_t>(c.mode == WeightMode::Binary ? 1 : 2));
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

Instance case_instance(const SweepCase& c, std::uint64_t seed) {
  GenConfig config;
  config.robot_count = c.robots;
  config.primitives_per_robot = 2;
  config.target_count = c.targets;
  config.phi_percent = c.phi;
  config.weight_mode = c.mode;
  config.seed = seed;
  return generate(config);
}

std::string sweep_csv_header() {
  return "robots,targets,phi,weights,trial,seed,solver,value,rounds";
}

std::string SweepRow::to_csv() const {
  std::string out;
  out += std::to_string(scase.robots) + ',' + std::to_string(scase.targets) + ',';
  out += format_double(scase.phi) + ',' + to_string(scase.mode) + ',';
  out += std::to_string(trial) + ',' + std::to_string(seed) + ',' + solver + ',';
  out += format_double(value) + ',' + std::to_string(rounds);
  return out;
}

SweepRow sweep_cell(const SweepCase& c, int trial, std::uint64_t seed, const std::string& solver,
                    const LocalParams& params) {
  Instance inst = case_instance(c, seed);
  SweepRow row{c, trial, seed, solver, 0.0, 0};

  auto bottleneck_of = [&](const Assignment& assignment) {
    BottleneckValue v = eval_bottleneck(inst, assignment);
    return v.vacuous ? 0.0 : v.value;
  };

  if (solver == "greedy") {
    DistributedGreedyResult result = greedy_distributed(inst);
    row.value = eval_wta(inst, result.assignment);
    row.rounds = result.rounds;
  } else if (solver == "random") {
    Assignment assignment = random_baseline(inst, mix64(seed ^ 0x72616e646f6dull));
    row.value = eval_wta(inst, assignment);
  } else if (solver == "oracle-wta") {
    row.value = brute_force_wta(inst).optimum;
  } else if (solver == "oracle-bottleneck") {
    row.value = brute_force_bottleneck(inst).optimum;
  } else if (solver == "lp") {
    row.value = centralized_lp(inst).w;
  } else if (solver == "lp-round") {
    row.value = bottleneck_of(lp_round_baseline(inst));
  } else if (solver == "local") {
    LocalSolveResult result = solve_local(inst, params);
    row.value = bottleneck_of(round_solution(inst, result.solution));
    row.rounds = result.rounds;
  } else {
    throw std::invalid_argument("unknown sweep solver: " + solver);
  }
  return row;
}

SweepMode sweep_mode_from_string(const std::string& name) {
  if (name == "wta") return SweepMode::Wta;
  if (name == "bottleneck") return SweepMode::Bottleneck;
  if (name == "h") return SweepMode::HSweep;
  throw std::invalid_argument("unknown sweep mode: " + name);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, SweepMode mode) {
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  std::vector<SweepRow> rows;
  for (int robots : spec.robot_counts) {
    for (int targets : spec.target_counts) {
      for (double phi : spec.phis) {
        SweepCase c{robots, targets, phi, spec.mode};
        for (int trial = 0; trial < spec.trials; ++trial) {
          std::uint64_t seed = trial_seed(spec.master_seed, c, trial);
          switch (mode) {
            case SweepMode::Wta:
              for (const char* solver : {"greedy", "oracle-wta", "random"})
                rows.push_back(sweep_cell(c, trial, seed, solver));
              break;
            case SweepMode::Bottleneck: {
              LocalParams params;
              params.h = spec.h_values.empty() ? 2 : spec.h_values.front();
              params.epsilon = spec.epsilon;
              for (const char* solver : {"oracle-bottleneck", "lp", "lp-round"})
                rows.push_back(sweep_cell(c, trial, seed, solver));
              rows.push_back(sweep_cell(c, trial, seed, "local", params));
              break;
            }
            case SweepMode::HSweep:
              for (int h : spec.h_values) {
                LocalParams params;
                params.h = h;
                params.epsilon = spec.epsilon;
                SweepRow row = sweep_cell(c, trial, seed, "local", params);
                row.solver = "local-h" + std::to_string(h);
                rows.push_back(std::move(row));
              }
              break;
          }
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << sweep_csv_header() << '\n';
  for (const SweepRow& row : rows) out << row.to_csv() << '\n';
}

void write_sweep_aggregates(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  struct Stats {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::string, Stats> by_key;
  for (const SweepRow& row : rows) {
    std::string key = std::to_string(row.scase.robots) + ',' + std::to_string(row.scase.targets) +
                      ',' + format_double(row.scase.phi) + ',' + to_string(row.scase.mode) + ',' +
                      row.solver;
    Stats& s = by_key[key];
    s.min = std::min(s.min, row.value);
    s.max = std::max(s.max, row.value);
    s.sum += row.value;
    ++s.count;
  }
  out << "robots,targets,phi,weights,solver,min,mean,max,trials\n";
  for (const auto& [key, s] : by_key)
    out << key << ',' << format_double(s.min) << ',' << format_double(s.sum / s.count) << ','
        << format_double(s.max) << ',' << s.count << '\n';
}

}  // namespace sata
