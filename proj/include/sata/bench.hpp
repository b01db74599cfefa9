#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sata/gen.hpp"
#include "sata/local.hpp"

namespace sata {

struct SweepCase {
  int robots = 2;
  int targets = 4;
  double phi = 25.0;
  WeightMode mode = WeightMode::Binary;
};

struct SweepSpec {
  std::vector<int> robot_counts{2, 3, 4};
  std::vector<int> target_counts{4, 6};
  std::vector<double> phis{15.0, 25.0};
  WeightMode mode = WeightMode::Binary;
  int trials = 100;
  std::uint64_t master_seed = 0;
  std::vector<int> h_values{1, 2, 5, 8};
  double epsilon = 0.1;
};

// Instance seed for a (case, trial) cell: a pure function of the master seed
// and the cell coordinates, so every solver sees the same instance and adding
// solvers or cases never perturbs other cells.
std::uint64_t trial_seed(std::uint64_t master_seed, const SweepCase& c, int trial);

Instance case_instance(const SweepCase& c, std::uint64_t seed);

struct SweepRow {
  SweepCase scase;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string solver;
  double value = 0.0;
  int rounds = 0;

  std::string to_csv() const;
};

std::string sweep_csv_header();

// Solver names: greedy, random, oracle-wta, oracle-bottleneck, lp, lp-round,
// local (uses params.h). Deterministic per (cell, seed, solver).
SweepRow sweep_cell(const SweepCase& c, int trial, std::uint64_t seed, const std::string& solver,
                    const LocalParams& params = {});

enum class SweepMode { Wta, Bottleneck, HSweep };
SweepMode sweep_mode_from_string(const std::string& name);

std::vector<SweepRow> run_sweep(const SweepSpec& spec, SweepMode mode);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
// Companion aggregation: one row per (case, solver) with min/mean/max value.
void write_sweep_aggregates(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace sata
