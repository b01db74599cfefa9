#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sata/bench.hpp"
#include "sata/core.hpp"
#include "sata/gen.hpp"
#include "sata/greedy.hpp"
#include "sata/instance_io.hpp"
#include "sata/local.hpp"
#include "sata/lp.hpp"
#include "sata/netsim.hpp"
#include "sata/oracle.hpp"
#include "sata/rng.hpp"
#include "sata/tracking.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;   // bad arguments, unreadable/invalid inputs
constexpr int kExitSolver = 3;  // solver-side failure

using nlohmann::json;

struct SolveArgs {
  std::string instance_path;
  std::string solver = "greedy";
  int h = 2;
  double epsilon = 0.1;
  std::string order_csv;
  std::string tie = "lowest";
  std::uint64_t seed = 0;
  std::string emit_trace;
  std::string emit_rounds;
};

std::vector<int> parse_order(const std::string& csv, int robot_count) {
  std::vector<int> order;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) order.push_back(std::stoi(item) - 1);
  if (static_cast<int>(order.size()) != robot_count)
    throw std::invalid_argument("--order must list every robot exactly once");
  return order;
}

json assignment_to_json(const sata::Assignment& assignment) {
  json chosen = json::array();
  for (int m : assignment.chosen_primitive) chosen.push_back(m + 1);
  json doc{{"chosen_primitive", std::move(chosen)}};
  if (assignment.target_owner) {
    json owners = json::array();
    for (int i : *assignment.target_owner) owners.push_back(i >= 0 ? json(i + 1) : json(nullptr));
    doc["target_owner"] = std::move(owners);
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_solve(const SolveArgs& args) {
  sata::LoadResult loaded = sata::load_instance(args.instance_path);
  if (!loaded.instance) {
    std::cerr << "error: " << loaded.report.joined() << "\n";
    return kExitUsage;
  }
  const sata::Instance& inst = *loaded.instance;

  json result{{"solver", args.solver}, {"rounds", 0}};
  auto start = std::chrono::steady_clock::now();
  try {
    if (args.solver == "greedy") {
      if (!args.order_csv.empty()) {
        sata::GreedyResult greedy = sata::greedy_wta(inst, parse_order(args.order_csv, inst.robot_count()));
        result["value"] = sata::eval_wta(inst, greedy.assignment);
        result["assignment"] = assignment_to_json(greedy.assignment);
        result["rounds"] = greedy.trace.rounds_used;
        if (!args.emit_trace.empty())
          write_text_file(args.emit_trace, sata::trace_to_json_string(greedy.trace));
      } else {
        sata::DistributedGreedyResult greedy = sata::greedy_distributed(inst);
        result["value"] = sata::eval_wta(inst, greedy.assignment);
        result["assignment"] = assignment_to_json(greedy.assignment);
        result["rounds"] = greedy.rounds;
        result["bytes"] = greedy.log.total_bytes();
        if (!args.emit_trace.empty())
          write_text_file(args.emit_trace, sata::trace_to_json_string(greedy.trace));
        if (!args.emit_rounds.empty()) {
          std::ostringstream csv;
          greedy.log.write_csv(csv);
          write_text_file(args.emit_rounds, csv.str());
        }
      }
    } else if (args.solver == "greedy-bottleneck") {
      std::vector<int> order = args.order_csv.empty()
                                   ? sata::ascending_order(inst.robot_count())
                                   : parse_order(args.order_csv, inst.robot_count());
      sata::TieBreak tie = args.tie == "adversarial" ? sata::TieBreak::Adversarial
                                                     : sata::TieBreak::Lowest;
      sata::Assignment assignment = sata::greedy_bottleneck(inst, order, tie);
      sata::BottleneckValue value = sata::eval_bottleneck(inst, assignment);
      result["value"] = value.vacuous ? json("vacuous") : json(value.value);
      result["assignment"] = assignment_to_json(assignment);
    } else if (args.solver == "local") {
      sata::LocalParams params{args.h, args.epsilon};
      sata::LocalSolveResult local = sata::solve_local(inst, params);
      sata::Assignment rounded = sata::round_solution(inst, local.solution);
      sata::BottleneckValue value = sata::eval_bottleneck(inst, rounded);
      result["value"] = value.vacuous ? json("vacuous") : json(value.value);
      result["fractional_w"] = local.solution.w;
      result["assignment"] = assignment_to_json(rounded);
      result["rounds"] = local.rounds;
      result["bytes"] = local.log.total_bytes();
      if (!args.emit_rounds.empty()) {
        std::ostringstream csv;
        local.log.write_csv(csv);
        write_text_file(args.emit_rounds, csv.str());
      }
    } else if (args.solver == "lp") {
      sata::FractionalSolution lp = sata::centralized_lp(inst);
      result["value"] = lp.w;
      json x = json::array();
      for (const auto& row : lp.x) x.push_back(row);
      result["x"] = std::move(x);
    } else if (args.solver == "lp-round") {
      sata::Assignment assignment = sata::lp_round_baseline(inst);
      sata::BottleneckValue value = sata::eval_bottleneck(inst, assignment);
      result["value"] = value.vacuous ? json("vacuous") : json(value.value);
      result["assignment"] = assignment_to_json(assignment);
    } else if (args.solver == "oracle-wta") {
      sata::OracleResult oracle = sata::brute_force_wta(inst);
      result["value"] = oracle.optimum;
      result["assignment"] = assignment_to_json(oracle.best);
      result["enumerated"] = oracle.enumerated;
    } else if (args.solver == "oracle-bottleneck") {
      sata::OracleResult oracle = sata::brute_force_bottleneck(inst);
      result["value"] = oracle.optimum;
      result["assignment"] = assignment_to_json(oracle.best);
      result["enumerated"] = oracle.enumerated;
    } else if (args.solver == "random") {
      sata::Assignment assignment = sata::random_baseline(inst, args.seed);
      result["value"] = sata::eval_wta(inst, assignment);
      result["assignment"] = assignment_to_json(assignment);
    } else {
      std::cerr << "error: unknown solver " << args.solver << "\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  result["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
  std::cout << result.dump(2) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& instance_path) {
  sata::LoadResult loaded = sata::load_instance(instance_path);
  if (!loaded.instance) {
    std::cerr << "error: " << loaded.report.joined() << "\n";
    return kExitUsage;
  }
  try {
    sata::OracleResult wta = sata::brute_force_wta(*loaded.instance);
    sata::OracleResult bottleneck = sata::brute_force_bottleneck(*loaded.instance);
    json wta_doc{{"optimum", wta.optimum},
                 {"assignment", assignment_to_json(wta.best)},
                 {"enumerated", wta.enumerated}};
    json bottleneck_doc{{"optimum", bottleneck.optimum},
                        {"assignment", assignment_to_json(bottleneck.best)},
                        {"enumerated", bottleneck.enumerated}};
    json doc{{"wta", std::move(wta_doc)}, {"bottleneck", std::move(bottleneck_doc)}};
    std::cout << doc.dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

struct EpisodeArgs {
  std::string preset = "parker-cmp";
  std::string config_path;
  std::string policies_csv = "greedy";
  int steps = -1;
  int robots = -1;
  int targets = -1;
  std::string quality;
  int seeds = 1;
  std::uint64_t seed = 0;
  int h = 2;
  double epsilon = 0.1;
  std::string out;
  std::string hist;
};

int cmd_episode(const EpisodeArgs& args) {
  sata::SimConfig config;
  try {
    config = args.config_path.empty() ? sata::preset_by_name(args.preset)
                                      : sata::load_sim_config(args.config_path);
    if (args.steps >= 0) config.steps = args.steps;
    if (args.robots > 0) config.robot_count = args.robots;
    if (args.targets >= 0) config.target_count = args.targets;
    if (!args.quality.empty()) {
      if (args.quality == "count")
        config.quality = sata::QualityMode::Count;
      else if (args.quality == "inverse-distance")
        config.quality = sata::QualityMode::InverseDistance;
      else
        throw std::invalid_argument("unknown quality mode " + args.quality);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> policy_names;
  {
    std::stringstream stream(args.policies_csv);
    std::string item;
    while (std::getline(stream, item, ',')) policy_names.push_back(item);
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) {
      std::cerr << "error: cannot write " << args.out << "\n";
      return kExitUsage;
    }
    out = &file;
  }

  try {
    sata::write_episode_csv_header(*out);
    for (int s = 0; s < args.seeds; ++s) {
      std::uint64_t episode_seed = args.seeds == 1 ? args.seed : sata::mix64(args.seed + s);
      for (const std::string& name : policy_names) {
        sata::Policy policy;
        policy.kind = sata::policy_from_string(name);
        policy.local = sata::LocalParams{args.h, args.epsilon};
        sata::SimConfig run_config = config;
        run_config.seed = episode_seed;
        sata::EpisodeReport report = sata::run_episode(run_config, policy);
        sata::write_episode_csv_rows(*out, report, name, episode_seed);
        std::cerr << "# policy=" << name << " seed=" << episode_seed << " world0=" << std::hex
                  << report.initial_world_hash << std::dec
                  << " mean_actual=" << report.mean_actual()
                  << " range_violations=" << report.range_violations << "\n";
        if (!args.hist.empty()) {
          std::ofstream hist_file(args.hist + "." + name + "." + std::to_string(episode_seed) +
                                  ".csv");
          double bin = config.quality == sata::QualityMode::Count ? 1.0 : 0.5;
          sata::write_episode_histogram(hist_file, report, bin);
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

struct SweepArgs {
  std::string mode = "wta";
  std::string robots_csv = "2,3,4";
  std::string targets_csv = "4,6";
  std::string phis_csv = "15,25";
  std::string weights = "binary";
  int trials = 100;
  std::uint64_t seed = 0;
  std::string h_values_csv = "1,2,5,8";
  double epsilon = 0.1;
  std::string out_dir = ".";
};

template <typename T>
std::vector<T> parse_csv_list(const std::string& csv) {
  std::vector<T> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if constexpr (std::is_same_v<T, int>)
      values.push_back(std::stoi(item));
    else
      values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

int cmd_sweep(const SweepArgs& args) {
  sata::SweepSpec spec;
  sata::SweepMode mode;
  try {
    mode = sata::sweep_mode_from_string(args.mode);
    spec.robot_counts = parse_csv_list<int>(args.robots_csv);
    spec.target_counts = parse_csv_list<int>(args.targets_csv);
    spec.phis = parse_csv_list<double>(args.phis_csv);
    spec.mode = sata::weight_mode_from_string(args.weights);
    spec.trials = args.trials;
    spec.master_seed = args.seed;
    spec.h_values = parse_csv_list<int>(args.h_values_csv);
    spec.epsilon = args.epsilon;
    std::filesystem::create_directories(args.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    std::vector<sata::SweepRow> rows = sata::run_sweep(spec, mode);
    std::string base = args.out_dir + "/" + args.mode;
    sata::write_sweep_csv(base + "_rows.csv", rows);
    sata::write_sweep_aggregates(base + "_agg.csv", rows);
    std::cerr << "# wrote " << rows.size() << " rows to " << base << "_rows.csv\n";
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

struct GenArgs {
  int robots = 2;
  int primitives = 2;
  int targets = 4;
  double phi = 25.0;
  std::string weights = "binary";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  try {
    sata::GenConfig config;
    config.robot_count = args.robots;
    config.primitives_per_robot = args.primitives;
    config.target_count = args.targets;
    config.phi_percent = args.phi;
    config.weight_mode = sata::weight_mode_from_string(args.weights);
    config.seed = args.seed;
    sata::Instance inst = sata::generate(config);
    std::cerr << "# measured phi: " << sata::measure_phi(inst) << "\n";
    if (args.out.empty())
      std::cout << sata::instance_to_json(inst);
    else
      sata::save_instance(inst, args.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, bool quick) {
  const int lemma_instances = quick ? 20 : 100;
  const int chain_instances = quick ? 20 : 100;
  int failures = 0;
  sata::Rng rng(seed);

  try {
    int lemma_pass = 0;
    for (int t = 0; t < lemma_instances; ++t) {
      sata::GenConfig config;
      config.robot_count = 2 + static_cast<int>(rng.next_int(3));
      config.primitives_per_robot = 2;
      config.target_count = 3 + static_cast<int>(rng.next_int(4));
      config.phi_percent = 40.0;
      config.seed = rng.next_u64();
      sata::Instance inst = sata::generate(config);
      if (sata::check_lemma1_equivalence(inst).pass) ++lemma_pass;
    }
    std::cout << "relaxation-equivalence: " << lemma_pass << "/" << lemma_instances << " pass\n";
    if (lemma_pass != lemma_instances) ++failures;

    int bound_pass = 0;
    int chain_pass = 0;
    for (int t = 0; t < chain_instances; ++t) {
      sata::GenConfig config;
      config.robot_count = 3 + static_cast<int>(rng.next_int(2));
      config.primitives_per_robot = 2;
      config.target_count = 5;
      config.phi_percent = 30.0;
      config.seed = rng.next_u64();
      sata::Instance inst = sata::generate(config);

      double greedy_value =
          sata::eval_wta(inst, sata::greedy_distributed(inst).assignment);
      double wta_opt = sata::brute_force_wta(inst).optimum;
      if (greedy_value >= 0.5 * wta_opt) ++bound_pass;

      double ilp = sata::brute_force_bottleneck(inst).optimum;
      double lp_upper = sata::centralized_lp(inst).w;
      sata::LocalParams params{2, 0.1};
      sata::Assignment rounded =
          sata::round_solution(inst, sata::solve_local(inst, params).solution);
      double local_value = sata::eval_bottleneck(inst, rounded).value;
      double lp_rounded = sata::eval_bottleneck(inst, sata::lp_round_baseline(inst)).value;
      if (local_value <= ilp + 1e-9 && lp_rounded <= ilp + 1e-9 && ilp <= lp_upper + 1e-9)
        ++chain_pass;
    }
    std::cout << "greedy half-optimum bound: " << bound_pass << "/" << chain_instances
              << " pass\n";
    std::cout << "bottleneck ordering chain: " << chain_pass << "/" << chain_instances
              << " pass\n";
    if (bound_pass != chain_instances || chain_pass != chain_instances) ++failures;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  std::cout << (failures == 0 ? "verify: all suites pass\n" : "verify: FAILURES\n");
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous action and target assignment toolkit"};
  app.require_subcommand(1);
  // --h is a solver parameter, so help lives on --help alone.
  app.set_help_flag("--help", "Print help");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->set_help_flag("--help", "Print help");
  gen->add_option("--robots", gen_args.robots, "Robot count");
  gen->add_option("--primitives", gen_args.primitives, "Primitives per robot");
  gen->add_option("--targets", gen_args.targets, "Target count");
  gen->add_option("--phi", gen_args.phi, "Coverage density percent in (0,100]");
  gen->add_option("--weights", gen_args.weights, "binary|uniform");
  gen->add_option("--seed", gen_args.seed, "Generator seed");
  gen->add_option("--out", gen_args.out, "Output instance path (default stdout)");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->set_help_flag("--help", "Print help");
  solve->add_option("instance", solve_args.instance_path, "Instance JSON path")->required();
  solve->add_option("--solver", solve_args.solver,
                    "greedy|greedy-bottleneck|local|lp|lp-round|oracle-wta|oracle-bottleneck|random");
  solve->add_option("--h", solve_args.h, "Neighborhood radius for local");
  solve->add_option("--epsilon", solve_args.epsilon, "Epsilon parameter for local");
  solve->add_option("--order", solve_args.order_csv, "Robot order, 1-based comma list");
  solve->add_option("--tie", solve_args.tie, "lowest|adversarial (greedy-bottleneck)");
  solve->add_option("--seed", solve_args.seed, "Seed for random solver");
  solve->add_option("--emit-trace", solve_args.emit_trace, "Write greedy trace JSON");
  solve->add_option("--emit-rounds", solve_args.emit_rounds, "Write round log CSV");

  std::string oracle_path;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact optima of both objectives");
  oracle->set_help_flag("--help", "Print help");
  oracle->add_option("instance", oracle_path, "Instance JSON path")->required();

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Random-instance benchmark sweeps");
  sweep->set_help_flag("--help", "Print help");
  sweep->add_option("--mode", sweep_args.mode, "wta|bottleneck|h");
  sweep->add_option("--robots", sweep_args.robots_csv, "Robot counts, comma list");
  sweep->add_option("--targets", sweep_args.targets_csv, "Target counts, comma list");
  sweep->add_option("--phi", sweep_args.phis_csv, "Density percents, comma list");
  sweep->add_option("--weights", sweep_args.weights, "binary|uniform");
  sweep->add_option("--trials", sweep_args.trials, "Trials per case");
  sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sweep->add_option("--h-values", sweep_args.h_values_csv, "h list for mode=h");
  sweep->add_option("--epsilon", sweep_args.epsilon, "Epsilon for local");
  sweep->add_option("--out", sweep_args.out_dir, "Output directory");

  EpisodeArgs episode_args;
  CLI::App* episode = app.add_subcommand("episode", "Multi-step tracking simulation");
  episode->set_help_flag("--help", "Print help");
  episode->add_option("--preset", episode_args.preset, "gazebo-like|parker-cmp");
  episode->add_option("--config", episode_args.config_path, "Sim config JSON (overrides preset)");
  episode->add_option("--policy", episode_args.policies_csv,
                      "Comma list of greedy|local|random|parker");
  episode->add_option("--steps", episode_args.steps, "Steps per episode");
  episode->add_option("--robots", episode_args.robots, "Robot count override");
  episode->add_option("--targets", episode_args.targets, "Target count override");
  episode->add_option("--quality", episode_args.quality, "count|inverse-distance");
  episode->add_option("--seeds", episode_args.seeds, "Number of paired seeds");
  episode->add_option("--seed", episode_args.seed, "Base seed");
  episode->add_option("--h", episode_args.h, "h for local policy");
  episode->add_option("--epsilon", episode_args.epsilon, "Epsilon for local policy");
  episode->add_option("--out", episode_args.out, "Output CSV path (default stdout)");
  episode->add_option("--hist", episode_args.hist, "Histogram file prefix");

  std::uint64_t verify_seed = 0;
  bool verify_quick = false;
  CLI::App* verify = app.add_subcommand("verify", "Run equivalence and bound suites");
  verify->set_help_flag("--help", "Print help");
  verify->add_option("--seed", verify_seed, "Suite seed");
  verify->add_flag("--quick", verify_quick, "Smaller suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return cmd_gen(gen_args);
  if (solve->parsed()) return cmd_solve(solve_args);
  if (oracle->parsed()) return cmd_oracle(oracle_path);
  if (sweep->parsed()) return cmd_sweep(sweep_args);
  if (episode->parsed()) return cmd_episode(episode_args);
  if (verify->parsed()) return cmd_verify(verify_seed, verify_quick);
  return kExitUsage;
}
