#include "sata/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sata {

namespace {

using nlohmann::json;

void parse_robots(const json& doc, LoadResult& result) {
  const json& robots = doc.at("robots");
  if (!robots.is_array()) {
    result.report.errors.push_back("\"robots\" must be an array");
    return;
  }
  int target_count = doc.at("target_count").get<int>();
  if (target_count < 0) {
    result.report.errors.push_back("\"target_count\" must be >= 0");
    return;
  }

  std::vector<int> prim_counts;
  prim_counts.reserve(robots.size());
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const json& robot = robots[i];
    int id = robot.at("id").get<int>();
    if (id != static_cast<int>(i) + 1)
      result.report.errors.push_back("robot ids must be contiguous 1..N in order; found id " +
                                     std::to_string(id) + " at position " + std::to_string(i + 1));
    const json& prims = robot.at("primitives");
    if (!prims.is_array() || prims.empty()) {
      result.report.errors.push_back("robot " + std::to_string(id) +
                                     ": \"primitives\" must be a non-empty array");
      return;
    }
    prim_counts.push_back(static_cast<int>(prims.size()));
  }
  if (!result.report.ok()) return;

  Instance inst(prim_counts, target_count);
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const json& prims = robots[i].at("primitives");
    for (std::size_t m = 0; m < prims.size(); ++m) {
      const json& prim = prims[m];
      int prim_id = prim.at("id").get<int>();
      if (prim_id != static_cast<int>(m) + 1) {
        result.report.errors.push_back(
            "robot " + std::to_string(i + 1) + ": primitive id " + std::to_string(prim_id) +
            " out of order against declared count " + std::to_string(prims.size()));
        continue;
      }
      if (!prim.contains("targets")) continue;
      for (const json& edge : prim.at("targets")) {
        int target = edge.at("target").get<int>();
        double weight = edge.at("weight").get<double>();
        if (target < 1 || target > target_count) {
          result.report.errors.push_back("robot " + std::to_string(i + 1) + ", primitive " +
                                         std::to_string(prim_id) + ": target " +
                                         std::to_string(target) + " out of range 1.." +
                                         std::to_string(target_count));
          continue;
        }
        inst.set_weight(static_cast<int>(i), static_cast<int>(m), target - 1, weight);
      }
    }
  }

  ValidationReport semantic = validate_instance(inst);
  result.report.errors.insert(result.report.errors.end(), semantic.errors.begin(),
                              semantic.errors.end());
  if (result.report.ok()) result.instance = std::move(inst);
}

}  // namespace

LoadResult parse_instance_json(const std::string& text) {
  LoadResult result;
  try {
    json doc = json::parse(text);
    parse_robots(doc, result);
  } catch (const json::exception& e) {
    result.report.errors.push_back(std::string("json: ") + e.what());
  }
  return result;
}

LoadResult load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    LoadResult result;
    result.report.errors.push_back("cannot open " + path.string());
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_json(buffer.str());
}

Instance load_instance_or_throw(const std::filesystem::path& path) {
  LoadResult result = load_instance(path);
  if (!result.instance)
    throw std::runtime_error("invalid instance " + path.string() + ": " + result.report.joined());
  return std::move(*result.instance);
}

std::string instance_to_json(const Instance& inst) {
  json robots = json::array();
  for (int i = 0; i < inst.robot_count(); ++i) {
    json prims = json::array();
    for (int m = 0; m < inst.primitive_count(i); ++m) {
      json targets = json::array();
      for (const TargetWeight& tw : inst.coverage(i, m))
        targets.push_back({{"target", tw.target + 1}, {"weight", tw.weight}});
      prims.push_back({{"id", m + 1}, {"targets", std::move(targets)}});
    }
    robots.push_back({{"id", i + 1}, {"primitives", std::move(prims)}});
  }
  json doc{{"robots", std::move(robots)}, {"target_count", inst.target_count()}};
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst);
}

}  // namespace sata
