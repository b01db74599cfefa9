#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sata/core.hpp"

namespace sata {

struct LoadResult {
  std::optional<Instance> instance;  // present iff report.ok()
  ValidationReport report;
};

// Schema: {"robots": [{"id": 1, "primitives": [{"id": 1, "targets":
// [{"target": 1, "weight": 1.0}]}]}], "target_count": 2}. All ids 1-based;
// robot and primitive ids must be contiguous and in order.
LoadResult parse_instance_json(const std::string& text);
LoadResult load_instance(const std::filesystem::path& path);

// Throws std::runtime_error with the joined report on any failure.
Instance load_instance_or_throw(const std::filesystem::path& path);

std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace sata
