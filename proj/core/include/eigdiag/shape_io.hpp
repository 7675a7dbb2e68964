#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eigdiag/geomkit.hpp"

namespace eigdiag {

/// One line of the shapes JSONL format:
///   {"id": int, "kind": string, "params": {...}, "vertices": [[x, y], ...]}
struct ShapeRecord {
  std::int64_t id = 0;
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Point2> vertices;
};

nlohmann::json to_json(const ShapeRecord& rec);
ShapeRecord shape_from_json(const nlohmann::json& j);

void write_shapes_jsonl(const std::vector<ShapeRecord>& shapes, const std::filesystem::path& path);
std::vector<ShapeRecord> read_shapes_jsonl(const std::filesystem::path& path);

}  // namespace eigdiag
