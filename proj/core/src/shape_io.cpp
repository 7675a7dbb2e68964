#include "eigdiag/shape_io.hpp"

#include <fstream>

namespace eigdiag {

nlohmann::json to_json(const ShapeRecord& rec) {
  nlohmann::json verts = nlohmann::json::array();
  for (Point2 p : rec.vertices) verts.push_back({p.x, p.y});
  return {{"id", rec.id}, {"kind", rec.kind}, {"params", rec.params}, {"vertices", verts}};
}

ShapeRecord shape_from_json(const nlohmann::json& j) {
  try {
    ShapeRecord rec;
    rec.id = j.at("id").get<std::int64_t>();
    rec.kind = j.at("kind").get<std::string>();
    rec.params = j.contains("params") ? j.at("params") : nlohmann::json::object();
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::SchemaError, "vertex must be [x, y]");
      rec.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("bad shape record: ") + e.what());
  }
}

void write_shapes_jsonl(const std::vector<ShapeRecord>& shapes, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  for (const auto& s : shapes) out << to_json(s).dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::vector<ShapeRecord> read_shapes_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<ShapeRecord> shapes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::SchemaError, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    shapes.push_back(shape_from_json(j));
  }
  return shapes;
}

}  // namespace eigdiag
