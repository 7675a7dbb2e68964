#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eigdiag/diagram.hpp"

namespace eigdiag {

namespace {

void put_double(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(const std::string& s, std::size_t line_no) {
  if (s == "nan" || s == "NaN") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::SchemaError, "bad number '" + s + "' on line " + std::to_string(line_no));
  return v;
}

template <class Int>
Int parse_int(const std::string& s, std::size_t line_no) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::SchemaError, "bad integer '" + s + "' on line " + std::to_string(line_no));
  return v;
}

}  // namespace

void write_csv(const std::vector<DiagramRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << r.kind << ',' << r.n_vertices << ',' << r.seed;
    for (double v : {r.area, r.perimeter, r.diameter, r.inradius, r.width, r.lambda1, r.mu1, r.x, r.y, r.F,
                     r.lambda1_err, r.mu1_err, r.h}) {
      out << ',';
      put_double(out, v);
    }
    out << '\n';
  }
}

void write_csv(const std::vector<DiagramRecord>& records, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_csv(records, f);
  if (!f) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::vector<DiagramRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::SchemaError, "missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw Error(ErrorCode::SchemaError, "unexpected CSV header: " + line);

  std::vector<DiagramRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 17)
      throw Error(ErrorCode::SchemaError, "expected 17 fields on line " + std::to_string(line_no));
    DiagramRecord r;
    r.id = parse_int<long long>(c[0], line_no);
    r.kind = c[1];
    r.n_vertices = parse_int<int>(c[2], line_no);
    r.seed = parse_int<std::uint64_t>(c[3], line_no);
    double* fields[] = {&r.area, &r.perimeter, &r.diameter, &r.inradius, &r.width, &r.lambda1, &r.mu1,
                        &r.x,    &r.y,         &r.F,        &r.lambda1_err, &r.mu1_err, &r.h};
    for (std::size_t k = 0; k < 13; ++k) *fields[k] = parse_double(c[4 + k], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiagramRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_csv(f);
}

}  // namespace eigdiag
