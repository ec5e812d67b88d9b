#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "cripser/io.hpp"

namespace cripser {

LocationMode parse_location(std::string_view s) {
  if (s == "birth") return LocationMode::Birth;
  if (s == "death") return LocationMode::Death;
  if (s == "none") return LocationMode::None;
  throw std::invalid_argument("location must be birth, death or none, got '" + std::string(s) + "'");
}

namespace {

std::array<double, 3> location_of(const PersistencePair& p, LocationMode loc) {
  const std::optional<Voxel>& v = loc == LocationMode::Death ? p.death_loc : p.birth_loc;
  if (!v) return {-1.0, -1.0, -1.0};
  return {static_cast<double>(v->x), static_cast<double>(v->y), static_cast<double>(v->z)};
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

Tensor diagram_to_array(const PersistenceDiagram& diag, LocationMode loc) {
  const std::size_t cols = loc == LocationMode::None ? 3 : 6;
  Tensor t{{diag.pairs.size(), cols}, {}};
  t.data.reserve(diag.pairs.size() * cols);
  for (const auto& p : diag.pairs) {
    t.data.insert(t.data.end(), {static_cast<double>(p.dim), p.birth, p.death});
    if (cols == 6) {
      const auto xyz = location_of(p, loc);
      t.data.insert(t.data.end(), xyz.begin(), xyz.end());
    }
  }
  return t;
}

PersistenceDiagram array_to_diagram(const Tensor& t) {
  if (t.shape.size() != 2 || (t.shape[1] != 3 && t.shape[1] != 6))
    throw FormatError("diagram array must have shape (M, 3) or (M, 6)");
  const std::size_t cols = t.shape[1];
  PersistenceDiagram diag;
  diag.algorithm = Algorithm::Imported;
  for (std::size_t r = 0; r < t.shape[0]; ++r) {
    const double* row = t.data.data() + r * cols;
    if (row[0] != std::floor(row[0]) || row[0] < 0 || row[0] > 2)
      throw FormatError("diagram row " + std::to_string(r) + " has invalid dimension");
    PersistencePair p{static_cast<int>(row[0]), row[1], row[2], std::nullopt, std::nullopt};
    if (cols == 6 && row[3] >= 0 && row[4] >= 0 && row[5] >= 0)
      p.birth_loc = Voxel{static_cast<std::uint32_t>(row[3]), static_cast<std::uint32_t>(row[4]),
                          static_cast<std::uint32_t>(row[5])};
    diag.maxdim = std::max(diag.maxdim, p.dim);
    diag.pairs.push_back(p);
  }
  return diag;
}

void write_csv(std::ostream& os, const PersistenceDiagram& diag, LocationMode loc) {
  const Tensor t = diagram_to_array(diag, loc);
  const std::size_t cols = t.shape[1];
  std::string line;
  for (std::size_t r = 0; r < t.shape[0]; ++r) {
    line.clear();
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) line.push_back(',');
      append_number(line, t.data[r * cols + c]);
    }
    line.push_back('\n');
    os << line;
  }
}

void write_csv(const std::filesystem::path& path, const PersistenceDiagram& diag,
               LocationMode loc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_csv(out, diag, loc);
  if (!out) throw Error("write failed: " + path.string());
}

Tensor parse_csv_array(std::string_view text) {
  Tensor t{{0, 0}, {}};
  std::size_t rows = 0;
  std::size_t cols = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::size_t n = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view tok = line.substr(0, comma);
      double v = 0.0;
      if (tok == "inf") {
        v = kInfinity;
      } else {
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
          throw FormatError("bad number '" + std::string(tok) + "' in CSV row " + std::to_string(rows));
      }
      t.data.push_back(v);
      ++n;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (rows == 0) cols = n;
    else if (n != cols) throw FormatError("CSV row " + std::to_string(rows) + " has " +
                                          std::to_string(n) + " columns, expected " +
                                          std::to_string(cols));
    ++rows;
  }
  t.shape = {rows, rows ? cols : 6};
  return t;
}

Tensor read_csv_array(const std::filesystem::path& path) {
  return parse_csv_array(read_file(path));
}

}  // namespace cripser
