#include <cstring>
#include <fstream>

#include "cripser/io.hpp"

namespace cripser {

namespace {

class ByteReader {
public:
  ByteReader(std::string_view bytes, std::string name) : bytes_(bytes), name_(std::move(name)) {}

  template <class T>
  T read() {
    if (bytes_.size() - pos_ < sizeof(T)) throw FormatError(name_ + ": truncated DIPHA file");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

private:
  std::string_view bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

template <class T>
void put(std::string& out, T v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

void check_header(ByteReader& r, std::int64_t expected_type, const std::string& name) {
  if (r.read<std::int64_t>() != kDiphaMagic) throw FormatError(name + ": not a DIPHA file (bad magic)");
  const auto type = r.read<std::int64_t>();
  if (type != expected_type)
    throw FormatError(name + ": DIPHA file type " + std::to_string(type) + ", expected " +
                      std::to_string(expected_type));
}

}  // namespace

std::optional<std::int64_t> dipha_file_type(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::int64_t head[2];
  if (!in.read(reinterpret_cast<char*>(head), sizeof(head))) return std::nullopt;
  if (head[0] != kDiphaMagic) return std::nullopt;
  return head[1];
}

Image read_dipha_image(const std::filesystem::path& path, double infinity_threshold) {
  const std::string bytes = read_file(path);
  const std::string name = path.string();
  ByteReader r(bytes, name);
  check_header(r, kDiphaImageData, name);
  const auto count = r.read<std::int64_t>();
  const auto ndim = r.read<std::int64_t>();
  if (ndim < 1 || ndim > 3)
    throw FormatError(name + ": DIPHA image dimension " + std::to_string(ndim) + " not in 1..3");
  std::vector<std::size_t> dims;
  std::int64_t product = 1;
  for (std::int64_t i = 0; i < ndim; ++i) {
    const auto n = r.read<std::int64_t>();
    if (n < 1) throw FormatError(name + ": non-positive DIPHA lattice resolution");
    dims.push_back(static_cast<std::size_t>(n));
    product *= n;
  }
  if (product != count) throw FormatError(name + ": DIPHA value count does not match resolution");
  if (r.remaining() < static_cast<std::size_t>(count) * sizeof(double))
    throw FormatError(name + ": truncated DIPHA file");
  std::vector<double> values(static_cast<std::size_t>(count));
  for (double& v : values) v = r.read<double>();
  return make_image(values, dims, infinity_threshold);
}

void write_dipha_image(const std::filesystem::path& path, const Image& img) {
  std::string out;
  const GridShape& s = img.shape();
  std::vector<std::size_t> dims{s.nx, s.ny, s.nz};
  dims.resize(static_cast<std::size_t>(img.ndim()));
  put<std::int64_t>(out, kDiphaMagic);
  put<std::int64_t>(out, kDiphaImageData);
  put<std::int64_t>(out, static_cast<std::int64_t>(s.voxel_count()));
  put<std::int64_t>(out, static_cast<std::int64_t>(dims.size()));
  for (std::size_t n : dims) put<std::int64_t>(out, static_cast<std::int64_t>(n));
  for (double v : img.values()) put<double>(out, v);
  write_file(path, out);
}

PersistenceDiagram read_dipha_diagram(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const std::string name = path.string();
  ByteReader r(bytes, name);
  check_header(r, kDiphaPersistenceDiagram, name);
  const auto count = r.read<std::int64_t>();
  if (count < 0) throw FormatError(name + ": negative DIPHA pair count");
  PersistenceDiagram diag;
  diag.algorithm = Algorithm::Imported;
  for (std::int64_t i = 0; i < count; ++i) {
    const auto dim = r.read<std::int64_t>();
    const auto birth = r.read<double>();
    const auto death = r.read<double>();
    PersistencePair p{static_cast<int>(dim), birth, death, std::nullopt, std::nullopt};
    if (dim < 0) {
      p.dim = static_cast<int>(-dim - 1);
      p.death = kInfinity;
    }
    diag.maxdim = std::max(diag.maxdim, p.dim);
    diag.pairs.push_back(p);
  }
  diag.sort();
  return diag;
}

void write_dipha_diagram(const std::filesystem::path& path, const PersistenceDiagram& diag) {
  std::string out;
  put<std::int64_t>(out, kDiphaMagic);
  put<std::int64_t>(out, kDiphaPersistenceDiagram);
  put<std::int64_t>(out, static_cast<std::int64_t>(diag.pairs.size()));
  for (const auto& p : diag.pairs) {
    put<std::int64_t>(out, p.is_essential() ? -static_cast<std::int64_t>(p.dim) - 1 : p.dim);
    put<double>(out, p.birth);
    put<double>(out, p.death);
  }
  write_file(path, out);
}

}  // namespace cripser
