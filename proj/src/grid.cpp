#include "cripser/grid.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cripser {

Image::Image(GridShape shape, std::vector<double> values, int ndim, double infinity_threshold)
    : shape_(shape),
      values_(std::move(values)),
      ndim_(ndim > 0 ? ndim : shape.effective_dim()),
      infinity_threshold_(infinity_threshold) {
  if (shape_.nx == 0 || shape_.ny == 0 || shape_.nz == 0)
    throw std::invalid_argument("image axes must have at least one voxel");
  if (values_.size() != shape_.voxel_count())
    throw std::invalid_argument("image value count does not match its shape");
  if (shape_.voxel_count() > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("image too large");
  for (double v : values_)
    if (std::isnan(v)) throw std::invalid_argument("image contains NaN");
}

Image make_image(std::span<const double> raw, std::span<const std::size_t> dims,
                 double infinity_threshold) {
  if (dims.empty() || dims.size() > 3)
    throw std::invalid_argument("image must have 1 to 3 dimensions, got " +
                                std::to_string(dims.size()));
  std::array<std::size_t, 3> n{1, 1, 1};
  std::copy(dims.begin(), dims.end(), n.begin());
  const std::size_t total =
      std::accumulate(n.begin(), n.end(), std::size_t{1}, std::multiplies<>());
  if (total != raw.size())
    throw std::invalid_argument("data length " + std::to_string(raw.size()) +
                                " does not match dimensions (product " + std::to_string(total) +
                                ")");
  return Image(GridShape{n[0], n[1], n[2]}, std::vector<double>(raw.begin(), raw.end()),
               static_cast<int>(dims.size()), infinity_threshold);
}

std::string to_string(const CellKey& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.z) + "," +
         std::to_string(c.m) + "," + std::to_string(c.d) + ")";
}

bool is_valid_type(int m, int d) {
  if (d == 0 || d == 3) return m == 0;
  if (d == 1 || d == 2) return m >= 0 && m <= 2;
  return false;
}

namespace {

void require_valid_type(const CellKey& c) {
  if (!is_valid_type(c.m, c.d))
    throw std::invalid_argument("invalid cell type/dimension " + to_string(c));
}

}  // namespace

bool in_bounds(const GridShape& shape, const CellKey& c) {
  if (!is_valid_type(c.m, c.d)) return false;
  const unsigned axes = spanned_axes(c.m, c.d);
  const std::array<std::size_t, 3> loc{c.x, c.y, c.z};
  for (int a = 0; a < 3; ++a) {
    const std::size_t need = loc[a] + ((axes >> a) & 1u);
    if (need >= shape.extent(a)) return false;
  }
  return true;
}

std::vector<Voxel> cell_vertices(const CellKey& c) {
  require_valid_type(c);
  const unsigned axes = spanned_axes(c.m, c.d);
  std::vector<Voxel> out;
  out.reserve(std::size_t{1} << c.d);
  // Enumerate subsets of the spanned axes in increasing bit order.
  for (unsigned sub = 0; sub <= axes; ++sub) {
    if ((sub & ~axes) != 0) continue;
    out.push_back(Voxel{c.x + (sub & 1u), c.y + ((sub >> 1) & 1u), c.z + ((sub >> 2) & 1u)});
  }
  return out;
}

double cell_birth(const Image& img, const CellKey& c) {
  if (!in_bounds(img.shape(), c))
    throw std::out_of_range("cell " + to_string(c) + " is outside the image");
  double b = -kInfinity;
  for (const Voxel& v : cell_vertices(c)) b = std::max(b, img.value(v));
  return b;
}

std::vector<CellKey> cofaces(const GridShape& shape, const CellKey& c) {
  require_valid_type(c);
  std::vector<CellKey> out;
  if (c.d >= 3) return out;
  const unsigned axes = spanned_axes(c.m, c.d);
  const std::array<std::uint32_t, 3> loc{c.x, c.y, c.z};
  for (int a = 0; a < 3; ++a) {
    if (axes & (1u << a)) continue;
    const unsigned cax = axes | (1u << a);
    const int d = c.d + 1;
    for (int back = 0; back < 2; ++back) {
      if (back && loc[a] == 0) continue;
      auto l = loc;
      l[a] -= back;
      const CellKey cf{l[0], l[1], l[2], static_cast<std::uint8_t>(type_of_axes(cax, d)),
                       static_cast<std::uint8_t>(d)};
      if (in_bounds(shape, cf)) out.push_back(cf);
    }
  }
  return out;
}

std::vector<CellKey> faces(const GridShape& shape, const CellKey& c) {
  require_valid_type(c);
  std::vector<CellKey> out;
  if (c.d == 0) return out;
  const unsigned axes = spanned_axes(c.m, c.d);
  const int d = c.d - 1;
  for (int a = 0; a < 3; ++a) {
    if (!(axes & (1u << a))) continue;
    const unsigned fax = axes & ~(1u << a);
    for (std::uint32_t fwd = 0; fwd < 2; ++fwd) {
      const CellKey f{c.x + (a == 0 ? fwd : 0), c.y + (a == 1 ? fwd : 0),
                      c.z + (a == 2 ? fwd : 0), static_cast<std::uint8_t>(type_of_axes(fax, d)),
                      static_cast<std::uint8_t>(d)};
      if (in_bounds(shape, f)) out.push_back(f);
    }
  }
  return out;
}

CellOrderKey order_key(const Image& img, const CellKey& c) {
  return CellOrderKey{-cell_birth(img, c), c.m, c.z, c.y, c.x};
}

std::vector<CellKey> enumerate_cells(const GridShape& shape, int d) {
  std::vector<CellKey> out;
  if (d < 0 || d > 3) return out;
  const int types = (d == 1 || d == 2) ? 3 : 1;
  for (int m = 0; m < types; ++m)
    for (std::uint32_t z = 0; z < shape.nz; ++z)
      for (std::uint32_t y = 0; y < shape.ny; ++y)
        for (std::uint32_t x = 0; x < shape.nx; ++x) {
          const CellKey c{x, y, z, static_cast<std::uint8_t>(m), static_cast<std::uint8_t>(d)};
          if (in_bounds(shape, c)) out.push_back(c);
        }
  return out;
}

std::size_t cell_count(const GridShape& shape, int d) {
  if (d < 0 || d > 3) return 0;
  const int types = (d == 1 || d == 2) ? 3 : 1;
  std::size_t total = 0;
  for (int m = 0; m < types; ++m) {
    const unsigned axes = spanned_axes(m, d);
    std::size_t count = 1;
    for (int a = 0; a < 3; ++a) {
      const std::size_t n = shape.extent(a);
      count *= (axes & (1u << a)) ? (n > 0 ? n - 1 : 0) : n;
    }
    total += count;
  }
  return total;
}

CubicalComplex::CubicalComplex(const Image& img)
    : img_(&img),
      shape_(img.shape()),
      nvox_(img.shape().voxel_count()),
      stride_{1, img.shape().nx, img.shape().nx * img.shape().ny} {}

}  // namespace cripser
