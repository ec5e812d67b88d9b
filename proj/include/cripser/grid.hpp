#pragma once

// Weighted cubical complex (V-construction) over a 1D/2D/3D voxel grid.
//
// Cells are identified by (x, y, z, m, d): the location of their lowest
// corner voxel, a type m and a dimension d. For 1-cells m is the spanned
// axis (0 -> x, 1 -> y, 2 -> z); for 2-cells m is the *omitted* axis
// (m = 2 spans x and y). 0- and 3-cells only have type 0.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cripser {

inline constexpr double kDefaultInfinityThreshold = 1e300;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an input file or array does not have the expected layout.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Thrown when an internal invariant of a reduction is violated.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Voxel {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t z = 0;

  friend bool operator==(const Voxel&, const Voxel&) = default;
  // Lexicographic on (z, y, x), i.e. memory order.
  friend std::strong_ordering operator<=>(const Voxel& a, const Voxel& b) {
    if (auto c = a.z <=> b.z; c != 0) return c;
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

struct GridShape {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nz = 1;

  friend bool operator==(const GridShape&, const GridShape&) = default;

  std::size_t voxel_count() const { return nx * ny * nz; }
  std::size_t extent(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }

  /// Number of axes with more than one voxel; an all-size-1 grid counts as 1D.
  int effective_dim() const {
    int d = (nx > 1) + (ny > 1) + (nz > 1);
    return d == 0 ? 1 : d;
  }

  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const {
    return x + nx * (y + ny * z);
  }
  std::size_t index(const Voxel& v) const { return index(v.x, v.y, v.z); }

  Voxel voxel(std::size_t idx) const {
    return Voxel{static_cast<std::uint32_t>(idx % nx),
                 static_cast<std::uint32_t>((idx / nx) % ny),
                 static_cast<std::uint32_t>(idx / (nx * ny))};
  }
};

/// Real-valued function on a voxel grid, stored x-fastest.
///
/// Voxels with value >= infinity_threshold lie outside the domain: they are
/// still cells of the complex but never give birth to a reported class.
class Image {
public:
  Image() = default;
  Image(GridShape shape, std::vector<double> values, int ndim = 0,
        double infinity_threshold = kDefaultInfinityThreshold);

  const GridShape& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  double infinity_threshold() const { return infinity_threshold_; }

  /// Number of axes of the array this image was built from (1-3).
  int ndim() const { return ndim_; }

  double value(std::size_t idx) const { return values_[idx]; }
  double value(const Voxel& v) const { return values_[shape_.index(v)]; }

  bool is_finite(double value) const { return value < infinity_threshold_; }

private:
  GridShape shape_;
  std::vector<double> values_;
  int ndim_ = 1;
  double infinity_threshold_ = kDefaultInfinityThreshold;
};

/// Builds an image from row-major data; `dims` lists sizes x-first
/// (dims[0] = nx), missing trailing axes become 1.
Image make_image(std::span<const double> raw, std::span<const std::size_t> dims,
                 double infinity_threshold = kDefaultInfinityThreshold);

inline Image make_image(std::span<const double> raw, std::initializer_list<std::size_t> dims,
                        double infinity_threshold = kDefaultInfinityThreshold) {
  return make_image(raw, std::span<const std::size_t>(dims.begin(), dims.size()),
                    infinity_threshold);
}

struct CellKey {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t z = 0;
  std::uint8_t m = 0;
  std::uint8_t d = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;

  Voxel location() const { return Voxel{x, y, z}; }
};

std::string to_string(const CellKey& c);

/// Sort key realising the total order (-birth, m, z, y, x).
struct CellOrderKey {
  double neg_birth = 0.0;
  std::uint8_t m = 0;
  std::uint32_t z = 0;
  std::uint32_t y = 0;
  std::uint32_t x = 0;

  friend bool operator==(const CellOrderKey&, const CellOrderKey&) = default;
  friend auto operator<=>(const CellOrderKey&, const CellOrderKey&) = default;
};

/// Axes spanned by a cell of type m and dimension d (bitmask over x, y, z).
constexpr unsigned spanned_axes(int m, int d) {
  switch (d) {
    case 0: return 0u;
    case 1: return 1u << m;
    case 2: return 7u & ~(1u << m);
    default: return 7u;
  }
}

bool is_valid_type(int m, int d);

/// True iff the cell fits in the grid.
bool in_bounds(const GridShape& shape, const CellKey& c);

std::vector<Voxel> cell_vertices(const CellKey& c);

double cell_birth(const Image& img, const CellKey& c);

std::vector<CellKey> cofaces(const GridShape& shape, const CellKey& c);

std::vector<CellKey> faces(const GridShape& shape, const CellKey& c);

CellOrderKey order_key(const Image& img, const CellKey& c);

/// Every in-bounds cell of dimension d, in memory order per type.
std::vector<CellKey> enumerate_cells(const GridShape& shape, int d);

/// Closed-form count of the d-cells of a grid.
std::size_t cell_count(const GridShape& shape, int d);

// ---------------------------------------------------------------------------
// Packed cell identifiers used by the reduction engines.
//
// Within a fixed dimension a cell is packed as m * voxel_count + voxel_index,
// so ascending ids coincide with ascending (m, z, y, x).

using CellId = std::uint64_t;

class CubicalComplex {
public:
  explicit CubicalComplex(const Image& img);

  const Image& image() const { return *img_; }
  const GridShape& shape() const { return shape_; }

  CellId pack(const CellKey& c) const {
    return static_cast<CellId>(c.m) * nvox_ + shape_.index(c.x, c.y, c.z);
  }
  CellKey unpack(CellId id, int d) const {
    const Voxel v = shape_.voxel(id % nvox_);
    return CellKey{v.x, v.y, v.z, static_cast<std::uint8_t>(id / nvox_),
                   static_cast<std::uint8_t>(d)};
  }
  Voxel location(CellId id) const { return shape_.voxel(id % nvox_); }

  /// Upper bound (exclusive) on packed ids in any dimension.
  CellId id_bound() const { return 3 * nvox_; }

  double birth(CellId id, int d) const;

  /// Calls fn(id, birth) for every in-bounds coface of the d-cell `id`.
  template <class Fn>
  void for_each_coface(CellId id, int d, Fn&& fn) const;

  /// Calls fn(id, birth) for every face of the d-cell `id`.
  template <class Fn>
  void for_each_face(CellId id, int d, Fn&& fn) const;

  /// Calls fn(id) for every in-bounds d-cell in ascending id order.
  template <class Fn>
  void for_each_cell(int d, Fn&& fn) const;

private:
  bool fits(std::size_t x, std::size_t y, std::size_t z, unsigned axes) const {
    return (!(axes & 1u) || x + 1 < shape_.nx) && (!(axes & 2u) || y + 1 < shape_.ny) &&
           (!(axes & 4u) || z + 1 < shape_.nz);
  }

  const Image* img_;
  GridShape shape_;
  std::size_t nvox_;
  std::array<std::size_t, 3> stride_;
};

/// Set of cells of one dimension, keyed by packed id.
class CellMask {
public:
  CellMask() = default;
  explicit CellMask(CellId bound) : bits_(bound, false) {}

  bool contains(CellId id) const { return id < bits_.size() && bits_[id]; }
  void insert(CellId id) {
    if (id >= bits_.size()) bits_.resize(id + 1, false);
    if (!bits_[id]) {
      bits_[id] = true;
      ++size_;
    }
  }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

private:
  std::vector<bool> bits_;
  std::size_t size_ = 0;
};

// Type of the cell spanning exactly `axes` (bitmask) in dimension popcount(axes).
inline int type_of_axes(unsigned axes, int d) {
  switch (d) {
    case 1: return axes == 1u ? 0 : axes == 2u ? 1 : 2;
    case 2: return (~axes & 7u) == 1u ? 0 : (~axes & 7u) == 2u ? 1 : 2;
    default: return 0;
  }
}

inline double CubicalComplex::birth(CellId id, int d) const {
  const std::size_t vox = id % nvox_;
  const unsigned axes = spanned_axes(static_cast<int>(id / nvox_), d);
  const auto vals = img_->values();
  double b = vals[vox];
  for (unsigned sub = axes; sub != 0; sub = (sub - 1) & axes) {
    std::size_t off = 0;
    for (int a = 0; a < 3; ++a)
      if (sub & (1u << a)) off += stride_[a];
    b = std::max(b, vals[vox + off]);
  }
  return b;
}

template <class Fn>
void CubicalComplex::for_each_coface(CellId id, int d, Fn&& fn) const {
  const std::size_t vox = id % nvox_;
  const unsigned axes = spanned_axes(static_cast<int>(id / nvox_), d);
  const Voxel v = shape_.voxel(vox);
  const std::array<std::size_t, 3> coord{v.x, v.y, v.z};
  for (int a = 0; a < 3; ++a) {
    if (axes & (1u << a)) continue;
    const unsigned cax = axes | (1u << a);
    const auto cm = static_cast<CellId>(type_of_axes(cax, d + 1));
    // The coface either starts at this voxel or one step back along axis a.
    for (int back = 0; back < 2; ++back) {
      if (back && coord[a] == 0) continue;
      std::array<std::size_t, 3> c = coord;
      c[a] -= back;
      if (!fits(c[0], c[1], c[2], cax)) continue;
      const CellId cid = cm * nvox_ + shape_.index(c[0], c[1], c[2]);
      fn(cid, birth(cid, d + 1));
    }
  }
}

template <class Fn>
void CubicalComplex::for_each_face(CellId id, int d, Fn&& fn) const {
  const std::size_t vox = id % nvox_;
  const unsigned axes = spanned_axes(static_cast<int>(id / nvox_), d);
  for (int a = 0; a < 3; ++a) {
    if (!(axes & (1u << a))) continue;
    const unsigned fax = axes & ~(1u << a);
    const auto fm = static_cast<CellId>(type_of_axes(fax, d - 1));
    for (int fwd = 0; fwd < 2; ++fwd) {
      const CellId fid = fm * nvox_ + vox + (fwd ? stride_[a] : 0);
      fn(fid, birth(fid, d - 1));
    }
  }
}

template <class Fn>
void CubicalComplex::for_each_cell(int d, Fn&& fn) const {
  const int types = (d == 1 || d == 2) ? 3 : 1;
  for (int m = 0; m < types; ++m) {
    const unsigned axes = spanned_axes(m, d);
    for (std::size_t z = 0; z < shape_.nz; ++z)
      for (std::size_t y = 0; y < shape_.ny; ++y)
        for (std::size_t x = 0; x < shape_.nx; ++x)
          if (fits(x, y, z, axes))
            fn(static_cast<CellId>(m) * nvox_ + shape_.index(x, y, z));
  }
}

}  // namespace cripser
