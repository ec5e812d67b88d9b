#pragma once

// File formats: NPY arrays, CSV diagrams, DIPHA binaries, and the (M, 6)
// diagram matrix.
//
// Axis convention: the last NPY axis is x (fastest varying), so an array of
// shape (nz, ny, nx) maps to an image with extents (nx, ny, nz). DIPHA files
// list lattice resolutions fastest axis first, i.e. (nx, ny, nz).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser {

/// Dense float64 array in C order.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  std::size_t size() const;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

enum class LocationMode { Birth, Death, None };

/// Parses "birth", "death" or "none".
LocationMode parse_location(std::string_view s);

// -- NPY -------------------------------------------------------------------

/// Reads an NPY v1/v2/v3 file. Little-endian float64/float32, signed and
/// unsigned integers and bool are accepted and widened to float64.
Tensor read_npy_array(const std::filesystem::path& path);
Tensor parse_npy(std::string_view bytes);

/// Reads a 1-3 dimensional NPY array as an image.
Image read_npy(const std::filesystem::path& path,
               double infinity_threshold = kDefaultInfinityThreshold);

/// Writes NPY v1.0 (v2.0 if the header does not fit), '<f8', C order.
void write_npy(const std::filesystem::path& path, const Tensor& t);
std::string serialize_npy(const Tensor& t);

Image image_from_array(const Tensor& t, double infinity_threshold = kDefaultInfinityThreshold);

/// The image as an array of its original dimensionality.
Tensor image_to_array(const Image& img);

/// NPY shape of the image: reversed (nx, ny, nz) truncated to img.ndim().
std::vector<std::size_t> array_shape(const Image& img);

// -- Diagram matrix and CSV ------------------------------------------------

/// (M, 6) rows of dim, birth, death, x, y, z; (M, 3) for LocationMode::None.
/// Essential deaths are +inf; absent locations are -1.
Tensor diagram_to_array(const PersistenceDiagram& diag, LocationMode loc);

/// Inverse of diagram_to_array for (M, 3) and (M, 6) matrices. Locations are
/// read as birth locations.
PersistenceDiagram array_to_diagram(const Tensor& t);

/// One row per pair, comma separated, doubles in shortest round-trip form
/// and `inf` for essential deaths.
void write_csv(std::ostream& os, const PersistenceDiagram& diag, LocationMode loc);
void write_csv(const std::filesystem::path& path, const PersistenceDiagram& diag,
               LocationMode loc);

/// Parses CSV produced by write_csv into a (M, 3) or (M, 6) matrix.
Tensor read_csv_array(const std::filesystem::path& path);
Tensor parse_csv_array(std::string_view text);

// -- DIPHA -----------------------------------------------------------------

inline constexpr std::int64_t kDiphaMagic = 8067171840;
inline constexpr std::int64_t kDiphaImageData = 1;
inline constexpr std::int64_t kDiphaPersistenceDiagram = 2;

/// File type field of a DIPHA file, or nullopt if the magic does not match.
std::optional<std::int64_t> dipha_file_type(const std::filesystem::path& path);

Image read_dipha_image(const std::filesystem::path& path,
                       double infinity_threshold = kDefaultInfinityThreshold);
void write_dipha_image(const std::filesystem::path& path, const Image& img);

/// Pairs as (dim, birth, death); essential classes are stored with
/// dimension -dim-1. Locations are not part of the format.
PersistenceDiagram read_dipha_diagram(const std::filesystem::path& path);
void write_dipha_diagram(const std::filesystem::path& path, const PersistenceDiagram& diag);

/// NPY or DIPHA image, detected from the file's magic bytes.
Image read_image(const std::filesystem::path& path,
                 double infinity_threshold = kDefaultInfinityThreshold);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace cripser
