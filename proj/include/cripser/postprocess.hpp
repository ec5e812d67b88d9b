#pragma once

// Image preprocessing (thresholding, signed distance transform) and
// persistence-derived feature channels.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"
#include "cripser/io.hpp"

namespace cripser {

/// Otsu threshold over a 256-bin histogram of the finite values, returned
/// as the centre of the best bin. Pixels with value >= threshold form the
/// foreground. Throws if the image has fewer than two distinct values.
double otsu_threshold(const Image& img);

struct BinaryMask {
  GridShape shape;
  std::vector<std::uint8_t> bits;

  bool operator[](std::size_t i) const { return bits[i] != 0; }
  BinaryMask complement() const;
};

/// Foreground = voxels with value >= threshold.
BinaryMask threshold_mask(const Image& img, double threshold);

enum class DistanceMetric { L1, L2 };

/// Distance from each voxel to the nearest voxel outside the mask (0 for
/// voxels outside it).
std::vector<double> distance_transform(const BinaryMask& mask, DistanceMetric metric);

/// dt(mask) - dt(~mask): positive inside, negative outside. Throws if the
/// mask is all true or all false.
Image signed_distance_transform(const BinaryMask& mask, DistanceMetric metric);

/// How essential classes enter lifetime images: ignored, or treated as
/// dying at a fixed value.
struct EssentialPolicy {
  std::optional<double> clip_to;

  static EssentialPolicy drop() { return {}; }
  static EssentialPolicy clip(double death) { return {death}; }
};

/// Zero image with, at each birth location, the largest lifetime of the
/// dimension-d classes born there.
Image lifetime_image(const PersistenceDiagram& diag, const GridShape& shape, int d,
                     EssentialPolicy policy = EssentialPolicy::drop());

/// Channel 0 is the image, channel k the lifetime image of dims[k-1].
/// Shape (channels, ...array shape of img).
Tensor stack_lifetime_enhanced(const Image& img, const PersistenceDiagram& diag,
                               std::span<const int> dims,
                               EssentialPolicy policy = EssentialPolicy::drop());

struct HistogramSpec {
  std::size_t birth_bins = 1;
  std::size_t life_bins = 1;
  double birth_min = 0.0;
  double birth_max = 1.0;
  double life_min = 0.0;
  double life_max = 1.0;
};

/// Per-voxel 2D histogram of (birth, lifetime) of the finite dimension-d
/// classes born at that voxel, flattened to birth_bins * life_bins channels
/// (channel = birth_bin * life_bins + life_bin). Bins are left-closed, the
/// last one closed; out-of-range values go to the edge bins.
/// `array_shape` is the spatial part of the output tensor's shape.
Tensor persistent_histogram_image(const PersistenceDiagram& diag, const GridShape& shape,
                                  std::span<const std::size_t> array_shape, int d,
                                  const HistogramSpec& spec);

/// Spec with the given bin counts spanning the finite dim-d pairs of diag.
HistogramSpec fit_histogram(const PersistenceDiagram& diag, int d, std::size_t birth_bins,
                            std::size_t life_bins);

}  // namespace cripser
