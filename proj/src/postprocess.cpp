#include "cripser/postprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cripser {

double otsu_threshold(const Image& img) {
  constexpr std::size_t kBins = 256;
  double lo = kInfinity;
  double hi = -kInfinity;
  for (double v : img.values()) {
    if (!img.is_finite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo < hi)) throw std::invalid_argument("Otsu threshold needs at least two distinct values");

  std::array<double, kBins> hist{};
  const double width = (hi - lo) / kBins;
  for (double v : img.values()) {
    if (!img.is_finite(v)) continue;
    auto bin = static_cast<std::size_t>((v - lo) / (hi - lo) * kBins);
    hist[std::min(bin, kBins - 1)] += 1.0;
  }
  std::array<double, kBins> centers{};
  for (std::size_t i = 0; i < kBins; ++i) centers[i] = lo + width * (static_cast<double>(i) + 0.5);

  // Class 1 = bins [0, i], class 2 = bins (i, 255].
  std::array<double, kBins> w1{}, s1{}, w2{}, s2{};
  double w = 0, s = 0;
  for (std::size_t i = 0; i < kBins; ++i) {
    w += hist[i];
    s += hist[i] * centers[i];
    w1[i] = w;
    s1[i] = s;
  }
  w = 0, s = 0;
  for (std::size_t i = kBins; i-- > 0;) {
    w += hist[i];
    s += hist[i] * centers[i];
    w2[i] = w;
    s2[i] = s;
  }
  std::size_t best = 0;
  double best_var = -1.0;
  for (std::size_t i = 0; i + 1 < kBins; ++i) {
    if (w1[i] == 0 || w2[i + 1] == 0) continue;
    const double diff = s1[i] / w1[i] - s2[i + 1] / w2[i + 1];
    const double var = w1[i] * w2[i + 1] * diff * diff;
    if (var > best_var) {
      best_var = var;
      best = i;
    }
  }
  return centers[best];
}

BinaryMask BinaryMask::complement() const {
  BinaryMask out{shape, bits};
  for (auto& b : out.bits) b = !b;
  return out;
}

BinaryMask threshold_mask(const Image& img, double threshold) {
  BinaryMask m{img.shape(), std::vector<std::uint8_t>(img.values().size())};
  for (std::size_t i = 0; i < m.bits.size(); ++i) m.bits[i] = img.value(i) >= threshold;
  return m;
}

namespace {

constexpr double kFar = 1e20;

// Squared distance transform of one line (Felzenszwalb & Huttenlocher):
// lower envelope of the parabolas (q - p)^2 + f[p].
void squared_dt_line(std::vector<double>& f, std::vector<double>& d, std::vector<std::size_t>& v,
                     std::vector<double>& z) {
  const std::size_t n = f.size();
  d.resize(n);
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  std::size_t k = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  const auto inter = [&](std::size_t q, std::size_t p) {
    const double qd = static_cast<double>(q);
    const double pd = static_cast<double>(p);
    return ((f[q] + qd * qd) - (f[p] + pd * pd)) / (2.0 * qd - 2.0 * pd);
  };
  for (std::size_t q = 1; q < n; ++q) {
    double s = inter(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = inter(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
    d[q] = diff * diff + f[v[k]];
  }
  f.swap(d);
}

std::vector<double> l2_distance(const BinaryMask& mask) {
  const GridShape& s = mask.shape;
  std::vector<double> g(mask.bits.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = mask[i] ? kFar : 0.0;

  const std::array<std::size_t, 3> n{s.nx, s.ny, s.nz};
  const std::array<std::size_t, 3> stride{1, s.nx, s.nx * s.ny};
  std::vector<double> line, tmp, z;
  std::vector<std::size_t> v;
  for (int axis = 0; axis < 3; ++axis) {
    if (n[axis] < 2) continue;
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    line.resize(n[axis]);
    for (std::size_t i2 = 0; i2 < n[a2]; ++i2)
      for (std::size_t i1 = 0; i1 < n[a1]; ++i1) {
        const std::size_t base = i1 * stride[a1] + i2 * stride[a2];
        for (std::size_t q = 0; q < n[axis]; ++q) line[q] = g[base + q * stride[axis]];
        squared_dt_line(line, tmp, v, z);
        for (std::size_t q = 0; q < n[axis]; ++q) g[base + q * stride[axis]] = line[q];
      }
  }
  for (double& x : g) x = std::sqrt(x);
  return g;
}

// Two-pass city-block chamfer; exact L1 distance on a box-shaped grid.
std::vector<double> l1_distance(const BinaryMask& mask) {
  const GridShape& s = mask.shape;
  std::vector<double> g(mask.bits.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = mask[i] ? kFar : 0.0;
  const std::size_t sx = 1, sy = s.nx, sz = s.nx * s.ny;
  for (std::size_t z = 0; z < s.nz; ++z)
    for (std::size_t y = 0; y < s.ny; ++y)
      for (std::size_t x = 0; x < s.nx; ++x) {
        const std::size_t i = s.index(x, y, z);
        if (x > 0) g[i] = std::min(g[i], g[i - sx] + 1);
        if (y > 0) g[i] = std::min(g[i], g[i - sy] + 1);
        if (z > 0) g[i] = std::min(g[i], g[i - sz] + 1);
      }
  for (std::size_t z = s.nz; z-- > 0;)
    for (std::size_t y = s.ny; y-- > 0;)
      for (std::size_t x = s.nx; x-- > 0;) {
        const std::size_t i = s.index(x, y, z);
        if (x + 1 < s.nx) g[i] = std::min(g[i], g[i + sx] + 1);
        if (y + 1 < s.ny) g[i] = std::min(g[i], g[i + sy] + 1);
        if (z + 1 < s.nz) g[i] = std::min(g[i], g[i + sz] + 1);
      }
  return g;
}

}  // namespace

std::vector<double> distance_transform(const BinaryMask& mask, DistanceMetric metric) {
  if (mask.bits.size() != mask.shape.voxel_count())
    throw std::invalid_argument("mask size does not match its shape");
  return metric == DistanceMetric::L1 ? l1_distance(mask) : l2_distance(mask);
}

Image signed_distance_transform(const BinaryMask& mask, DistanceMetric metric) {
  const auto ones = std::count(mask.bits.begin(), mask.bits.end(), std::uint8_t{1});
  if (ones == 0 || static_cast<std::size_t>(ones) == mask.bits.size())
    throw std::invalid_argument("signed distance transform needs both foreground and background");
  std::vector<double> inside = distance_transform(mask, metric);
  const std::vector<double> outside = distance_transform(mask.complement(), metric);
  for (std::size_t i = 0; i < inside.size(); ++i) inside[i] -= outside[i];
  return Image(mask.shape, std::move(inside));
}

namespace {

void check_location(const GridShape& shape, const Voxel& v) {
  if (v.x >= shape.nx || v.y >= shape.ny || v.z >= shape.nz)
    throw std::invalid_argument("diagram location lies outside the image");
}

}  // namespace

Image lifetime_image(const PersistenceDiagram& diag, const GridShape& shape, int d,
                     EssentialPolicy policy) {
  std::vector<double> values(shape.voxel_count(), 0.0);
  for (const auto& p : diag.pairs) {
    if (p.dim != d || !p.birth_loc) continue;
    double life = p.lifetime();
    if (p.is_essential()) {
      if (!policy.clip_to) continue;
      life = std::max(0.0, *policy.clip_to - p.birth);
    }
    check_location(shape, *p.birth_loc);
    double& cell = values[shape.index(*p.birth_loc)];
    cell = std::max(cell, life);
  }
  return Image(shape, std::move(values));
}

Tensor stack_lifetime_enhanced(const Image& img, const PersistenceDiagram& diag,
                               std::span<const int> dims, EssentialPolicy policy) {
  if (diag.algorithm != Algorithm::Imported && diag.shape != img.shape())
    throw std::invalid_argument("diagram was computed on an image of a different shape");
  Tensor out;
  out.shape = array_shape(img);
  out.shape.insert(out.shape.begin(), 1 + dims.size());
  out.data.reserve(out.size());
  out.data.insert(out.data.end(), img.values().begin(), img.values().end());
  for (int d : dims) {
    const Image life = lifetime_image(diag, img.shape(), d, policy);
    out.data.insert(out.data.end(), life.values().begin(), life.values().end());
  }
  return out;
}

namespace {

std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
  if (v <= lo) return 0;
  if (v >= hi) return bins - 1;
  return std::min(bins - 1, static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins)));
}

}  // namespace

Tensor persistent_histogram_image(const PersistenceDiagram& diag, const GridShape& shape,
                                  std::span<const std::size_t> array_shape, int d,
                                  const HistogramSpec& spec) {
  if (spec.birth_bins == 0 || spec.life_bins == 0)
    throw std::invalid_argument("histogram bin counts must be positive");
  if (!(spec.birth_min < spec.birth_max) || !(spec.life_min < spec.life_max))
    throw std::invalid_argument("histogram ranges must be non-empty");
  const std::size_t channels = spec.birth_bins * spec.life_bins;
  const std::size_t nvox = shape.voxel_count();
  Tensor out;
  out.shape.assign(array_shape.begin(), array_shape.end());
  out.shape.insert(out.shape.begin(), channels);
  if (out.size() != channels * nvox)
    throw std::invalid_argument("array shape does not match the grid");
  out.data.assign(channels * nvox, 0.0);
  for (const auto& p : diag.pairs) {
    if (p.dim != d || p.is_essential() || !p.birth_loc) continue;
    check_location(shape, *p.birth_loc);
    const std::size_t b = bin_of(p.birth, spec.birth_min, spec.birth_max, spec.birth_bins);
    const std::size_t l = bin_of(p.lifetime(), spec.life_min, spec.life_max, spec.life_bins);
    out.data[(b * spec.life_bins + l) * nvox + shape.index(*p.birth_loc)] += 1.0;
  }
  return out;
}

HistogramSpec fit_histogram(const PersistenceDiagram& diag, int d, std::size_t birth_bins,
                            std::size_t life_bins) {
  HistogramSpec spec{birth_bins, life_bins, kInfinity, -kInfinity, kInfinity, -kInfinity};
  for (const auto& p : diag.pairs) {
    if (p.dim != d || p.is_essential()) continue;
    spec.birth_min = std::min(spec.birth_min, p.birth);
    spec.birth_max = std::max(spec.birth_max, p.birth);
    spec.life_min = std::min(spec.life_min, p.lifetime());
    spec.life_max = std::max(spec.life_max, p.lifetime());
  }
  if (spec.birth_min > spec.birth_max) {
    spec.birth_min = spec.life_min = 0.0;
    spec.birth_max = spec.life_max = 1.0;
  }
  if (spec.birth_max == spec.birth_min) spec.birth_max = spec.birth_min + 1.0;
  if (spec.life_max == spec.life_min) spec.life_max = spec.life_min + 1.0;
  return spec;
}

}  // namespace cripser
