#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser::testing {

inline Image ring_image() {
  const std::vector<double> v{0, 0, 0, 0, 9, 0, 0, 0, 0};
  return make_image(v, {3, 3});
}

inline Image signal_image() {
  const std::vector<double> v{-2, 1, -1, 2, -1};
  return make_image(v, {5});
}

/// Integer-valued image with random extents in [1, max_extent] per axis.
inline Image random_image(std::mt19937_64& rng, std::size_t max_extent, int max_value,
                          int axes = 3) {
  std::uniform_int_distribution<std::size_t> ext(1, max_extent);
  std::uniform_int_distribution<int> val(0, max_value);
  std::vector<std::size_t> dims;
  for (int a = 0; a < axes; ++a) dims.push_back(ext(rng));
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<double> v(n);
  for (auto& x : v) x = val(rng);
  return make_image(v, dims);
}

/// Fixed-shape random integer image.
inline Image random_image(std::mt19937_64& rng, std::vector<std::size_t> dims, int max_value) {
  std::uniform_int_distribution<int> val(0, max_value);
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<double> v(n);
  for (auto& x : v) x = val(rng);
  return make_image(v, dims);
}

/// Random 3D image with low-valued 3x3x3 shells around higher centres, so
/// that 2-cycles appear.
inline Image voided_image(std::mt19937_64& rng, std::size_t n, int shells) {
  std::uniform_int_distribution<int> high(5, 9), low(0, 2), centre(3, 9);
  std::uniform_int_distribution<std::size_t> corner(0, n - 3);
  std::vector<double> v(n * n * n);
  for (auto& x : v) x = high(rng);
  for (int k = 0; k < shells; ++k) {
    const std::size_t ox = corner(rng), oy = corner(rng), oz = corner(rng);
    for (std::size_t z = 0; z < 3; ++z)
      for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t x = 0; x < 3; ++x)
          v[(ox + x) + n * ((oy + y) + n * (oz + z))] = (x == 1 && y == 1 && z == 1) ? centre(rng) : low(rng);
  }
  return make_image(v, {n, n, n});
}

inline std::string describe(const Image& img) {
  std::string s = "shape=(" + std::to_string(img.shape().nx) + "," + std::to_string(img.shape().ny) +
                  "," + std::to_string(img.shape().nz) + ") values=[";
  for (double v : img.values()) s += std::to_string(static_cast<long long>(v)) + " ";
  return s + "]";
}

inline std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("cripser_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace cripser::testing
