#include <doctest.h>

#include "cripser/cohomology.hpp"
#include "cripser/oracle.hpp"
#include "cripser/top_dim.hpp"
#include "test_helpers.hpp"

using namespace cripser;
using Barcode = std::vector<std::pair<double, double>>;

namespace {

void require_top_matches(const Image& img) {
  const int top = img.shape().effective_dim() - 1;
  const auto dual = compute_top_dim(img);
  INFO(testing::describe(img));
  REQUIRE(barcode(dual, top) == barcode(compute_ph(img, top), top));
  for (const auto& p : dual.pairs) {
    REQUIRE(p.dim == top);
    REQUIRE(p.birth_loc);
    REQUIRE(p.death_loc.has_value() == !p.is_essential());
    if (p.death_loc) REQUIRE(img.value(*p.death_loc) <= p.death);
  }
}

}  // namespace

TEST_SUITE_BEGIN("top_dim");

TEST_CASE("ring image with a high centre") {
  const auto diag = compute_top_dim(testing::ring_image());
  REQUIRE(diag.pairs.size() == 1);
  CHECK(diag.pairs[0].dim == 1);
  CHECK(diag.pairs[0].birth == 0);
  CHECK(diag.pairs[0].death == 9);
  CHECK(*diag.pairs[0].death_loc == Voxel{0, 0, 0});
  CHECK(diag.algorithm == Algorithm::TopDim);
  CHECK(diag.maxdim == 1);
}

TEST_CASE("constant and one-dimensional images") {
  CHECK(compute_top_dim(make_image(std::vector<double>(9, 1.0), {3, 3})).pairs.empty());
  CHECK(compute_top_dim(make_image(std::vector<double>(27, 1.0), {3, 3, 3})).pairs.empty());
  CHECK_THROWS_AS(compute_top_dim(testing::signal_image()), std::invalid_argument);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(compute_top_dim(make_image(one, {1, 1, 1})), std::invalid_argument);
}

TEST_CASE("void in a volume") {
  std::vector<double> v(27, 0.0);
  v[13] = 9;
  const auto diag = compute_top_dim(make_image(v, {3, 3, 3}));
  CHECK(barcode(diag, 2) == Barcode{{0, 9}});
}

TEST_CASE("every 3x3 image with values in {0,1,2}") {
  std::vector<double> v(9);
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (auto& x : v) x = c % 3, c /= 3;
    require_top_matches(make_image(v, {3, 3}));
  }
}

TEST_CASE("random planes and volumes") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) require_top_matches(testing::random_image(rng, {6, 6}, 5));
  for (int trial = 0; trial < 200; ++trial) require_top_matches(testing::random_image(rng, {4, 4, 4}, 5));
  for (int trial = 0; trial < 150; ++trial) require_top_matches(testing::voided_image(rng, 7, 1 + trial % 4));
  // Flat volumes whose two spanning axes are not (x, y).
  for (int trial = 0; trial < 100; ++trial) {
    require_top_matches(testing::random_image(rng, {4, 1, 5}, 4));
    require_top_matches(testing::random_image(rng, {1, 5, 4}, 4));
  }
}

TEST_CASE("voxels outside the domain") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Image base = testing::random_image(rng, {5, 5}, 5);
    std::vector<double> v(base.values().begin(), base.values().end());
    for (double& x : v)
      if (x == 5) x = 1e300;
    const Image img(base.shape(), v);
    const auto dual = compute_top_dim(img);
    REQUIRE(barcode(dual, 1) == barcode(oracle_ph(img, 1), 1));
  }
}

TEST_SUITE_END();
