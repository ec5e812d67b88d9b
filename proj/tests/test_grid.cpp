#include <doctest.h>

#include <algorithm>
#include <set>

#include "cripser/grid.hpp"
#include "test_helpers.hpp"

using namespace cripser;

TEST_SUITE_BEGIN("grid");

TEST_CASE("make_image pads trailing axes") {
  const std::vector<double> v{0, 9, 0};
  const Image img = make_image(v, {3});
  CHECK(img.shape() == GridShape{3, 1, 1});
  CHECK(img.ndim() == 1);
  CHECK(img.shape().effective_dim() == 1);

  const Image ring = testing::ring_image();
  CHECK(ring.shape() == GridShape{3, 3, 1});
  CHECK(ring.value(Voxel{1, 1, 0}) == 9);
  CHECK(ring.shape().effective_dim() == 2);

  const std::vector<double> one{5};
  const Image single = make_image(one, {1, 1, 1});
  CHECK(single.shape().voxel_count() == 1);
  CHECK(single.shape().effective_dim() == 1);
}

TEST_CASE("make_image rejects bad input") {
  const std::vector<double> v{1, 2, 3};
  CHECK_THROWS_AS(make_image(v, {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_image(v, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_image(v, {3, 1, 1, 1}), std::invalid_argument);
  const std::vector<double> nan{1, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(make_image(nan, {2}), std::invalid_argument);
}

TEST_CASE("cell_vertices") {
  SUBCASE("edge of type 0") {
    const auto v = cell_vertices({2, 3, 4, 0, 1});
    CHECK(v == std::vector<Voxel>{{2, 3, 4}, {3, 3, 4}});
  }
  SUBCASE("z edge uses the z axis") {
    const auto v = cell_vertices({2, 3, 4, 2, 1});
    CHECK(v == std::vector<Voxel>{{2, 3, 4}, {2, 3, 5}});
  }
  SUBCASE("vertex") { CHECK(cell_vertices({1, 1, 1, 0, 0}) == std::vector<Voxel>{{1, 1, 1}}); }
  SUBCASE("cube") {
    const auto v = cell_vertices({0, 0, 0, 0, 3});
    const std::set<Voxel> got(v.begin(), v.end());
    std::set<Voxel> want;
    for (std::uint32_t z = 0; z < 2; ++z)
      for (std::uint32_t y = 0; y < 2; ++y)
        for (std::uint32_t x = 0; x < 2; ++x) want.insert({x, y, z});
    CHECK(v.size() == 8);
    CHECK(got == want);
  }
  SUBCASE("square omitting x spans y and z") {
    const auto v = cell_vertices({0, 0, 0, 0, 2});
    CHECK(v == std::vector<Voxel>{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
  }
  CHECK_THROWS_AS(cell_vertices({0, 0, 0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(cell_vertices({0, 0, 0, 1, 3}), std::invalid_argument);
}

TEST_CASE("cell_birth is the max over vertices") {
  const Image ring = testing::ring_image();
  CHECK(cell_birth(ring, {1, 1, 0, 0, 0}) == 9);
  CHECK(cell_birth(ring, {0, 0, 0, 2, 2}) == 9);
  CHECK(cell_birth(ring, {0, 0, 0, 0, 1}) == 0);
  CHECK_THROWS_AS(cell_birth(ring, {2, 0, 0, 0, 1}), std::out_of_range);
  CHECK_THROWS_AS(cell_birth(ring, {0, 0, 0, 0, 3}), std::out_of_range);
}

TEST_CASE("cofaces") {
  SUBCASE("corner of a 2x2 image") {
    auto c = cofaces({2, 2, 1}, {0, 0, 0, 0, 0});
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<CellKey>{{0, 0, 0, 0, 1}, {0, 0, 0, 1, 1}});
  }
  SUBCASE("edge without squares") { CHECK(cofaces({2, 1, 1}, {0, 0, 0, 0, 1}).empty()); }
  SUBCASE("interior square of a volume") {
    auto c = cofaces({3, 3, 3}, {1, 1, 1, 2, 2});
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<CellKey>{{1, 1, 0, 0, 3}, {1, 1, 1, 0, 3}});
  }
  SUBCASE("interior counts") {
    const GridShape s{5, 5, 5};
    CHECK(cofaces(s, {2, 2, 2, 0, 0}).size() == 6);
    CHECK(cofaces(s, {2, 2, 2, 1, 1}).size() == 4);
    CHECK(cofaces(s, {2, 2, 2, 1, 2}).size() == 2);
    CHECK(cofaces(s, {2, 2, 2, 0, 3}).empty());
  }
}

TEST_CASE("faces") {
  const GridShape s{4, 4, 4};
  auto f = faces(s, {1, 2, 3, 0, 1});
  std::sort(f.begin(), f.end());
  CHECK(f == std::vector<CellKey>{{1, 2, 3, 0, 0}, {2, 2, 3, 0, 0}});

  const auto cube = faces(s, {0, 0, 0, 0, 3});
  CHECK(cube.size() == 6);
  for (const auto& q : cube) CHECK(q.d == 2);

  const auto sq = faces(s, {0, 0, 0, 2, 2});
  CHECK(sq.size() == 4);
  CHECK(std::count_if(sq.begin(), sq.end(), [](const CellKey& e) { return e.m == 0; }) == 2);
  CHECK(std::count_if(sq.begin(), sq.end(), [](const CellKey& e) { return e.m == 1; }) == 2);
}

TEST_CASE("order_key") {
  const std::vector<double> v{5, 3, 3};
  const Image img = make_image(v, {3});
  CHECK(order_key(img, {0, 0, 0, 0, 0}) < order_key(img, {1, 0, 0, 0, 0}));
  CHECK(order_key(img, {1, 0, 0, 0, 0}) == order_key(img, {1, 0, 0, 0, 0}));
  CHECK(order_key(img, {1, 0, 0, 0, 0}) < order_key(img, {2, 0, 0, 0, 0}));

  const Image flat = make_image(std::vector<double>(4, 1.0), {2, 2});
  CHECK(order_key(flat, {0, 0, 0, 0, 1}) < order_key(flat, {0, 0, 0, 1, 1}));
}

// Exhaustive checks on every grid shape up to 4x4x4.
TEST_CASE("incidence, counting and order properties") {
  std::mt19937_64 rng(7);
  for (std::size_t nz = 1; nz <= 4; ++nz)
    for (std::size_t ny = 1; ny <= 4; ++ny)
      for (std::size_t nx = 1; nx <= 4; ++nx) {
        const GridShape s{nx, ny, nz};
        const Image img = testing::random_image(rng, {nx, ny, nz}, 3);
        const CubicalComplex complex(img);
        for (int d = 0; d <= 3; ++d) {
          const auto cells = enumerate_cells(s, d);
          REQUIRE(cells.size() == cell_count(s, d));
          std::set<CellOrderKey> keys;
          for (const auto& c : cells) {
            REQUIRE(in_bounds(s, c));
            keys.insert(order_key(img, c));
            REQUIRE(complex.birth(complex.pack(c), d) == cell_birth(img, c));
            if (d > 0) {
              const auto fs = faces(s, c);
              REQUIRE(fs.size() == static_cast<std::size_t>(2 * d));
              double max_face = -kInfinity;
              for (const auto& f : fs) {
                const auto back = cofaces(s, f);
                REQUIRE(std::find(back.begin(), back.end(), c) != back.end());
                max_face = std::max(max_face, cell_birth(img, f));
              }
              REQUIRE(cell_birth(img, c) == max_face);
            }
            if (d < 3) {
              for (const auto& cf : cofaces(s, c)) {
                const auto back = faces(s, cf);
                REQUIRE(std::find(back.begin(), back.end(), c) != back.end());
              }
              std::vector<CellKey> packed;
              complex.for_each_coface(complex.pack(c), d, [&](CellId id, double b) {
                packed.push_back(complex.unpack(id, d + 1));
                REQUIRE(b == cell_birth(img, packed.back()));
              });
              auto direct = cofaces(s, c);
              std::sort(packed.begin(), packed.end());
              std::sort(direct.begin(), direct.end());
              REQUIRE(packed == direct);
            }
          }
          // Strict total order within a dimension.
          REQUIRE(keys.size() == cells.size());
        }
        CHECK(cell_count(s, 1) == (nx - 1) * ny * nz + nx * (ny - 1) * nz + nx * ny * (nz - 1));
      }
}

TEST_SUITE_END();
