#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "cripser/cohomology.hpp"
#include "cripser/io.hpp"
#include "test_helpers.hpp"

using namespace cripser;
using Barcode = std::vector<std::pair<double, double>>;

namespace {

const std::filesystem::path kFixtures = CRIPSER_FIXTURE_DIR;

Tensor ring_tensor() { return Tensor{{3, 3}, {0, 0, 0, 0, 9, 0, 0, 0, 0}}; }

bool same_bits(const Tensor& a, const Tensor& b) {
  if (a.shape != b.shape || a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (std::memcmp(&a.data[i], &b.data[i], sizeof(double)) != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("NPY written by numpy") {
  CHECK(read_npy_array(kFixtures / "ring.npy") == ring_tensor());
  // Other dtypes widen to float64.
  for (const char* name : {"ring_f4.npy", "ring_i2.npy", "ring_u1.npy"}) {
    INFO(name);
    CHECK(read_npy_array(kFixtures / name) == ring_tensor());
  }
  const Tensor mask = read_npy_array(kFixtures / "mask.npy");
  CHECK(mask.data == std::vector<double>{0, 1, 1, 1, 0});

  const Image vol = read_npy(kFixtures / "volume.npy");
  CHECK(vol.shape() == GridShape{4, 3, 2});
  CHECK(vol.value(Voxel{3, 0, 0}) == 3);
  CHECK(vol.value(Voxel{0, 1, 0}) == 4);
  CHECK(vol.value(Voxel{0, 0, 1}) == 12);
  CHECK(array_shape(vol) == std::vector<std::size_t>{2, 3, 4});
  CHECK(image_to_array(vol) == read_npy_array(kFixtures / "volume.npy"));
}

TEST_CASE("NPY writer matches numpy byte for byte") {
  CHECK(serialize_npy(ring_tensor()) == read_file(kFixtures / "ring.npy"));
  CHECK(serialize_npy(read_npy_array(kFixtures / "volume.npy")) == read_file(kFixtures / "volume.npy"));
}

TEST_CASE("NPY rejects what it cannot read") {
  CHECK_THROWS_AS(read_npy_array(kFixtures / "ring_be.npy"), FormatError);
  CHECK_THROWS_AS(read_npy_array(kFixtures / "ring_fortran.npy"), FormatError);
  CHECK_THROWS_AS(parse_npy("not numpy at all"), FormatError);
  std::string bytes = serialize_npy(ring_tensor());
  CHECK_THROWS_AS(parse_npy(bytes.substr(0, bytes.size() - 8)), FormatError);
  CHECK_THROWS_AS(parse_npy(bytes.substr(0, 9)), FormatError);
  CHECK_THROWS_AS(image_from_array(Tensor{{1, 1, 1, 2}, {0, 1}}), FormatError);
  CHECK_THROWS_AS(read_npy_array(kFixtures / "missing.npy"), Error);
}

TEST_CASE("NPY round trip over random shapes") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> axes(0, 4), ext(0, 5);
  std::normal_distribution<double> val;
  for (int trial = 0; trial < 200; ++trial) {
    Tensor t;
    const std::size_t n = axes(rng);
    for (std::size_t a = 0; a < n; ++a) t.shape.push_back(ext(rng));
    t.data.resize(t.size());
    for (double& x : t.data) x = val(rng);
    if (!t.data.empty() && trial % 3 == 0) t.data[0] = kInfinity;
    const std::string bytes = serialize_npy(t);
    const std::size_t header = 10 + (static_cast<unsigned char>(bytes[8]) |
                                     static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
    REQUIRE(header % 64 == 0);
    REQUIRE(bytes[header - 1] == '\n');
    REQUIRE(same_bits(parse_npy(bytes), t));
  }
  const Tensor empty{{0, 6}, {}};
  CHECK(parse_npy(serialize_npy(empty)) == empty);
}

TEST_CASE("image file round trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Image img = testing::random_image(rng, 4, 9, 1 + trial % 3);
    const auto npy = testing::temp_path("img.npy");
    const auto dipha = testing::temp_path("img.complex");
    write_npy(npy, image_to_array(img));
    write_dipha_image(dipha, img);
    for (const auto& path : {npy, dipha}) {
      const Image back = read_image(path);
      REQUIRE(back.shape() == img.shape());
      REQUIRE(back.ndim() == img.ndim());
      REQUIRE(std::equal(back.values().begin(), back.values().end(), img.values().begin()));
    }
    std::filesystem::remove(npy);
    std::filesystem::remove(dipha);
  }
}

TEST_CASE("DIPHA files packed independently") {
  const Image img = read_image(kFixtures / "ring.complex");
  CHECK(img.shape() == testing::ring_image().shape());
  CHECK(img.value(Voxel{1, 1, 0}) == 9);
  CHECK(dipha_file_type(kFixtures / "ring.complex") == kDiphaImageData);
  CHECK(dipha_file_type(kFixtures / "ring.diagram") == kDiphaPersistenceDiagram);
  CHECK_FALSE(dipha_file_type(kFixtures / "ring.npy"));

  const auto stored = read_dipha_diagram(kFixtures / "ring.diagram");
  const auto computed = compute_ph(img, 1);
  for (int d = 0; d <= 1; ++d) CHECK(barcode(stored, d) == barcode(computed, d));

  // Our writer reproduces the independently packed bytes.
  const auto out = testing::temp_path("ring.diagram");
  write_dipha_diagram(out, computed);
  CHECK(read_file(out) == read_file(kFixtures / "ring.diagram"));
  write_dipha_image(out, img);
  CHECK(read_file(out) == read_file(kFixtures / "ring.complex"));
  std::filesystem::remove(out);

  CHECK_THROWS_AS(read_dipha_diagram(kFixtures / "ring.complex"), FormatError);
  CHECK_THROWS_AS(read_dipha_image(kFixtures / "ring.diagram"), FormatError);
  CHECK_THROWS_AS(read_image(kFixtures / "ring.diagram"), FormatError);
  const auto cut = testing::temp_path("cut.complex");
  const std::string bytes = read_file(kFixtures / "ring.complex");
  write_file(cut, bytes.substr(0, bytes.size() - 4));
  CHECK_THROWS_AS(read_dipha_image(cut), FormatError);
  std::filesystem::remove(cut);
}

TEST_CASE("diagram matrix") {
  const auto diag = compute_ph(testing::ring_image(), 1);
  const Tensor birth = diagram_to_array(diag, LocationMode::Birth);
  REQUIRE(birth.shape == std::vector<std::size_t>{2, 6});
  CHECK(birth.data[0] == 0);
  CHECK(birth.data[1] == 0);
  CHECK(birth.data[2] == kInfinity);
  CHECK(birth.data[6] == 1);
  CHECK(birth.data[7] == 0);
  CHECK(birth.data[8] == 9);

  const Tensor death = diagram_to_array(diag, LocationMode::Death);
  // The essential class has no death location.
  CHECK(std::vector<double>(death.data.begin() + 3, death.data.begin() + 6) ==
        std::vector<double>{-1, -1, -1});
  // Any of the four squares kills the loop; each has its corner in {0,1}^2.
  CHECK(death.data[9] <= 1);
  CHECK(death.data[10] <= 1);
  CHECK(death.data[11] == 0);

  CHECK(diagram_to_array(diag, LocationMode::None).shape == std::vector<std::size_t>{2, 3});
  CHECK(diagram_to_array(PersistenceDiagram{}, LocationMode::Birth).shape ==
        std::vector<std::size_t>{0, 6});

  const auto back = array_to_diagram(birth);
  REQUIRE(back.pairs.size() == diag.pairs.size());
  for (std::size_t i = 0; i < back.pairs.size(); ++i) {
    PersistencePair want = diag.pairs[i];
    want.death_loc.reset();
    CHECK(back.pairs[i] == want);
  }
  CHECK_THROWS_AS(array_to_diagram(Tensor{{1, 4}, {0, 0, 1, 0}}), FormatError);
  CHECK_THROWS_AS(array_to_diagram(Tensor{{1, 3}, {5, 0, 1}}), FormatError);
  CHECK_THROWS_AS(parse_location("middle"), std::invalid_argument);
}

TEST_CASE("CSV agrees with the matrix bit for bit") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 50; ++trial) {
    const Image base = testing::random_image(rng, 5, 4);
    std::vector<double> v(base.values().begin(), base.values().end());
    for (double& x : v) x += noise(rng) * 1e-3;
    const auto diag = compute_ph(Image(base.shape(), v), 2);
    for (auto loc : {LocationMode::Birth, LocationMode::Death, LocationMode::None}) {
      std::ostringstream os;
      write_csv(os, diag, loc);
      REQUIRE(same_bits(parse_csv_array(os.str()), diagram_to_array(diag, loc)));
    }
  }
  std::ostringstream os;
  write_csv(os, compute_ph(testing::ring_image(), 1), LocationMode::Birth);
  CHECK(os.str() == "0,0,inf,0,0,0\n1,0,9,0,0,0\n");
  CHECK(parse_csv_array("").shape == std::vector<std::size_t>{0, 6});
  CHECK_THROWS_AS(parse_csv_array("0,1,2\n0,1\n"), FormatError);
  CHECK_THROWS_AS(parse_csv_array("0,x,2\n"), FormatError);
}

TEST_SUITE_END();
