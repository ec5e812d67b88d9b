#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cripser/grid.hpp"

namespace cripser {

/// A d-dimensional class alive on [birth, death); death is +inf for
/// essential classes.
struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  std::optional<Voxel> birth_loc;
  std::optional<Voxel> death_loc;

  bool is_essential() const { return death == kInfinity; }
  double lifetime() const { return death - birth; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

enum class Algorithm { Full, TopDim, Oracle, Imported };

std::string_view to_string(Algorithm a);

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  GridShape shape;
  int maxdim = 0;
  Algorithm algorithm = Algorithm::Full;

  /// Sorts by (dim, birth, death), then by locations for determinism.
  void sort();

  std::vector<PersistencePair> of_dim(int d) const;

  /// Number of pairs per dimension 0..2.
  std::array<std::size_t, 3> counts() const;
};

/// (birth, death) values of one dimension, sorted; the multiset used for
/// comparing engines whose location representatives may differ.
std::vector<std::pair<double, double>> barcode(const PersistenceDiagram& diag, int dim);

}  // namespace cripser
