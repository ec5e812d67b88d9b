#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser {

struct OracleOptions {
  /// Refuse inputs with more cells than this.
  std::size_t max_cells = 200'000;
  /// When set, cells sharing (birth, dimension) are shuffled with this seed
  /// instead of being ordered by (m, z, y, x).
  std::optional<std::uint64_t> tie_shuffle_seed;
};

/// Reference persistent homology by the textbook algorithm: every cell of
/// every dimension in one filtration, explicit Z/2 boundary matrix, standard
/// left-to-right column reduction. Slow by design; only (dim, birth, death)
/// are meaningful in the output (no locations).
PersistenceDiagram oracle_ph(const Image& img, int maxdim, const OracleOptions& opts = {});

}  // namespace cripser
