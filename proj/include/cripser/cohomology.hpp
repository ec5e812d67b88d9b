#pragma once

#include <cstddef>
#include <vector>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser {

struct ReductionOptions {
  /// A reduced column is kept in memory iff it has at least this many
  /// nonzeros; others are re-derived from their implicit coboundary when
  /// needed. 0 caches every column.
  std::size_t min_cache_size = 0;
  /// Pair zero-persistence apparent pairs without touching the pivot map.
  bool apparent_pairs = true;
};

struct ReductionStats {
  std::size_t columns = 0;    // columns reduced (after clearing)
  std::size_t cleared = 0;    // columns skipped by clearing
  std::size_t apparent = 0;   // columns paired by the apparent-pair shortcut
  std::size_t cached = 0;     // reduced columns stored
  std::size_t rederived = 0;  // owner columns rebuilt because they were not stored
};

struct DimensionResult {
  std::vector<PersistencePair> pairs;
  /// (d+1)-cells that became pivots; these are the columns to clear in d+1.
  CellMask deaths;
  ReductionStats stats;
};

/// Persistent cohomology in dimension d >= 1 by reducing the implicit
/// coboundary matrix over Z/2.
///
/// Columns are the d-cells not in `cleared`, taken in ascending
/// order_key (largest birth first). A column's pivot is its coface that
/// enters the filtration first; a fresh pivot (row i, column j) gives the
/// class [birth(j), birth(i)).
DimensionResult reduce_dimension(const Image& img, int d, const CellMask& cleared,
                                 const ReductionOptions& opts = {});

/// Full diagram in dimensions 0..maxdim: union-find for dimension 0, then
/// cohomology reduction with clearing for each higher dimension.
PersistenceDiagram compute_ph(const Image& img, int maxdim, const ReductionOptions& opts = {});

inline PersistenceDiagram compute_ph(const Image& img, int maxdim, std::size_t min_cache_size) {
  return compute_ph(img, maxdim, ReductionOptions{min_cache_size, true});
}

}  // namespace cripser
