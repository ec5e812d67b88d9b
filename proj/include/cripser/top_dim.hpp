#pragma once

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser {

/// Top-dimensional persistence (dim 1 of a 2D image, dim 2 of a volume)
/// computed as 0-dimensional persistence of the dual graph.
///
/// Dual vertices are the top cells plus one outer node standing for
/// everything beyond the grid boundary; dual edges are the codimension-1
/// cells, joining the (one or two) top cells they bound. The dual graph is
/// filtered by negated birth, so union-find runs over the codimension-1
/// cells in descending birth. A dual class [-t, -b) is the primal class
/// [b, t); the outer node is born at -inf and never dies.
///
/// The (birth, death) multiset equals the top dimension of compute_ph.
/// birth_loc is the codimension-1 cell that closed the cycle and death_loc
/// the top cell that filled it; both are representatives.
///
/// Throws std::invalid_argument for images with effective dimension 1.
PersistenceDiagram compute_top_dim(const Image& img);

}  // namespace cripser
