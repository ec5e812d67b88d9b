#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "cripser/diagram.hpp"
#include "cripser/grid.hpp"

namespace cripser {

/// Disjoint sets over node indices; each root tracks the minimal birth of
/// its members and the node attaining it.
class UnionFind {
public:
  explicit UnionFind(std::vector<double> births)
      : parent_(births.size()), birth_(std::move(births)), birth_node_(birth_.size()) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::iota(birth_node_.begin(), birth_node_.end(), std::size_t{0});
  }

  std::size_t size() const { return parent_.size(); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  double birth(std::size_t root) const { return birth_[root]; }
  std::size_t birth_node(std::size_t root) const { return birth_node_[root]; }

  /// Elder rule: of two distinct roots, the one born later dies; equal births
  /// are resolved in favour of the smaller representative node.
  std::size_t younger(std::size_t a, std::size_t b) const {
    if (birth_[a] != birth_[b]) return birth_[a] > birth_[b] ? a : b;
    return birth_node_[a] > birth_node_[b] ? a : b;
  }

  /// Attaches root `dying` under root `survivor`.
  void merge_into(std::size_t dying, std::size_t survivor) { parent_[dying] = survivor; }

private:
  std::vector<std::size_t> parent_;
  std::vector<double> birth_;
  std::vector<std::size_t> birth_node_;
};

struct Ph0Result {
  std::vector<PersistencePair> pairs;
  /// 1-cells that merged two components (including zero-persistence merges).
  CellMask merge_edges;
};

/// 0-dimensional persistence by union-find over the 1-cells in filtration
/// order (ascending birth, ties in descending (m, z, y, x)).
Ph0Result compute_ph0(const Image& img);

}  // namespace cripser
