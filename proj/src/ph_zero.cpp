#include "cripser/ph_zero.hpp"

#include <algorithm>

namespace cripser {

Ph0Result compute_ph0(const Image& img) {
  const CubicalComplex complex(img);
  const GridShape& shape = img.shape();
  const std::size_t nvox = shape.voxel_count();
  const std::array<std::size_t, 3> stride{1, shape.nx, shape.nx * shape.ny};

  struct Edge {
    double birth;
    CellId id;
  };
  std::vector<Edge> edges;
  edges.reserve(cell_count(shape, 1));
  complex.for_each_cell(1, [&](CellId id) { edges.push_back({complex.birth(id, 1), id}); });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.birth < b.birth || (a.birth == b.birth && a.id > b.id);
  });

  UnionFind uf(std::vector<double>(img.values().begin(), img.values().end()));
  Ph0Result out;
  out.merge_edges = CellMask(complex.id_bound());

  for (const Edge& e : edges) {
    const std::size_t a = e.id % nvox;
    const std::size_t b = a + stride[e.id / nvox];
    const std::size_t ra = uf.find(a);
    const std::size_t rb = uf.find(b);
    if (ra == rb) continue;
    const std::size_t dying = uf.younger(ra, rb);
    const std::size_t survivor = dying == ra ? rb : ra;
    out.merge_edges.insert(e.id);
    const double birth = uf.birth(dying);
    if (img.is_finite(birth) && e.birth > birth) {
      PersistencePair p{0, birth, kInfinity, shape.voxel(uf.birth_node(dying)), std::nullopt};
      if (img.is_finite(e.birth)) {
        p.death = e.birth;
        p.death_loc = complex.location(e.id);
      }
      out.pairs.push_back(p);
    }
    uf.merge_into(dying, survivor);
  }

  for (std::size_t v = 0; v < nvox; ++v) {
    if (uf.find(v) != v || !img.is_finite(uf.birth(v))) continue;
    out.pairs.push_back({0, uf.birth(v), kInfinity, shape.voxel(uf.birth_node(v)), std::nullopt});
  }
  return out;
}

}  // namespace cripser
