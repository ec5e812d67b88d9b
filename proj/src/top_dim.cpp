#include "cripser/top_dim.hpp"

#include <algorithm>
#include <stdexcept>

#include "cripser/ph_zero.hpp"

namespace cripser {

PersistenceDiagram compute_top_dim(const Image& img) {
  const int top = img.shape().effective_dim();
  if (top < 2)
    throw std::invalid_argument("top-dimension mode needs a 2D or 3D image");

  const CubicalComplex complex(img);
  const CellId bound = complex.id_bound();

  // Dual node ids: packed top-cell ids, plus `bound` for the outer node.
  std::vector<double> dual_birth(bound + 1, kInfinity);
  complex.for_each_cell(top, [&](CellId id) { dual_birth[id] = -complex.birth(id, top); });
  dual_birth[bound] = -kInfinity;
  UnionFind uf(std::move(dual_birth));

  struct Edge {
    double birth;
    CellId id;
  };
  std::vector<Edge> edges;
  complex.for_each_cell(top - 1, [&](CellId id) { edges.push_back({complex.birth(id, top - 1), id}); });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.birth > b.birth || (a.birth == b.birth && a.id < b.id);
  });

  PersistenceDiagram diag;
  diag.shape = img.shape();
  diag.maxdim = top - 1;
  diag.algorithm = Algorithm::TopDim;

  for (const Edge& e : edges) {
    std::size_t ends[2] = {bound, bound};
    int n = 0;
    complex.for_each_coface(e.id, top - 1, [&](CellId c, double) { ends[n++] = c; });
    const std::size_t ra = uf.find(ends[0]);
    const std::size_t rb = uf.find(ends[1]);
    if (ra == rb) continue;
    const std::size_t dying = uf.younger(ra, rb);
    const std::size_t survivor = dying == ra ? rb : ra;
    const double death = -uf.birth(dying);
    if (img.is_finite(e.birth) && death > e.birth) {
      PersistencePair p{top - 1, e.birth, kInfinity, complex.location(e.id), std::nullopt};
      if (img.is_finite(death)) {
        p.death = death;
        p.death_loc = complex.location(uf.birth_node(dying));
      }
      diag.pairs.push_back(p);
    }
    uf.merge_into(dying, survivor);
  }
  diag.sort();
  return diag;
}

}  // namespace cripser
