#include "cripser/diagram.hpp"

#include <algorithm>
#include <tuple>

namespace cripser {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Full: return "full";
    case Algorithm::TopDim: return "top-dim";
    case Algorithm::Oracle: return "oracle";
    case Algorithm::Imported: return "imported";
  }
  return "unknown";
}

namespace {

// Absent locations sort after present ones.
std::tuple<bool, Voxel> loc_key(const std::optional<Voxel>& v) {
  return {!v.has_value(), v.value_or(Voxel{})};
}

}  // namespace

void PersistenceDiagram::sort() {
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.dim, a.birth, a.death, loc_key(a.birth_loc), loc_key(a.death_loc)) <
           std::tuple(b.dim, b.birth, b.death, loc_key(b.birth_loc), loc_key(b.death_loc));
  });
}

std::vector<PersistencePair> PersistenceDiagram::of_dim(int d) const {
  std::vector<PersistencePair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out),
               [d](const auto& p) { return p.dim == d; });
  return out;
}

std::array<std::size_t, 3> PersistenceDiagram::counts() const {
  std::array<std::size_t, 3> c{};
  for (const auto& p : pairs)
    if (p.dim >= 0 && p.dim < 3) ++c[static_cast<std::size_t>(p.dim)];
  return c;
}

std::vector<std::pair<double, double>> barcode(const PersistenceDiagram& diag, int dim) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : diag.pairs)
    if (p.dim == dim) out.emplace_back(p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cripser
