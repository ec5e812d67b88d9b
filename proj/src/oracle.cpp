#include "cripser/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace cripser {

PersistenceDiagram oracle_ph(const Image& img, int maxdim, const OracleOptions& opts) {
  if (maxdim < 0 || maxdim > 2)
    throw std::invalid_argument("maxdim must be 0, 1 or 2, got " + std::to_string(maxdim));
  const GridShape& shape = img.shape();

  std::size_t total = 0;
  for (int d = 0; d <= 3; ++d) total += cell_count(shape, d);
  if (total > opts.max_cells)
    throw std::invalid_argument("oracle limited to " + std::to_string(opts.max_cells) +
                                " cells, image has " + std::to_string(total));

  struct Cell {
    CellKey key;
    double birth;
    std::uint64_t tie;
  };
  std::vector<Cell> cells;
  cells.reserve(total);
  std::mt19937_64 rng(opts.tie_shuffle_seed.value_or(0));
  for (int d = 0; d <= 3; ++d)
    for (const CellKey& c : enumerate_cells(shape, d))
      cells.push_back({c, cell_birth(img, c), opts.tie_shuffle_seed ? rng() : 0});

  // Faces strictly precede cofaces: a face's birth is <= the coface's and
  // equal births are ordered by dimension.
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.key.d != b.key.d) return a.key.d < b.key.d;
    if (a.tie != b.tie) return a.tie < b.tie;
    return std::tuple(a.key.m, a.key.z, a.key.y, a.key.x) <
           std::tuple(b.key.m, b.key.z, b.key.y, b.key.x);
  });

  std::map<CellKey, std::size_t> position;
  for (std::size_t i = 0; i < cells.size(); ++i) position.emplace(cells[i].key, i);

  // Boundary columns as ascending row lists; low = last entry.
  std::vector<std::vector<std::size_t>> columns(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (const CellKey& f : faces(shape, cells[j].key)) columns[j].push_back(position.at(f));
    std::sort(columns[j].begin(), columns[j].end());
  }

  std::vector<std::ptrdiff_t> low_owner(cells.size(), -1);
  std::vector<bool> paired(cells.size(), false);
  std::vector<std::size_t> merged;
  PersistenceDiagram diag;
  diag.shape = shape;
  diag.maxdim = maxdim;
  diag.algorithm = Algorithm::Oracle;

  const auto emit = [&](std::size_t birth_cell, double death) {
    const Cell& c = cells[birth_cell];
    if (c.key.d > maxdim || !img.is_finite(c.birth)) return;
    if (!img.is_finite(death)) death = kInfinity;
    if (death > c.birth) diag.pairs.push_back({c.key.d, c.birth, death, std::nullopt, std::nullopt});
  };

  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto& col = columns[j];
    while (!col.empty() && low_owner[col.back()] >= 0) {
      const auto& other = columns[static_cast<std::size_t>(low_owner[col.back()])];
      merged.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(merged));
      col.swap(merged);
    }
    if (col.empty()) continue;
    const std::size_t i = col.back();
    low_owner[i] = static_cast<std::ptrdiff_t>(j);
    paired[i] = paired[j] = true;
    emit(i, cells[j].birth);
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!paired[i]) emit(i, kInfinity);

  diag.sort();
  return diag;
}

}  // namespace cripser
