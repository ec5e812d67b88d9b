#include "cripser/cohomology.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "cripser/ph_zero.hpp"

namespace cripser {

namespace {

struct Entry {
  double birth;
  CellId id;
  bool operator==(const Entry&) const = default;
};

// Filtration order on rows: smaller birth first, ties by larger id. This is
// the reverse of order_key, so the first entry of a column is its pivot.
bool enters_earlier(const Entry& a, const Entry& b) {
  return a.birth < b.birth || (a.birth == b.birth && a.id > b.id);
}

using Column = std::vector<Entry>;

constexpr CellId kNoOwner = ~CellId{0};

// dst <- dst + src over Z/2; both sorted by enters_earlier.
void add_column(Column& dst, std::span<const Entry> src, Column& scratch) {
  scratch.clear();
  scratch.reserve(dst.size() + src.size());
  auto a = dst.begin();
  auto b = src.begin();
  while (a != dst.end() && b != src.end()) {
    if (a->id == b->id) {
      ++a;
      ++b;
    } else if (enters_earlier(*a, *b)) {
      scratch.push_back(*a++);
    } else {
      scratch.push_back(*b++);
    }
  }
  scratch.insert(scratch.end(), a, dst.end());
  scratch.insert(scratch.end(), b, src.end());
  dst.swap(scratch);
}

class ReductionState {
public:
  ReductionState(const Image& img, int dim, const ReductionOptions& opts)
      : complex_(img), img_(img), dim_(dim), opts_(opts) {}

  DimensionResult run(const CellMask& cleared) {
    DimensionResult out;
    out.deaths = CellMask(complex_.id_bound());

    std::vector<Entry> cells;
    complex_.for_each_cell(dim_, [&](CellId id) {
      if (cleared.contains(id)) {
        ++out.stats.cleared;
        return;
      }
      cells.push_back({complex_.birth(id, dim_), id});
    });
    std::sort(cells.begin(), cells.end(), [](const Entry& a, const Entry& b) {
      return a.birth > b.birth || (a.birth == b.birth && a.id < b.id);
    });

    pivot_owner_.assign(complex_.id_bound(), kNoOwner);
    Column working;
    for (const Entry& cell : cells) {
      ++out.stats.columns;
      coboundary(cell.id, working);

      if (opts_.apparent_pairs && is_apparent(cell, working)) {
        ++out.stats.apparent;
        pivot_owner_[working.front().id] = cell.id;
        out.deaths.insert(working.front().id);
        continue;
      }

      // clear() on an unordered_map touches every bucket, even when empty.
      if (!scratch_memo_.empty()) scratch_memo_.clear();
      while (!working.empty()) {
        const CellId owner = pivot_owner_[working.front().id];
        if (owner == kNoOwner) break;
        add_column(working, reduced_column(owner, out.stats), scratch_);
      }

      if (working.empty()) {
        if (img_.is_finite(cell.birth))
          out.pairs.push_back({dim_, cell.birth, kInfinity, complex_.location(cell.id),
                               std::nullopt});
        continue;
      }

      const Entry pivot = working.front();
      pivot_owner_[pivot.id] = cell.id;
      out.deaths.insert(pivot.id);
      if (pivot.birth > cell.birth && img_.is_finite(cell.birth)) {
        PersistencePair p{dim_, cell.birth, kInfinity, complex_.location(cell.id), std::nullopt};
        if (img_.is_finite(pivot.birth)) {
          p.death = pivot.birth;
          p.death_loc = complex_.location(pivot.id);
        }
        out.pairs.push_back(p);
      }
      if (working.size() >= opts_.min_cache_size) {
        cache_.emplace(cell.id, Slice{cache_pool_.size(), working.size()});
        cache_pool_.insert(cache_pool_.end(), working.begin(), working.end());
        ++out.stats.cached;
      }
    }
    return out;
  }

private:
  void coboundary(CellId id, Column& col) const {
    col.clear();
    col.reserve(6);
    complex_.for_each_coface(id, dim_, [&](CellId c, double b) {
      // At most six entries: insertion sort.
      Entry e{b, c};
      col.push_back(e);
      auto it = col.end() - 1;
      for (; it != col.begin() && enters_earlier(e, *(it - 1)); --it) *it = *(it - 1);
      *it = e;
    });
  }

  // The cell is the first facet (in column order) of the coface that would
  // become its pivot, and both share a birth: no earlier column can touch
  // that row, so the pivot is fresh and the pair has zero persistence.
  bool is_apparent(const Entry& cell, const Column& col) const {
    if (col.empty() || col.front().birth != cell.birth) return false;
    bool first = true;
    complex_.for_each_face(col.front().id, dim_ + 1, [&](CellId f, double b) {
      if (b > cell.birth || (b == cell.birth && f < cell.id)) first = false;
    });
    return first;
  }

  // True if col, unreduced, already has its pivot owned by id. Owners never
  // change, so such a column took no additions and is its own reduced form.
  bool owns_own_pivot(CellId id, const Column& col) const {
    if (col.empty()) throw InvariantError("re-derived column " + std::to_string(id) + " reduced to zero");
    return pivot_owner_[col.front().id] == id;
  }

  // Reduced form of an already processed column. Columns that were not
  // stored are rebuilt by replaying their reduction from the implicit
  // coboundary; intermediate results live in scratch_memo_ for the duration
  // of the current column.
  std::span<const Entry> reduced_column(CellId col_id, ReductionStats& stats) {
    if (auto it = cache_.find(col_id); it != cache_.end()) return cached(it->second);
    if (auto it = scratch_memo_.find(col_id); it != scratch_memo_.end()) return it->second;

    coboundary(col_id, direct_);
    ++stats.rederived;
    if (owns_own_pivot(col_id, direct_)) return direct_;

    struct Frame {
      CellId id;
      Column work;
    };
    std::vector<Frame> stack;
    stack.push_back({col_id, std::exchange(direct_, Column())});

    while (true) {
      Frame& top = stack.back();
      if (top.work.empty())
        throw InvariantError("re-derived column " + std::to_string(top.id) + " reduced to zero");
      const CellId owner = pivot_owner_[top.work.front().id];
      if (owner == kNoOwner)
        throw InvariantError("re-derived column " + std::to_string(top.id) +
                             " reached an unowned pivot");
      if (owner == top.id) {
        const CellId done = top.id;
        auto [it, inserted] = scratch_memo_.emplace(done, std::move(top.work));
        stack.pop_back();
        if (stack.empty()) return it->second;
        continue;
      }
      if (auto it = cache_.find(owner); it != cache_.end()) {
        add_column(top.work, cached(it->second), scratch_);
      } else if (auto it2 = scratch_memo_.find(owner); it2 != scratch_memo_.end()) {
        add_column(top.work, it2->second, scratch_);
      } else {
        coboundary(owner, direct_);
        ++stats.rederived;
        if (owns_own_pivot(owner, direct_))
          add_column(top.work, direct_, scratch_);
        else
          stack.push_back({owner, std::exchange(direct_, Column())});
      }
    }
  }

  CubicalComplex complex_;
  const Image& img_;
  int dim_;
  ReductionOptions opts_;
  // Owning column of each (d+1)-cell, indexed by packed id.
  std::vector<CellId> pivot_owner_;
  // Cached columns live back to back in cache_pool_. The pool only grows
  // between columns, so spans into it stay valid during a reduction.
  struct Slice {
    std::size_t offset;
    std::size_t size;
  };
  std::span<const Entry> cached(const Slice& sl) const {
    return std::span<const Entry>(cache_pool_).subspan(sl.offset, sl.size);
  }
  std::unordered_map<CellId, Slice> cache_;
  std::vector<Entry> cache_pool_;
  std::unordered_map<CellId, Column> scratch_memo_;
  Column scratch_;
  Column direct_;
};

}  // namespace

DimensionResult reduce_dimension(const Image& img, int d, const CellMask& cleared,
                                 const ReductionOptions& opts) {
  if (d < 1 || d > 2)
    throw std::invalid_argument("reduction dimension must be 1 or 2, got " + std::to_string(d));
  return ReductionState(img, d, opts).run(cleared);
}

PersistenceDiagram compute_ph(const Image& img, int maxdim, const ReductionOptions& opts) {
  if (maxdim < 0 || maxdim > 2)
    throw std::invalid_argument("maxdim must be 0, 1 or 2, got " + std::to_string(maxdim));

  PersistenceDiagram diag;
  diag.shape = img.shape();
  diag.maxdim = maxdim;
  diag.algorithm = Algorithm::Full;

  Ph0Result zero = compute_ph0(img);
  diag.pairs = std::move(zero.pairs);

  CellMask cleared = std::move(zero.merge_edges);
  const int top = std::min(maxdim, img.shape().effective_dim() - 1);
  for (int d = 1; d <= top; ++d) {
    DimensionResult r = reduce_dimension(img, d, cleared, opts);
    diag.pairs.insert(diag.pairs.end(), r.pairs.begin(), r.pairs.end());
    cleared = std::move(r.deaths);
  }
  diag.sort();
  return diag;
}

}  // namespace cripser
