#include "pdsim/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "pdsim/error.hpp"

namespace pdsim {
namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

// Boundary positions as 32-bit indices, ascending; checks faces-before-cofaces.
void load_boundary(const FilteredComplex& complex, std::size_t j, std::vector<std::uint32_t>& out) {
  out.resize(complex.dim(j) + 1);
  const std::size_t count = complex.facet_positions(j, out.data());
  out.resize(count);
  std::sort(out.begin(), out.end());
  if (!out.empty() && out.back() >= j) {
    throw InvariantViolation("simplex at position " + std::to_string(j) +
                             " precedes its face at position " + std::to_string(out.back()));
  }
}

// out <- a xor b over Z/2; both inputs ascending, out sized by the caller.
std::size_t add_columns(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                        std::size_t nb, std::uint32_t* out) {
  std::size_t i = 0, j = 0, w = 0;
  while (i < na && j < nb) {
    if (a[i] < b[j]) {
      out[w++] = a[i++];
    } else if (b[j] < a[i]) {
      out[w++] = b[j++];
    } else {
      ++i;
      ++j;
    }
  }
  while (i < na) out[w++] = a[i++];
  while (j < nb) out[w++] = b[j++];
  return w;
}

}  // namespace

BoundaryColumn boundary(const FilteredComplex& complex, std::size_t position) {
  BoundaryColumn column{position, complex.facet_positions(position)};
  if (!column.chain.empty() && column.chain.back() >= position) {
    throw InvariantViolation("simplex at position " + std::to_string(position) +
                             " precedes one of its faces");
  }
  return column;
}

double lifespan(const PersistencePair& pair) {
  if (pair.essential()) return kInfinity;
  return pair.death - pair.birth;
}

std::vector<PersistencePair> reduce(const FilteredComplex& complex, const ReductionOptions& options) {
  const std::size_t n = complex.size();
  const std::size_t top = complex.max_dim();

  // Rows are addressed by their index within their own dimension. Keeping
  // the pivot tables per dimension keeps the hot lookups (edges, for H1)
  // small enough to stay in cache.
  std::vector<std::vector<std::uint32_t>> position_of(top + 1);
  std::vector<std::uint32_t> local_of(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    auto& bucket = position_of[complex.dim(pos)];
    local_of[pos] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(static_cast<std::uint32_t>(pos));
  }

  // Per dimension k: pivot_of_row[k][r] = slot of the reduced k+1 column
  // whose low is row r; death[k][c] marks reduced-nonzero columns.
  std::vector<std::vector<std::uint32_t>> pivot_of_row(top + 1);
  std::vector<std::vector<std::uint32_t>> killer(top + 1);
  std::vector<std::vector<std::uint8_t>> death(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    pivot_of_row[k].assign(position_of[k].size(), kUnset);
    killer[k].assign(position_of[k].size(), kUnset);
    death[k].assign(position_of[k].size(), 0);
  }

  // Reduced columns live back to back in `pool`; slot s spans
  // [slot_begin[s], slot_begin[s + 1]).
  std::vector<std::uint32_t> pool;
  std::vector<std::size_t> slot_begin{0};
  std::vector<std::uint32_t> column;
  std::vector<std::uint32_t> scratch;

  auto reduce_column = [&](std::size_t j) {
    const std::size_t k = complex.dim(j);
    if (k == 0) return;
    load_boundary(complex, j, column);
    for (auto& f : column) f = local_of[f];
    auto& pivots = pivot_of_row[k - 1];
    std::size_t len = column.size();
    while (len > 0) {
      const std::uint32_t slot = pivots[column[len - 1]];
      if (slot == kUnset) break;
      const std::size_t begin = slot_begin[slot];
      const std::size_t other = slot_begin[slot + 1] - begin;
      if (scratch.size() < len + other) scratch.resize(2 * (len + other));
      len = add_columns(column.data(), len, pool.data() + begin, other, scratch.data());
      column.swap(scratch);
    }
    if (len == 0) return;
    const std::uint32_t low = column[len - 1];
    pivots[low] = static_cast<std::uint32_t>(slot_begin.size() - 1);
    killer[k - 1][low] = static_cast<std::uint32_t>(j);
    death[k][local_of[j]] = 1;
    pool.insert(pool.end(), column.begin(), column.begin() + static_cast<std::ptrdiff_t>(len));
    slot_begin.push_back(pool.size());
  };

  if (options.clearing) {
    // Twist: a row that is already some column's low is a birth, so its own
    // column must reduce to zero and can be skipped.
    for (std::size_t k = top; k >= 1; --k) {
      for (std::uint32_t j : position_of[k]) {
        if (killer[k][local_of[j]] == kUnset) reduce_column(j);
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) reduce_column(j);
  }

  std::vector<PersistencePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = complex.dim(i);
    const std::uint32_t local = local_of[i];
    if (killer[k][local] != kUnset) {
      const std::size_t j = killer[k][local];
      pairs.push_back({k, complex.value(i), complex.value(j), i, j});
    } else if (!death[k][local]) {
      if (k == top && top > 0 && !options.top_dimension_essentials) continue;
      pairs.push_back({k, complex.value(i), kInfinity, i, kNoSimplex});
    }
  }
  return pairs;
}

std::map<std::size_t, PersistenceDiagram> diagrams(std::span<const PersistencePair> pairs,
                                                   std::size_t complex_max_dim) {
  std::map<std::size_t, PersistenceDiagram> out;
  for (std::size_t k = 0; k < complex_max_dim; ++k) out[k].dim = k;
  for (const auto& p : pairs) {
    if (p.dim >= complex_max_dim) continue;
    if (p.essential()) {
      out[p.dim].essential_births.push_back(p.birth);
    } else if (p.death > p.birth) {
      out[p.dim].finite_pairs.push_back({p.birth, p.death});
    }
  }
  return out;
}

std::map<std::size_t, PersistenceDiagram> rips_persistence(const DistanceMatrix& d,
                                                           std::size_t max_homology_dim,
                                                           std::optional<double> cap) {
  const FilteredComplex complex = build_rips(d, max_homology_dim + 1, cap);
  ReductionOptions options;
  // Unpaired top simplices are only truncation artefacts when the complex
  // really reaches one dimension above the requested homology.
  options.top_dimension_essentials = complex.max_dim() != max_homology_dim + 1;
  const auto pairs = reduce(complex, options);
  return diagrams(pairs, max_homology_dim + 1);
}

}  // namespace pdsim
