#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pdsim/rips.hpp"

namespace pdsim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoSimplex = std::numeric_limits<std::size_t>::max();

// Column of the Z/2 boundary matrix: positions of the facets of one simplex.
struct BoundaryColumn {
  std::size_t simplex_index = 0;
  std::vector<std::size_t> chain;  // ascending
};

BoundaryColumn boundary(const FilteredComplex& complex, std::size_t position);

struct PersistencePair {
  std::size_t dim = 0;
  double birth = 0.0;
  double death = kInfinity;  // kInfinity for classes that never die
  std::size_t birth_simplex = 0;
  std::size_t death_simplex = kNoSimplex;

  bool essential() const { return death == kInfinity; }
};

double lifespan(const PersistencePair& pair);

struct BirthDeath {
  double birth = 0.0;
  double death = 0.0;

  double half_lifespan() const { return 0.5 * (death - birth); }
  double midpoint() const { return 0.5 * (birth + death); }
  friend bool operator==(const BirthDeath&, const BirthDeath&) = default;
};

// Multiset of finite points strictly above the diagonal plus the births of
// classes that never die.
struct PersistenceDiagram {
  std::size_t dim = 0;
  std::vector<BirthDeath> finite_pairs;
  std::vector<double> essential_births;

  bool empty() const { return finite_pairs.empty() && essential_births.empty(); }
  // Copy without the essential classes.
  PersistenceDiagram finite_part() const { return {dim, finite_pairs, {}}; }
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

struct ReductionOptions {
  // Twist optimisation: reduce the highest dimension first and zero every
  // column that already appeared as a pivot. Produces identical pairs.
  bool clearing = false;
  // Report unpaired top-dimensional simplices as essential classes. Those
  // classes are artefacts of truncation; large pipelines turn this off to
  // avoid materialising one pair per surviving top simplex.
  bool top_dimension_essentials = true;
};

/// Standard Z/2 column reduction of the boundary matrix. Every column j whose
/// reduced form has lowest row i yields the pair (value(i), value(j)) in
/// dimension dim(i); zero columns that are nobody's pivot yield (value, inf).
/// Throws InvariantViolation when a face sits after one of its cofaces.
std::vector<PersistencePair> reduce(const FilteredComplex& complex,
                                    const ReductionOptions& options = {});

/// Buckets pairs by dimension for dims 0 .. complex_max_dim - 1, dropping
/// zero-lifespan pairs. The top dimension is omitted since its deaths need
/// the (max_dim + 1)-skeleton.
std::map<std::size_t, PersistenceDiagram> diagrams(std::span<const PersistencePair> pairs,
                                                   std::size_t complex_max_dim);

/// Rips -> reduction -> diagrams for homology dimensions 0 .. max_homology_dim.
std::map<std::size_t, PersistenceDiagram> rips_persistence(const DistanceMatrix& d,
                                                           std::size_t max_homology_dim,
                                                           std::optional<double> cap = std::nullopt);

}  // namespace pdsim
