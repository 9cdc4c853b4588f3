#pragma once

#include <cstddef>
#include <vector>

#include "pdsim/persistence.hpp"

namespace pdsim {

// One side of a matched pair: a diagram point, or the diagonal point that a
// point of the other diagram projects to.
struct MatchEnd {
  enum class Kind { point, diagonal, essential };
  Kind kind = Kind::point;
  std::size_t index = 0;  // into finite_pairs / essential_births of the owning diagram
  BirthDeath location;     // coordinates; for diagonal ends, the projection
};

/// Bijection between the diagonal-augmented diagrams, with both its
/// bottleneck cost (largest sup-norm displacement) and its p-cost.
struct Matching {
  struct Edge {
    MatchEnd first;   // from D1 or D1's diagonal slots
    MatchEnd second;  // from D2 or D2's diagonal slots
    double cost = 0.0;  // sup-norm displacement
  };
  std::vector<Edge> edges;
  double p = 2.0;
  double cost_sup = 0.0;
  double cost_p = 0.0;  // (sum cost^p)^(1/p)
};

// Sup-norm distance in the birth/death plane.
double sup_distance(const BirthDeath& a, const BirthDeath& b);

/// Bottleneck distance. Essential classes are matched among themselves by
/// sorted births; differing essential counts give +inf.
/// Throws std::invalid_argument for diagrams of different dimensions.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// p-Wasserstein distance, p >= 1, with sup-norm ground cost.
double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p);

/// An optimal p-Wasserstein matching (finite points only; essentials are
/// listed after the finite edges).
Matching wasserstein_matching(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p);

/// The matching that sends every point to its own diagonal projection.
Matching trivial_matching(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p);

// Cost of trivial_matching; p may be kInfinity for the bottleneck cost.
// Essential classes cannot reach the diagonal, so any gives +inf.
double trivial_matching_cost(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p);

// W_p(D, empty); p may be kInfinity.
double distance_to_empty(const PersistenceDiagram& d, double p);

/// Exact W_p (or bottleneck for p = kInfinity) by enumerating every partial
/// injection of D1's points into D2's; unmatched points go to the diagonal.
/// Test oracle, limited to |D1| + |D2| <= 6 counting essential classes.
double brute_force_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p);

}  // namespace pdsim
