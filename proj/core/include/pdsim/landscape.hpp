#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdsim/persistence.hpp"

namespace pdsim {

struct Knot {
  double t = 0.0;
  double y = 0.0;
  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Piecewise-linear function given by its knots: linear in between, zero
/// outside [front().t, back().t]. An empty knot list is the zero function.
class PLFunction {
 public:
  PLFunction() = default;
  // Canonicalises: drops collinear interior knots and redundant leading or
  // trailing zeros. Knots must have strictly increasing t and start and end
  // at y = 0.
  explicit PLFunction(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const { return knots_; }
  bool is_zero() const { return knots_.empty(); }
  double operator()(double t) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::vector<Knot> knots_;
};

/// Layers lambda_1 >= lambda_2 >= ...; layers past the stored ones are zero.
struct PersistenceLandscape {
  std::vector<PLFunction> layers;

  bool is_zero() const { return layers.empty(); }
  friend bool operator==(const PersistenceLandscape&, const PersistenceLandscape&) = default;
};

// Tent of a finite pair: rises with slope 1 from b, peaks at the midpoint
// with height (d - b) / 2, falls to 0 at d. Requires b < d, both finite.
PLFunction tent(double birth, double death);

/// Exact landscape of the finite part of `d` (essential classes are ignored).
///
/// Between consecutive event abscissae (births, deaths, midpoints and the
/// crossings (b_i + d_k) / 2 of a rising and a falling edge) no two tents
/// change order, so each layer is linear there. The construction sweeps the
/// sorted abscissae, ranks the active tents at each one and emits a knot per
/// layer; evaluating at the knots is therefore exact up to one rounding.
PersistenceLandscape build_landscape(const PersistenceDiagram& d);

// lambda_j(t) for j >= 1; zero beyond the stored layers.
double evaluate(const PersistenceLandscape& landscape, std::size_t j, double t);

// Layerwise lambda_j - mu_j on merged knots; values may be negative.
std::vector<PLFunction> subtract(const PersistenceLandscape& a, const PersistenceLandscape& b);

// (sum_j integral |f_j|^p)^(1/p), integrated segment by segment in closed form.
double p_norm(std::span<const PLFunction> layers, double p);
double p_norm(const PersistenceLandscape& landscape, double p);
// p-th power of p_norm without the final root.
double p_norm_power(std::span<const PLFunction> layers, double p);

double sup_norm(std::span<const PLFunction> layers);
double sup_norm(const PersistenceLandscape& landscape);

// sum_j integral f_j g_j; exact per merged segment.
double inner_product(std::span<const PLFunction> a, std::span<const PLFunction> b);
double inner_product(const PersistenceLandscape& a, const PersistenceLandscape& b);

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

// Union of the open intervals (b, d) over the finite pairs, as maximal
// disjoint open intervals in increasing order. Intervals that only share an
// endpoint stay separate.
std::vector<OpenInterval> support_union(const PersistenceDiagram& d);

}  // namespace pdsim
