#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pdsim/sampling.hpp"

namespace pdsim {

using Vertex = std::uint32_t;

struct FilteredSimplex {
  std::vector<Vertex> vertices;  // strictly increasing
  double value = 0.0;

  std::size_t dim() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// A simplicial complex with a filtration value per simplex, stored in a
/// fixed total order that the reduction consumes directly.
///
/// Each simplex is packed into a 64-bit code: the dimension in the top bits
/// and the vertex list as base-n digits below (first vertex most
/// significant). Comparing (value, code) therefore orders simplices by
/// value, then dimension, then lexicographic vertex list. This caps the
/// supported size at n^(max_dim + 1) < 2^58.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  // Keeps the caller's order verbatim; nothing is sorted or checked here.
  // Use validate() to test the filtration invariants.
  static FilteredComplex from_simplices(std::size_t n_vertices,
                                        std::span<const FilteredSimplex> simplices);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t max_dim() const { return max_dim_; }
  double max_value() const { return max_value_; }

  double value(std::size_t position) const { return entries_[position].value; }
  std::size_t dim(std::size_t position) const;
  std::vector<Vertex> vertices(std::size_t position) const;
  FilteredSimplex simplex(std::size_t position) const;

  // Position of the simplex with the given sorted vertex list, if present.
  std::optional<std::size_t> find(std::span<const Vertex> vertices) const;

  // Positions of the codimension-1 faces of the simplex at `position`, in
  // increasing order. Throws InvariantViolation if a face is missing.
  std::vector<std::size_t> facet_positions(std::size_t position) const;
  // Allocation-free variant for hot loops; `out` must hold dim + 1 entries.
  // Returns the facet count. Order follows the omitted vertex, last first,
  // which is not necessarily ascending.
  std::size_t facet_positions(std::size_t position, std::uint32_t* out) const;

  // Throws InvariantViolation naming the first broken invariant: face
  // closure, monotone values, or the (value, dim, lex) total order.
  void validate() const;

  std::size_t count_of_dim(std::size_t dim) const;

 private:
  friend FilteredComplex build_rips(const DistanceMatrix&, std::size_t, std::optional<double>);

  struct Entry {
    double value;
    std::uint64_t code;
  };

  FilteredComplex(std::size_t n_vertices, std::size_t max_dim, double max_value,
                  std::vector<Entry> entries);

  std::uint64_t encode(std::span<const Vertex> vertices) const;
  void build_index();

  std::size_t n_vertices_ = 0;
  std::size_t max_dim_ = 0;
  double max_value_ = 0.0;
  std::vector<Entry> entries_;

  // Facet lookup for every dimension below max_dim_: vertices and edges use
  // dense tables, higher dimensions a hash map keyed by code.
  std::vector<std::uint32_t> vertex_position_;
  std::vector<std::uint32_t> edge_position_;
  std::unordered_map<std::uint64_t, std::uint32_t> higher_position_;
};

/// Vietoris-Rips filtration of `d` with every simplex of dimension at most
/// `max_dim` (clamped to n - 1) whose diameter is at most `max_value`
/// (default: the largest distance, i.e. the full complex).
///
/// Computing H_k requires max_dim >= k + 1.
FilteredComplex build_rips(const DistanceMatrix& d, std::size_t max_dim,
                           std::optional<double> max_value = std::nullopt);

}  // namespace pdsim
