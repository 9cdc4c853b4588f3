#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdsim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class ShapeTag { disc, annulus, circle, external };

std::string_view to_string(ShapeTag shape);
// Accepts "disc", "annulus", "circle" and "external"; throws std::invalid_argument otherwise.
ShapeTag parse_shape(std::string_view name);

struct PointCloud {
  std::vector<Point2> points;
  ShapeTag shape = ShapeTag::external;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
};

/// Seedable source of uniform doubles in [0, 1).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The user seed is first passed through SplitMix64 so that nearby
/// seeds give unrelated streams. Doubles are formed from the top 53 bits of
/// each draw, so the stream is bit-identical on every conforming platform
/// (std::uniform_real_distribution is not).
///
/// Stream splitting: the k-th independent stream of a seed s is seeded with
/// split_seed(s, k) = SplitMix64(s + (k + 1) * 0x9E3779B97F4A7C15).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

PointCloud sample_disc(std::size_t n, std::uint64_t seed);
PointCloud sample_annulus(std::size_t n, double r_in, double r_out, std::uint64_t seed);
inline PointCloud sample_annulus(std::size_t n, std::uint64_t seed) {
  return sample_annulus(n, 0.5, 1.0, seed);
}
PointCloud sample_circle(std::size_t n, std::uint64_t seed);

// Symmetric n x n matrix of pairwise Euclidean distances, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
  double max_entry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix distance_matrix(const PointCloud& cloud);
DistanceMatrix distance_matrix(std::span<const Point2> points);

}  // namespace pdsim
