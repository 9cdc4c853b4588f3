#include "pdsim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdsim {

std::string_view to_string(ShapeTag shape) {
  switch (shape) {
    case ShapeTag::disc: return "disc";
    case ShapeTag::annulus: return "annulus";
    case ShapeTag::circle: return "circle";
    case ShapeTag::external: return "external";
  }
  return "external";
}

ShapeTag parse_shape(std::string_view name) {
  if (name == "disc") return ShapeTag::disc;
  if (name == "annulus") return ShapeTag::annulus;
  if (name == "circle") return ShapeTag::circle;
  if (name == "external") return ShapeTag::external;
  throw std::invalid_argument("unknown shape '" + std::string(name) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double UniformSource::next() {
  // 53 random mantissa bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

void require_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample size must be at least 1");
}

// Area-uniform radius on r_in <= r <= r_out by inverting the CDF of r^2.
PointCloud sample_ring(std::size_t n, double r_in, double r_out, std::uint64_t seed,
                       ShapeTag tag) {
  UniformSource rng(seed);
  PointCloud cloud;
  cloud.shape = tag;
  cloud.seed = seed;
  cloud.points.reserve(n);
  const double in2 = r_in * r_in;
  const double span2 = r_out * r_out - in2;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next();
    const double angle = 2.0 * std::numbers::pi * rng.next();
    double r = std::sqrt(in2 + u * span2);
    r = std::clamp(r, r_in, r_out);
    cloud.points.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  return cloud;
}

}  // namespace

PointCloud sample_disc(std::size_t n, std::uint64_t seed) {
  require_count(n);
  return sample_ring(n, 0.0, 1.0, seed, ShapeTag::disc);
}

PointCloud sample_annulus(std::size_t n, double r_in, double r_out, std::uint64_t seed) {
  require_count(n);
  if (!(r_in >= 0.0) || !(r_in < r_out) || !std::isfinite(r_out)) {
    throw std::invalid_argument("annulus radii must satisfy 0 <= r_in < r_out");
  }
  return sample_ring(n, r_in, r_out, seed, ShapeTag::annulus);
}

PointCloud sample_circle(std::size_t n, std::uint64_t seed) {
  require_count(n);
  UniformSource rng(seed);
  PointCloud cloud;
  cloud.shape = ShapeTag::circle;
  cloud.seed = seed;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * rng.next();
    cloud.points.push_back({std::cos(angle), std::sin(angle)});
  }
  return cloud;
}

double DistanceMatrix::max_entry() const {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

DistanceMatrix distance_matrix(std::span<const Point2> points) {
  DistanceMatrix d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      d.set(i, j, std::sqrt(dx * dx + dy * dy));
    }
  }
  return d;
}

DistanceMatrix distance_matrix(const PointCloud& cloud) { return distance_matrix(cloud.points); }

}  // namespace pdsim
