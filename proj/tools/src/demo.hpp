#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdsim/persistence.hpp"
#include "pdsim/sampling.hpp"
#include "report.hpp"

namespace pdsim::cli {

// Longest edge of a Euclidean minimum spanning tree: the smallest Rips
// parameter at which the complex is connected.
double mst_longest_edge(const DistanceMatrix& d);

/// Rips cap for a cloud: 110% of the largest H1 death seen on the full Rips
/// complex of the first `pilot_size` points, raised if needed to the longest
/// MST edge of the whole cloud so that H0 ends with a single component.
double auto_rips_cap(const PointCloud& cloud, std::size_t pilot_size = 120);

struct DemoConfig {
  std::size_t n_points = 400;
  std::uint64_t seed = 1;
  double p = 2.0;
  std::optional<double> rips_cap;  // auto when empty
  unsigned threads = 0;            // 0: PDSIM_THREADS or the number of cores
};

struct CloudResult {
  std::string name;   // Q, Q', R, R', S, S'
  std::string slug;   // file-name form: Q, Q_prime, ...
  PointCloud cloud;
  double cap = 0.0;
  std::map<std::size_t, PersistenceDiagram> diagrams;  // H0 and H1
  double seconds = 0.0;
};

// Cross-shape 3 x 3 matrices over (Q, R, S) for one metric and dimension.
using Matrix3 = std::array<std::array<double, 3>, 3>;

struct DemoResult {
  DemoConfig config;
  std::vector<CloudResult> clouds;
  std::vector<ComparisonReport> same_shape;  // (Q,Q'), (R,R'), (S,S') x H0, H1
  std::map<std::pair<Metric, std::size_t>, Matrix3> cross_shape;
  double seconds = 0.0;
};

// Metrics tabulated in the cross-shape matrices.
inline constexpr std::array<Metric, 5> kMatrixMetrics{Metric::bottleneck, Metric::wasserstein_p,
                                                      Metric::landscape_sup, Metric::landscape_p,
                                                      Metric::cosine_distance};

unsigned worker_count(unsigned requested, std::size_t jobs);

/// Samples Q, Q' (unit disc), R, R' (annulus 0.5..1) and S, S' (unit circle)
/// from independent streams of `config.seed`, computes their H0/H1 diagrams
/// and every comparison. Throws InputError for n_points < 50.
DemoResult run_demo(const DemoConfig& config);

// points/, diagrams/, plots/, same_shape.csv, matrix_<metric>_h<k>.csv and
// summary.json. Everything except summary.json's timings is deterministic.
void write_demo_artifacts(const DemoResult& result, const std::filesystem::path& out_dir);

// Ratio of the largest to the second largest H1 lifespan (inf with one point).
double dominance_ratio(const PersistenceDiagram& d);

}  // namespace pdsim::cli
