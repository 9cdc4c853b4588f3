#include "demo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "io.hpp"
#include "plot.hpp"

namespace pdsim::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn(0) .. fn(jobs - 1) on up to `workers` threads; rethrows the first
// exception after all threads have joined.
void parallel_for(std::size_t jobs, unsigned workers, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct CloudSpec {
  const char* name;
  const char* slug;
  ShapeTag shape;
};

constexpr std::array<CloudSpec, 6> kClouds{{{"Q", "Q", ShapeTag::disc},
                                           {"Q'", "Q_prime", ShapeTag::disc},
                                           {"R", "R", ShapeTag::annulus},
                                           {"R'", "R_prime", ShapeTag::annulus},
                                           {"S", "S", ShapeTag::circle},
                                           {"S'", "S_prime", ShapeTag::circle}}};

PointCloud sample(ShapeTag shape, std::size_t n, std::uint64_t seed) {
  switch (shape) {
    case ShapeTag::disc: return sample_disc(n, seed);
    case ShapeTag::annulus: return sample_annulus(n, seed);
    case ShapeTag::circle: return sample_circle(n, seed);
    case ShapeTag::external: break;
  }
  throw InputError("cannot sample an external shape");
}

std::string matrix_csv(const Matrix3& m) {
  static constexpr std::array<const char*, 3> kNames{"Q", "R", "S"};
  std::string s = ",Q,R,S\n";
  for (std::size_t i = 0; i < 3; ++i) {
    s += kNames[i];
    for (std::size_t j = 0; j < 3; ++j) s += "," + format_number(m[i][j]);
    s += "\n";
  }
  return s;
}

}  // namespace

double mst_longest_edge(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(n, 0);
  double longest = 0.0;
  std::size_t u = 0;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    in_tree[u] = 1;
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      best[v] = std::min(best[v], d(u, v));
      if (next == n || best[v] < best[next]) next = v;
    }
    longest = std::max(longest, best[next]);
    u = next;
  }
  return longest;
}

double auto_rips_cap(const PointCloud& cloud, std::size_t pilot_size) {
  const std::size_t m = std::min(pilot_size, cloud.size());
  const auto pilot = distance_matrix(std::span<const Point2>(cloud.points.data(), m));
  double largest_death = 0.0;
  if (m >= 3) {
    const auto dgms = rips_persistence(pilot, 1);
    const auto it = dgms.find(1);
    if (it != dgms.end()) {
      for (const auto& x : it->second.finite_pairs) largest_death = std::max(largest_death, x.death);
    }
  }
  double cap = std::max(1.1 * largest_death, mst_longest_edge(distance_matrix(cloud)));
  if (!(cap > 0.0)) cap = 1.0;  // all points coincide
  return cap;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("PDSIM_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(std::min(v, 1024L));
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

double dominance_ratio(const PersistenceDiagram& d) {
  double first = 0.0, second = 0.0;
  for (const auto& x : d.finite_pairs) {
    const double l = x.death - x.birth;
    if (l > first) {
      second = first;
      first = l;
    } else if (l > second) {
      second = l;
    }
  }
  if (first == 0.0) return 0.0;
  return second == 0.0 ? std::numeric_limits<double>::infinity() : first / second;
}

DemoResult run_demo(const DemoConfig& config) {
  if (config.n_points < 50) throw InputError("demo needs at least 50 points per cloud");
  if (config.rips_cap && !(*config.rips_cap > 0.0)) throw InputError("rips cap must be positive");
  const auto start = Clock::now();
  DemoResult result;
  result.config = config;
  result.clouds.resize(kClouds.size());

  parallel_for(kClouds.size(), worker_count(config.threads, kClouds.size()), [&](std::size_t k) {
    const auto t0 = Clock::now();
    CloudResult& c = result.clouds[k];
    c.name = kClouds[k].name;
    c.slug = kClouds[k].slug;
    c.cloud = sample(kClouds[k].shape, config.n_points, split_seed(config.seed, k));
    c.cap = config.rips_cap ? *config.rips_cap : auto_rips_cap(c.cloud);
    c.diagrams = rips_persistence(distance_matrix(c.cloud), 1, c.cap);
    c.seconds = seconds_since(t0);
  });

  // Same-shape pairs, then the upper triangle of each cross-shape matrix.
  struct Job {
    std::size_t a, b, dim;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t dim = 0; dim < 2; ++dim) jobs.push_back({2 * s, 2 * s + 1, dim});
  }
  const std::size_t n_same = jobs.size();
  for (std::size_t dim = 0; dim < 2; ++dim) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) jobs.push_back({2 * i, 2 * j, dim});
    }
  }
  const std::vector<Metric> all(kAllMetrics.begin(), kAllMetrics.end());
  const std::vector<Metric> matrix_metrics(kMatrixMetrics.begin(), kMatrixMetrics.end());
  std::vector<ComparisonReport> reports(jobs.size());
  parallel_for(jobs.size(), worker_count(config.threads, jobs.size()), [&](std::size_t k) {
    const Job& job = jobs[k];
    const auto& a = result.clouds[job.a];
    const auto& b = result.clouds[job.b];
    reports[k] = compare(a.diagrams.at(job.dim), b.diagrams.at(job.dim), config.p,
                         k < n_same ? all : matrix_metrics, a.name + " vs " + b.name);
  });

  result.same_shape.assign(reports.begin(), reports.begin() + static_cast<std::ptrdiff_t>(n_same));
  for (std::size_t k = n_same; k < jobs.size(); ++k) {
    const std::size_t i = jobs[k].a / 2, j = jobs[k].b / 2;
    for (const auto& [metric, value] : reports[k].metrics) {
      auto& m = result.cross_shape[{metric, jobs[k].dim}];
      m[i][j] = m[j][i] = value;
    }
  }
  result.seconds = seconds_since(start);
  return result;
}

void write_demo_artifacts(const DemoResult& result, const std::filesystem::path& out_dir) {
  for (const auto& c : result.clouds) {
    save_points(out_dir / "points" / (c.slug + ".csv"), c.cloud);
    for (const auto& [dim, d] : c.diagrams) {
      const std::string stem = c.slug + "_h" + std::to_string(dim);
      save_diagram(out_dir / "diagrams" / (stem + ".json"), d);
      write_text(out_dir / "plots" / (stem + ".svg"),
                 diagram_svg(d, c.name + ", H" + std::to_string(dim)));
    }
  }

  std::ostringstream same;
  same << report_csv_header({kAllMetrics.begin(), kAllMetrics.end()}) << '\n';
  for (const auto& r : result.same_shape) same << report_csv_row(r) << '\n';
  write_text(out_dir / "same_shape.csv", same.str());

  for (const auto& [key, m] : result.cross_shape) {
    const std::string name =
        "matrix_" + std::string(to_string(key.first)) + "_h" + std::to_string(key.second) + ".csv";
    write_text(out_dir / name, matrix_csv(m));
  }

  nlohmann::ordered_json summary;
  summary["n_points"] = result.config.n_points;
  summary["seed"] = result.config.seed;
  summary["p"] = result.config.p;
  summary["clouds"] = nlohmann::ordered_json::array();
  for (const auto& c : result.clouds) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["rips_cap"] = c.cap;
    j["h0_points"] = c.diagrams.at(0).finite_pairs.size();
    j["h0_essential"] = c.diagrams.at(0).essential_births.size();
    j["h1_points"] = c.diagrams.at(1).finite_pairs.size();
    j["h1_essential"] = c.diagrams.at(1).essential_births.size();
    const double ratio = dominance_ratio(c.diagrams.at(1));
    if (std::isfinite(ratio)) {
      j["h1_dominance_ratio"] = ratio;
    } else {
      j["h1_dominance_ratio"] = "inf";
    }
    j["seconds"] = c.seconds;
    summary["clouds"].push_back(std::move(j));
  }
  summary["seconds"] = result.seconds;
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace pdsim::cli
