#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdsim/persistence.hpp"

namespace pdsim::cli {

enum class Metric { bottleneck, wasserstein_p, landscape_sup, landscape_p, cosine_distance, rho_distance };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::bottleneck,    Metric::wasserstein_p,
                                                   Metric::landscape_sup, Metric::landscape_p,
                                                   Metric::cosine_distance, Metric::rho_distance};

std::string_view to_string(Metric m);
// Comma-separated names; "all" selects every metric. Output keeps the fixed
// column order regardless of the order given. Throws InputError.
std::vector<Metric> parse_metrics(std::string_view list);

struct ComparisonReport {
  std::string pair_label;
  std::size_t dim = 0;
  double p = 2.0;
  std::vector<std::pair<Metric, double>> metrics;  // fixed column order
};

// Essential classes are left out: every metric sees only the finite parts.
// Throws SemanticError for diagrams of different dimensions.
ComparisonReport compare(const PersistenceDiagram& a, const PersistenceDiagram& b, double p,
                         const std::vector<Metric>& metrics, std::string pair_label);

double metric_value(Metric m, const PersistenceDiagram& a, const PersistenceDiagram& b, double p);

nlohmann::ordered_json report_to_json(const ComparisonReport& r);
std::string report_csv_header(const std::vector<Metric>& metrics);
std::string report_csv_row(const ComparisonReport& r);

// 17 significant digits; infinities as "inf".
std::string format_number(double x);

}  // namespace pdsim::cli
