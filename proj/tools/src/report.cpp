#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "errors.hpp"
#include "pdsim/diagram.hpp"
#include "pdsim/landscape.hpp"
#include "pdsim/similarity.hpp"

namespace pdsim::cli {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::bottleneck: return "bottleneck";
    case Metric::wasserstein_p: return "wasserstein_p";
    case Metric::landscape_sup: return "landscape_sup";
    case Metric::landscape_p: return "landscape_p";
    case Metric::cosine_distance: return "cosine_distance";
    case Metric::rho_distance: return "rho_distance";
  }
  return "unknown";
}

std::vector<Metric> parse_metrics(std::string_view list) {
  if (list == "all") return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<bool> wanted(kAllMetrics.size(), false);
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto name = list.substr(0, comma);
    const auto it = std::find_if(kAllMetrics.begin(), kAllMetrics.end(),
                                 [&](Metric m) { return to_string(m) == name; });
    if (it == kAllMetrics.end()) throw InputError("unknown metric '" + std::string(name) + "'");
    wanted[static_cast<std::size_t>(it - kAllMetrics.begin())] = true;
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
  }
  std::vector<Metric> out;
  for (std::size_t i = 0; i < kAllMetrics.size(); ++i) {
    if (wanted[i]) out.push_back(kAllMetrics[i]);
  }
  if (out.empty()) throw InputError("no metrics selected");
  return out;
}

double metric_value(Metric m, const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
  switch (m) {
    case Metric::bottleneck: return bottleneck(a, b);
    case Metric::wasserstein_p: return wasserstein(a, b, p);
    case Metric::landscape_sup: return sup_norm(subtract(build_landscape(a), build_landscape(b)));
    case Metric::landscape_p: return p_norm(subtract(build_landscape(a), build_landscape(b)), p);
    case Metric::cosine_distance: return cosine_distance(a, b);
    case Metric::rho_distance: return rho_distance(a, b);
  }
  return std::nan("");
}

ComparisonReport compare(const PersistenceDiagram& a, const PersistenceDiagram& b, double p,
                         const std::vector<Metric>& metrics, std::string pair_label) {
  if (a.dim != b.dim) {
    throw SemanticError("cannot compare an H" + std::to_string(a.dim) + " diagram with an H" +
                        std::to_string(b.dim) + " diagram");
  }
  const auto fa = a.finite_part();
  const auto fb = b.finite_part();
  ComparisonReport r{std::move(pair_label), a.dim, p, {}};
  for (Metric m : metrics) {
    try {
      r.metrics.emplace_back(m, metric_value(m, fa, fb, p));
    } catch (const std::invalid_argument& e) {
      throw SemanticError(std::string(to_string(m)) + ": " + e.what());
    }
  }
  return r;
}

nlohmann::ordered_json report_to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["pair_label"] = r.pair_label;
  j["dim"] = r.dim;
  j["p"] = r.p;
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [m, v] : r.metrics) j["metrics"][std::string(to_string(m))] = v;
  return j;
}

std::string report_csv_header(const std::vector<Metric>& metrics) {
  std::string s = "pair_label,dim,p";
  for (Metric m : metrics) {
    s += ',';
    s += to_string(m);
  }
  return s;
}

std::string report_csv_row(const ComparisonReport& r) {
  std::string s = r.pair_label + "," + std::to_string(r.dim) + "," + format_number(r.p);
  for (const auto& [m, v] : r.metrics) s += "," + format_number(v);
  return s;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace pdsim::cli
