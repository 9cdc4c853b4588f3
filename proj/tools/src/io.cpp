#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pdsim::cli {
namespace {

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

double json_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

}  // namespace

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  out << "x,y\n";
  for (const auto& p : cloud.points) out << format17(p.x) << ',' << format17(p.y) << '\n';
}

PointCloud read_points_csv(std::istream& in, const std::string& source_name) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!seen_header) {
      seen_header = true;
      if (row == "x,y") continue;
    }
    const auto comma = row.find(',');
    Point2 p;
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos ||
        !parse_double(row.substr(0, comma), p.x) || !parse_double(row.substr(comma + 1), p.y)) {
      throw InputError(source_name + ":" + std::to_string(line_no) +
                       ": expected two finite numbers 'x,y', got '" + std::string(row) + "'");
    }
    cloud.points.push_back(p);
  }
  if (cloud.points.empty()) throw InputError(source_name + ": no points");
  return cloud;
}

void save_points(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ostringstream out;
  write_points_csv(out, cloud);
  write_text(path, out.str());
}

PointCloud load_points(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_points_csv(in, path.string());
}

nlohmann::ordered_json diagram_to_json(const PersistenceDiagram& d) {
  nlohmann::ordered_json j;
  j["dim"] = d.dim;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& x : d.finite_pairs) j["pairs"].push_back({x.birth, x.death});
  j["essential"] = d.essential_births;
  return j;
}

PersistenceDiagram diagram_from_json(const nlohmann::json& j, const std::string& source_name) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("pairs")) {
    throw InputError(source_name + ": diagram JSON needs \"dim\" and \"pairs\"");
  }
  if (!j["dim"].is_number_unsigned()) throw InputError(source_name + ": \"dim\" must be a count");
  PersistenceDiagram d;
  d.dim = j["dim"].get<std::size_t>();
  if (!j["pairs"].is_array()) throw InputError(source_name + ": \"pairs\" must be an array");
  for (std::size_t k = 0; k < j["pairs"].size(); ++k) {
    const auto& pair = j["pairs"][k];
    const std::string where = source_name + ": pairs[" + std::to_string(k) + "]";
    if (!pair.is_array() || pair.size() != 2) throw InputError(where + ": expected [birth, death]");
    BirthDeath x{json_number(pair[0], where), json_number(pair[1], where)};
    if (!(x.birth < x.death) || !std::isfinite(x.death)) {
      throw InputError(where + ": need finite birth < death");
    }
    d.finite_pairs.push_back(x);
  }
  if (j.contains("essential")) {
    if (!j["essential"].is_array()) throw InputError(source_name + ": \"essential\" must be an array");
    for (std::size_t k = 0; k < j["essential"].size(); ++k) {
      d.essential_births.push_back(
          json_number(j["essential"][k], source_name + ": essential[" + std::to_string(k) + "]"));
    }
  }
  return d;
}

void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& d) {
  write_text(path, diagram_to_json(d).dump() + "\n");
}

PersistenceDiagram load_diagram(const std::filesystem::path& path) {
  auto in = open_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return diagram_from_json(j, path.string());
}

nlohmann::ordered_json landscape_to_json(const PersistenceLandscape& l) {
  nlohmann::ordered_json j;
  j["layers"] = nlohmann::ordered_json::array();
  for (const auto& layer : l.layers) {
    auto knots = nlohmann::ordered_json::array();
    for (const auto& k : layer.knots()) knots.push_back({k.t, k.y});
    j["layers"].push_back(std::move(knots));
  }
  return j;
}

void save_landscape(const std::filesystem::path& path, const PersistenceLandscape& l) {
  write_text(path, landscape_to_json(l).dump() + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace pdsim::cli
