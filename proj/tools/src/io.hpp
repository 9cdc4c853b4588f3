#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pdsim/landscape.hpp"
#include "pdsim/persistence.hpp"
#include "pdsim/sampling.hpp"

namespace pdsim::cli {

// Point clouds: CSV with header "x,y" and one point per line, written with
// 17 significant digits. Parse errors name the file and line.
void write_points_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_points_csv(std::istream& in, const std::string& source_name);
void save_points(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud load_points(const std::filesystem::path& path);

// {"dim": k, "pairs": [[b, d], ...], "essential": [b, ...]}
nlohmann::ordered_json diagram_to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const nlohmann::json& j, const std::string& source_name);
void save_diagram(const std::filesystem::path& path, const PersistenceDiagram& d);
PersistenceDiagram load_diagram(const std::filesystem::path& path);

// {"layers": [[[t, y], ...], ...]}
nlohmann::ordered_json landscape_to_json(const PersistenceLandscape& l);
void save_landscape(const std::filesystem::path& path, const PersistenceLandscape& l);

// Writes `text` to `path`, creating parent directories. Throws InputError
// naming the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pdsim::cli
