#pragma once

#include <string>

#include "pdsim/persistence.hpp"

namespace pdsim::cli {

// Static SVG scatter plot of a diagram in the birth/death plane with the
// diagonal drawn in. Essential classes sit on a dashed line above the plot
// area labelled "inf".
std::string diagram_svg(const PersistenceDiagram& d, const std::string& title);

}  // namespace pdsim::cli
