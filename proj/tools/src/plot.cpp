#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pdsim::cli {
namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 50.0;
constexpr double kInfBand = 20.0;  // essential classes are drawn this far above the top

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& d, const std::string& title) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  auto extend = [&](double v) {
    if (!any) {
      lo = hi = v;
      any = true;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto& x : d.finite_pairs) {
    extend(x.birth);
    extend(x.death);
  }
  for (double b : d.essential_births) extend(b);
  if (!any || hi <= lo) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot = kSize - 2.0 * kMargin;
  auto sx = [&](double v) { return kMargin + plot * (v - lo) / (hi - lo); };
  auto sy = [&](double v) { return kSize - kMargin - plot * (v - lo) / (hi - lo); };
  const double inf_y = kMargin - kInfBand;

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kSize / 2 << "\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">" << title
    << "</text>\n";
  // Axes box and diagonal.
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot << "\" height=\"" << plot
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << num(sx(lo)) << "\" y1=\"" << num(sy(lo)) << "\" x2=\"" << num(sx(hi))
    << "\" y2=\"" << num(sy(hi)) << "\" stroke=\"gray\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    s << "<text x=\"" << num(sx(v)) << "\" y=\"" << kSize - kMargin + 15
      << "\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
    s << "<text x=\"" << kMargin - 5 << "\" y=\"" << num(sy(v) + 4)
      << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
  }
  s << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 12 << "\" text-anchor=\"middle\">birth</text>\n";
  s << "<text x=\"14\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << kSize / 2 << ")\">death</text>\n";
  if (!d.essential_births.empty()) {
    s << "<line x1=\"" << kMargin << "\" y1=\"" << inf_y << "\" x2=\"" << kSize - kMargin << "\" y2=\""
      << inf_y << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    s << "<text x=\"" << kMargin - 5 << "\" y=\"" << inf_y + 4 << "\" text-anchor=\"end\">inf</text>\n";
  }
  for (const auto& x : d.finite_pairs) {
    s << "<circle cx=\"" << num(sx(x.birth)) << "\" cy=\"" << num(sy(x.death))
      << "\" r=\"2.5\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  }
  for (double b : d.essential_births) {
    s << "<circle cx=\"" << num(sx(b)) << "\" cy=\"" << inf_y << "\" r=\"3\" fill=\"firebrick\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace pdsim::cli
