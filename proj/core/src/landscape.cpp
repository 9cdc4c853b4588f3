#include "pdsim/landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pdsim {
namespace {

class Sum {
 public:
  void add(double x) {
    const double t = total_ + x;
    carry_ += std::abs(total_) >= std::abs(x) ? (total_ - t) + x : (x - t) + total_;
    total_ = t;
  }
  double value() const { return total_ + carry_; }

 private:
  double total_ = 0.0;
  double carry_ = 0.0;
};

bool collinear(const Knot& a, const Knot& b, const Knot& c) {
  const double lhs = (b.y - a.y) * (c.t - b.t);
  const double rhs = (c.y - b.y) * (b.t - a.t);
  if (lhs == rhs) return true;
  const double scale = std::abs(b.y - a.y) * (c.t - b.t) + std::abs(c.y - b.y) * (b.t - a.t);
  return std::abs(lhs - rhs) <= 1e-13 * scale;
}

// Value of `f` at `t`, where `cursor` is the index of the first knot with
// knot.t >= t (advanced monotonically by the caller).
double value_at(const std::vector<Knot>& f, std::size_t cursor, double t) {
  if (cursor < f.size() && f[cursor].t == t) return f[cursor].y;
  if (cursor == 0 || cursor >= f.size()) return 0.0;
  const Knot& a = f[cursor - 1];
  const Knot& b = f[cursor];
  return a.y + (b.y - a.y) * ((t - a.t) / (b.t - a.t));
}

struct MergedKnot {
  double t, f, g;
};

// Union of both knot sets, with both functions evaluated at each.
std::vector<MergedKnot> merge(const std::vector<Knot>& f, const std::vector<Knot>& g) {
  std::vector<MergedKnot> out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    double t;
    if (j >= g.size() || (i < f.size() && f[i].t <= g[j].t)) {
      t = f[i].t;
    } else {
      t = g[j].t;
    }
    out.push_back({t, value_at(f, i, t), value_at(g, j, t)});
    if (i < f.size() && f[i].t == t) ++i;
    if (j < g.size() && g[j].t == t) ++j;
  }
  return out;
}

const std::vector<Knot>& layer_knots(std::span<const PLFunction> layers, std::size_t j) {
  static const std::vector<Knot> kEmpty;
  return j < layers.size() ? layers[j].knots() : kEmpty;
}

// integral over [0, w] of |l|^p for the linear l from a to b, a, b >= 0.
double one_signed_integral(double w, double a, double b, double p) {
  if (w <= 0.0 || (a == 0.0 && b == 0.0)) return 0.0;
  double mean;  // average of |l|^p over the segment
  const double rounded = std::round(p);
  if (rounded == p && p <= 64.0) {
    // (a^(p+1) - b^(p+1)) / ((p+1)(a-b)) = sum_k a^k b^(p-k) / (p+1)
    const int n = static_cast<int>(p);
    double acc = 0.0, ak = 1.0;
    for (int k = 0; k <= n; ++k) {
      acc += ak * std::pow(b, n - k);
      ak *= a;
    }
    mean = acc / (p + 1.0);
  } else if (a == b) {
    mean = std::pow(a, p);
  } else if (std::abs(a - b) > 1e-3 * std::max(a, b)) {
    mean = (std::pow(a, p + 1.0) - std::pow(b, p + 1.0)) / ((p + 1.0) * (a - b));
  } else {
    // Nearly constant: 5-point Gauss-Legendre avoids the cancellation above.
    static constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                                 0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665,
                                                   0.5688888888888889, 0.4786286704993665,
                                                   0.2369268850561891};
    mean = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      const double s = 0.5 * (nodes[k] + 1.0);
      mean += 0.5 * weights[k] * std::pow(a + (b - a) * s, p);
    }
  }
  return w * mean;
}

double segment_integral(double w, double y0, double y1, double p) {
  if ((y0 < 0.0 && y1 > 0.0) || (y0 > 0.0 && y1 < 0.0)) {
    const double a = std::abs(y0), b = std::abs(y1);
    const double root = w * (a / (a + b));
    return one_signed_integral(root, a, 0.0, p) + one_signed_integral(w - root, 0.0, b, p);
  }
  return one_signed_integral(w, std::abs(y0), std::abs(y1), p);
}

void require_norm_p(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("norm exponent p must be at least 1");
}

}  // namespace

PLFunction::PLFunction(std::vector<Knot> knots) {
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (!(knots[k].t > knots[k - 1].t)) {
      throw std::invalid_argument("PL knots must have strictly increasing t");
    }
  }
  if (!knots.empty() && (knots.front().y != 0.0 || knots.back().y != 0.0)) {
    throw std::invalid_argument("PL function must vanish at its first and last knot");
  }
  std::vector<Knot> out;
  out.reserve(knots.size());
  for (const Knot& k : knots) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), k)) out.pop_back();
    out.push_back(k);
  }
  // Strip zero runs at either end.
  std::size_t first = 0, last = out.size();
  while (last - first >= 2 && out[first].y == 0.0 && out[first + 1].y == 0.0) ++first;
  while (last - first >= 2 && out[last - 1].y == 0.0 && out[last - 2].y == 0.0) --last;
  if (last - first < 2) return;  // identically zero
  knots_.assign(out.begin() + static_cast<std::ptrdiff_t>(first),
                out.begin() + static_cast<std::ptrdiff_t>(last));
}

double PLFunction::operator()(double t) const {
  if (knots_.empty() || t <= knots_.front().t || t >= knots_.back().t) return 0.0;
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                                   [](const Knot& k, double x) { return k.t < x; });
  return value_at(knots_, static_cast<std::size_t>(it - knots_.begin()), t);
}

PLFunction tent(double birth, double death) {
  if (!std::isfinite(birth) || !std::isfinite(death)) {
    throw std::invalid_argument("tent requires a finite birth and death");
  }
  if (!(birth < death)) throw std::invalid_argument("tent requires birth < death");
  const double mid = 0.5 * (birth + death);
  return PLFunction({{birth, 0.0}, {mid, 0.5 * (death - birth)}, {death, 0.0}});
}

PersistenceLandscape build_landscape(const PersistenceDiagram& d) {
  std::vector<BirthDeath> tents;
  for (const auto& x : d.finite_pairs) {
    if (x.death > x.birth && std::isfinite(x.death)) tents.push_back(x);
  }
  if (tents.empty()) return {};
  std::sort(tents.begin(), tents.end(),
            [](const BirthDeath& a, const BirthDeath& b) { return a.birth < b.birth; });

  std::vector<double> events;
  events.reserve(3 * tents.size());
  for (const auto& x : tents) {
    events.push_back(x.birth);
    events.push_back(x.midpoint());
    events.push_back(x.death);
  }
  // Rising edge of i meets falling edge of k at (b_i + d_k) / 2.
  for (const auto& rise : tents) {
    const double rise_mid = rise.midpoint();
    for (const auto& fall : tents) {
      if (fall.birth >= rise_mid) break;  // births sorted; no later tent can cross
      const double t = 0.5 * (rise.birth + fall.death);
      if (t > rise.birth && t < rise_mid && t > fall.midpoint() && t < fall.death) {
        events.push_back(t);
      }
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  // Sweep: ranked positive tent values at every event.
  std::vector<double> values;
  std::vector<std::size_t> offset{0};
  std::vector<std::size_t> active;
  std::size_t next_tent = 0;
  for (double t : events) {
    while (next_tent < tents.size() && tents[next_tent].birth < t) active.push_back(next_tent++);
    std::erase_if(active, [&](std::size_t i) { return tents[i].death <= t; });
    const std::size_t start = values.size();
    for (std::size_t i : active) {
      const double v = std::min(t - tents[i].birth, tents[i].death - t);
      if (v > 0.0) values.push_back(v);
    }
    std::sort(values.begin() + static_cast<std::ptrdiff_t>(start), values.end(), std::greater<>());
    offset.push_back(values.size());
  }

  const std::size_t n_events = events.size();
  auto count = [&](std::size_t k) { return offset[k + 1] - offset[k]; };
  std::size_t n_layers = 0;
  for (std::size_t k = 0; k < n_events; ++k) n_layers = std::max(n_layers, count(k));

  // Layer j needs a knot at event k unless it is zero on both adjacent
  // segments, i.e. unless j exceeds the counts at k - 1, k and k + 1.
  std::vector<std::vector<Knot>> knots(n_layers);
  for (std::size_t k = 0; k < n_events; ++k) {
    std::size_t reach = count(k);
    if (k > 0) reach = std::max(reach, count(k - 1));
    if (k + 1 < n_events) reach = std::max(reach, count(k + 1));
    for (std::size_t j = 0; j < reach; ++j) {
      const double y = j < count(k) ? values[offset[k] + j] : 0.0;
      knots[j].push_back({events[k], y});
    }
  }

  PersistenceLandscape landscape;
  landscape.layers.reserve(n_layers);
  for (auto& layer : knots) {
    PLFunction f(std::move(layer));
    if (!f.is_zero()) landscape.layers.push_back(std::move(f));
  }
  return landscape;
}

double evaluate(const PersistenceLandscape& landscape, std::size_t j, double t) {
  if (j == 0 || j > landscape.layers.size()) return 0.0;
  return landscape.layers[j - 1](t);
}

std::vector<PLFunction> subtract(const PersistenceLandscape& a, const PersistenceLandscape& b) {
  const std::size_t n = std::max(a.layers.size(), b.layers.size());
  std::vector<PLFunction> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto merged = merge(layer_knots(a.layers, j), layer_knots(b.layers, j));
    std::vector<Knot> diff;
    diff.reserve(merged.size());
    for (const auto& m : merged) diff.push_back({m.t, m.f - m.g});
    out.emplace_back(std::move(diff));
  }
  return out;
}

double p_norm_power(std::span<const PLFunction> layers, double p) {
  require_norm_p(p);
  Sum total;
  for (const auto& layer : layers) {
    const auto& k = layer.knots();
    for (std::size_t i = 1; i < k.size(); ++i) {
      total.add(segment_integral(k[i].t - k[i - 1].t, k[i - 1].y, k[i].y, p));
    }
  }
  return total.value();
}

double p_norm(std::span<const PLFunction> layers, double p) {
  const double s = p_norm_power(layers, p);
  return p == 1.0 ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double p_norm(const PersistenceLandscape& landscape, double p) { return p_norm(landscape.layers, p); }

double sup_norm(std::span<const PLFunction> layers) {
  double m = 0.0;
  for (const auto& layer : layers) {
    for (const auto& k : layer.knots()) m = std::max(m, std::abs(k.y));
  }
  return m;
}

double sup_norm(const PersistenceLandscape& landscape) { return sup_norm(landscape.layers); }

double inner_product(std::span<const PLFunction> a, std::span<const PLFunction> b) {
  Sum total;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j) {
    const auto merged = merge(a[j].knots(), b[j].knots());
    for (std::size_t i = 1; i < merged.size(); ++i) {
      const auto& l = merged[i - 1];
      const auto& r = merged[i];
      // Simpson is exact for the quadratic product of two linear pieces.
      const double w = r.t - l.t;
      total.add(w * (2.0 * l.f * l.g + l.f * r.g + r.f * l.g + 2.0 * r.f * r.g) / 6.0);
    }
  }
  return total.value();
}

double inner_product(const PersistenceLandscape& a, const PersistenceLandscape& b) {
  return inner_product(a.layers, b.layers);
}

std::vector<OpenInterval> support_union(const PersistenceDiagram& d) {
  std::vector<OpenInterval> intervals;
  for (const auto& x : d.finite_pairs) {
    if (x.death > x.birth) intervals.push_back({x.birth, x.death});
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::vector<OpenInterval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo < merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

}  // namespace pdsim
