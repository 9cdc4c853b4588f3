#include "pdsim/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "assignment.hpp"

namespace pdsim {
namespace {

void require_same_dim(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  if (d1.dim != d2.dim) {
    throw std::invalid_argument("cannot compare diagrams of dimensions " + std::to_string(d1.dim) +
                                " and " + std::to_string(d2.dim));
  }
}

void require_p(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("p must be at least 1");
}

double power(double x, double p) { return p == 1.0 ? x : (p == 2.0 ? x * x : std::pow(x, p)); }

double root(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

// Neumaier-compensated running sum.
class Sum {
 public:
  void add(double x) {
    const double t = total_ + x;
    if (std::abs(total_) >= std::abs(x)) {
      carry_ += (total_ - t) + x;
    } else {
      carry_ += (x - t) + total_;
    }
    total_ = t;
  }
  double value() const { return total_ + carry_; }

 private:
  double total_ = 0.0;
  double carry_ = 0.0;
};

std::vector<double> sorted_births(const PersistenceDiagram& d) {
  std::vector<double> b = d.essential_births;
  std::sort(b.begin(), b.end());
  return b;
}

// Essential classes pair up in sorted order, optimal for any convex cost on
// the line. Returns false when the counts differ.
bool essential_costs(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                     std::vector<double>& costs) {
  if (d1.essential_births.size() != d2.essential_births.size()) return false;
  const auto b1 = sorted_births(d1);
  const auto b2 = sorted_births(d2);
  costs.clear();
  for (std::size_t i = 0; i < b1.size(); ++i) costs.push_back(std::abs(b1[i] - b2[i]));
  return true;
}

bool bottleneck_feasible(const std::vector<BirthDeath>& a, const std::vector<BirthDeath>& b,
                         double eps) {
  // Left: a_0..a_{na-1}, then one diagonal slot per b_j.
  // Right: b_0..b_{nb-1}, then one diagonal slot per a_i.
  const std::size_t na = a.size(), nb = b.size();
  detail::BipartiteMatcher matcher(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (sup_distance(a[i], b[j]) <= eps) matcher.add_edge(i, j);
    }
    if (a[i].half_lifespan() <= eps) matcher.add_edge(i, nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (b[j].half_lifespan() <= eps) matcher.add_edge(na + j, j);
    for (std::size_t i = 0; i < na; ++i) matcher.add_edge(na + j, nb + i);
  }
  return matcher.max_matching() == na + nb;
}

double finite_bottleneck(const std::vector<BirthDeath>& a, const std::vector<BirthDeath>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates{0.0};
  candidates.reserve(a.size() * b.size() + a.size() + b.size() + 1);
  for (const auto& x : a) {
    candidates.push_back(x.half_lifespan());
    for (const auto& y : b) candidates.push_back(sup_distance(x, y));
  }
  for (const auto& y : b) candidates.push_back(y.half_lifespan());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest half-lifespan is always feasible (everything to the diagonal).
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (bottleneck_feasible(a, b, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

BirthDeath projection(const BirthDeath& x) { return {x.midpoint(), x.midpoint()}; }

}  // namespace

double sup_distance(const BirthDeath& a, const BirthDeath& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  require_same_dim(d1, d2);
  std::vector<double> ess;
  if (!essential_costs(d1, d2, ess)) return kInfinity;
  double result = finite_bottleneck(d1.finite_pairs, d2.finite_pairs);
  for (double c : ess) result = std::max(result, c);
  return result;
}

Matching wasserstein_matching(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p) {
  require_same_dim(d1, d2);
  require_p(p);
  Matching m;
  m.p = p;
  std::vector<double> ess;
  if (!essential_costs(d1, d2, ess)) {
    m.cost_sup = m.cost_p = kInfinity;
    return m;
  }

  const auto& a = d1.finite_pairs;
  const auto& b = d2.finite_pairs;
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  // Rows: a_i then diagonal slots for b; columns: b_j then diagonal slots for a.
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    double* row = cost.data() + i * n;
    for (std::size_t j = 0; j < nb; ++j) row[j] = power(sup_distance(a[i], b[j]), p);
    const double to_diagonal = power(a[i].half_lifespan(), p);
    for (std::size_t j = nb; j < n; ++j) row[j] = to_diagonal;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    const double to_diagonal = power(b[j].half_lifespan(), p);
    for (std::size_t i = na; i < n; ++i) cost[i * n + j] = to_diagonal;
  }
  const auto assignment = n > 0 ? detail::solve_assignment(cost, n) : std::vector<std::size_t>{};

  Sum total;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = assignment[i];
    Matching::Edge e;
    if (i < na && j < nb) {
      e.first = {MatchEnd::Kind::point, i, a[i]};
      e.second = {MatchEnd::Kind::point, j, b[j]};
      e.cost = sup_distance(a[i], b[j]);
    } else if (i < na) {
      e.first = {MatchEnd::Kind::point, i, a[i]};
      e.second = {MatchEnd::Kind::diagonal, i, projection(a[i])};
      e.cost = a[i].half_lifespan();
    } else if (j < nb) {
      e.first = {MatchEnd::Kind::diagonal, j, projection(b[j])};
      e.second = {MatchEnd::Kind::point, j, b[j]};
      e.cost = b[j].half_lifespan();
    } else {
      continue;  // diagonal to diagonal
    }
    total.add(power(e.cost, p));
    m.cost_sup = std::max(m.cost_sup, e.cost);
    m.edges.push_back(e);
  }
  const auto b1 = sorted_births(d1);
  const auto b2 = sorted_births(d2);
  for (std::size_t k = 0; k < ess.size(); ++k) {
    Matching::Edge e;
    e.first = {MatchEnd::Kind::essential, k, {b1[k], kInfinity}};
    e.second = {MatchEnd::Kind::essential, k, {b2[k], kInfinity}};
    e.cost = ess[k];
    total.add(power(e.cost, p));
    m.cost_sup = std::max(m.cost_sup, e.cost);
    m.edges.push_back(e);
  }
  m.cost_p = root(total.value(), p);
  return m;
}

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p) {
  require_same_dim(d1, d2);
  if (p == kInfinity) return bottleneck(d1, d2);
  return wasserstein_matching(d1, d2, p).cost_p;
}

Matching trivial_matching(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p) {
  require_same_dim(d1, d2);
  if (p != kInfinity) require_p(p);
  Matching m;
  m.p = p;
  if (!d1.essential_births.empty() || !d2.essential_births.empty()) {
    m.cost_sup = m.cost_p = kInfinity;
    return m;
  }
  Sum total;
  auto add = [&](Matching::Edge e) {
    m.cost_sup = std::max(m.cost_sup, e.cost);
    if (p != kInfinity) total.add(power(e.cost, p));
    m.edges.push_back(e);
  };
  for (std::size_t i = 0; i < d1.finite_pairs.size(); ++i) {
    const auto& x = d1.finite_pairs[i];
    add({{MatchEnd::Kind::point, i, x}, {MatchEnd::Kind::diagonal, i, projection(x)}, x.half_lifespan()});
  }
  for (std::size_t j = 0; j < d2.finite_pairs.size(); ++j) {
    const auto& y = d2.finite_pairs[j];
    add({{MatchEnd::Kind::diagonal, j, projection(y)}, {MatchEnd::Kind::point, j, y}, y.half_lifespan()});
  }
  m.cost_p = p == kInfinity ? m.cost_sup : root(total.value(), p);
  return m;
}

double trivial_matching_cost(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p) {
  return trivial_matching(d1, d2, p).cost_p;
}

double distance_to_empty(const PersistenceDiagram& d, double p) {
  return trivial_matching_cost(d, PersistenceDiagram{d.dim, {}, {}}, p);
}

double brute_force_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double p) {
  require_same_dim(d1, d2);
  if (p != kInfinity) require_p(p);
  const std::size_t total = d1.finite_pairs.size() + d2.finite_pairs.size() +
                            d1.essential_births.size() + d2.essential_births.size();
  if (total > 6) throw std::invalid_argument("brute force limited to 6 points in total");
  if (d1.essential_births.size() != d2.essential_births.size()) return kInfinity;

  const bool sup = p == kInfinity;
  auto combine = [&](double acc, double c) { return sup ? std::max(acc, c) : acc + std::pow(c, p); };

  const auto& a = d1.finite_pairs;
  const auto& b = d2.finite_pairs;
  std::vector<char> used(b.size(), 0);
  double best_finite = kInfinity;
  auto search = [&](auto&& self, std::size_t i, double acc) -> void {
    if (i == a.size()) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j]) acc = combine(acc, b[j].half_lifespan());
      }
      best_finite = std::min(best_finite, acc);
      return;
    }
    self(self, i + 1, combine(acc, a[i].half_lifespan()));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      self(self, i + 1, combine(acc, sup_distance(a[i], b[j])));
      used[j] = 0;
    }
  };
  search(search, 0, 0.0);

  double best_essential = kInfinity;
  std::vector<std::size_t> perm(d2.essential_births.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double acc = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      acc = combine(acc, std::abs(d1.essential_births[k] - d2.essential_births[perm[k]]));
    }
    best_essential = std::min(best_essential, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (sup) return std::max(best_finite, best_essential);
  return std::pow(best_finite + best_essential, 1.0 / p);
}

}  // namespace pdsim
