#include "pdsim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdsim/diagram.hpp"
#include "pdsim/error.hpp"
#include "pdsim/landscape.hpp"

namespace pdsim {
namespace {

constexpr double kClampSlack = 1e-14;
constexpr double kRhoAgreement = 1e-12;

// Clamp rounding overshoot of a quantity that must lie in [0, 1].
double clamp_unit(double x, const char* what) {
  if (x >= 0.0 && x <= 1.0) return x;
  if (x < 0.0 && x >= -kClampSlack) return 0.0;
  if (x > 1.0 && x <= 1.0 + kClampSlack) return 1.0;
  throw InternalConsistencyError(std::string(what) + " left [0, 1]: " + std::to_string(x));
}

struct Gram {
  double ip = 0.0;
  double n1sq = 0.0;
  double n2sq = 0.0;
};

Gram gram(const PersistenceLandscape& l1, const PersistenceLandscape& l2) {
  return {inner_product(l1, l2), inner_product(l1, l1), inner_product(l2, l2)};
}

double cosine_from(const Gram& g) {
  if (g.n1sq == 0.0 || g.n2sq == 0.0) {
    throw std::invalid_argument("cosine similarity needs two diagrams with non-empty finite parts");
  }
  return clamp_unit(g.ip / std::sqrt(g.n1sq * g.n2sq), "cosine similarity");
}

double rho_from(const Gram& g) {
  const double denom = g.n1sq + g.n2sq;
  if (denom == 0.0) throw std::invalid_argument("rho needs at least one non-empty diagram");
  return clamp_unit(2.0 * g.ip / denom, "rho similarity");
}

double quotient_from(const PersistenceLandscape& l1, const PersistenceLandscape& l2,
                     const Gram& g) {
  const double denom = g.n1sq + g.n2sq;
  if (denom == 0.0) throw std::invalid_argument("rho needs at least one non-empty diagram");
  const auto diff = subtract(l1, l2);
  return clamp_unit(p_norm_power(diff, 2.0) / denom, "rho distance");
}

double w2(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  return wasserstein(a.finite_part(), b.finite_part(), 2.0);
}

}  // namespace

const char* to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::cosine_similarity: return "cosine_similarity";
    case SimilarityKind::cosine_distance: return "cosine_distance";
    case SimilarityKind::rho_similarity: return "rho_similarity";
    case SimilarityKind::rho_distance: return "rho_distance";
  }
  return "unknown";
}

double cosine_similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  return cosine_from(gram(build_landscape(d1), build_landscape(d2)));
}

double cosine_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  return 1.0 - cosine_similarity(d1, d2);
}

double rho_similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  return rho_from(gram(build_landscape(d1), build_landscape(d2)));
}

double rho_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  const auto l1 = build_landscape(d1);
  const auto l2 = build_landscape(d2);
  const Gram g = gram(l1, l2);
  const double direct = 1.0 - rho_from(g);
  const double quotient = quotient_from(l1, l2, g);
  if (std::abs(direct - quotient) > kRhoAgreement) {
    throw InternalConsistencyError("rho distance forms disagree: " + std::to_string(direct) +
                                   " vs " + std::to_string(quotient));
  }
  return direct;
}

double rho_distance_quotient(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  const auto l1 = build_landscape(d1);
  const auto l2 = build_landscape(d2);
  return quotient_from(l1, l2, gram(l1, l2));
}

SimilarityResult similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                            SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::cosine_similarity: return {cosine_similarity(d1, d2), kind};
    case SimilarityKind::cosine_distance: return {cosine_distance(d1, d2), kind};
    case SimilarityKind::rho_similarity: return {rho_similarity(d1, d2), kind};
    case SimilarityKind::rho_distance: return {rho_distance(d1, d2), kind};
  }
  throw std::invalid_argument("unknown similarity kind");
}

bool is_orthogonal(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double tolerance) {
  if (!(tolerance >= 0.0)) throw std::invalid_argument("orthogonality tolerance must be >= 0");
  const Gram g = gram(build_landscape(d1), build_landscape(d2));
  return g.ip <= tolerance * std::sqrt(g.n1sq) * std::sqrt(g.n2sq);
}

bool is_orthogonal_by_intervals(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  const auto u1 = support_union(d1);
  const auto u2 = support_union(d2);
  std::size_t i = 0, j = 0;
  while (i < u1.size() && j < u2.size()) {
    if (u1[i].lo < u2[j].hi && u2[j].lo < u1[i].hi) return false;
    if (u1[i].hi <= u2[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

StabilityReport check_stability_bound(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                      const PersistenceDiagram& d1_perturbed,
                                      const PersistenceDiagram& d2_perturbed) {
  const auto l1 = build_landscape(d1);
  const auto l2 = build_landscape(d2);
  const auto t1 = build_landscape(d1_perturbed);
  const auto t2 = build_landscape(d2_perturbed);
  if (l1.is_zero() || l2.is_zero() || t1.is_zero() || t2.is_zero()) {
    throw std::invalid_argument("stability check needs non-empty diagrams");
  }

  StabilityReport r;
  r.lhs = std::abs(cosine_from(gram(t1, t2)) - cosine_from(gram(l1, l2)));
  r.w2 = {w2(d1, d1_perturbed), w2(d2, d2_perturbed)};

  const double a1 = p_norm(l1, 2.0);
  const double a2 = p_norm(l2, 2.0);
  const double delta = p_norm(subtract(l1, l2), 2.0);
  const double h1 = distance_to_empty(d1.finite_part(), kInfinity) + 1.0 / 3.0;
  const double h2 = distance_to_empty(d2.finite_part(), kInfinity) + 1.0 / 3.0;

  // Landscape bound |phi(D~) - phi(D)|^2 <= 2 h W_2^2 for W_2 <= 1.
  const PersistenceLandscape* originals[2] = {&l1, &l2};
  const PersistenceLandscape* perturbed[2] = {&t1, &t2};
  const double h[2] = {h1, h2};
  for (int i = 0; i < 2; ++i) {
    auto& b = r.landscape_bound[i];
    b.lhs = p_norm_power(subtract(*perturbed[i], *originals[i]), 2.0);
    b.rhs = 2.0 * h[i] * r.w2[i] * r.w2[i];
    b.applicable = r.w2[i] <= 1.0;
  }

  // eta keeps A_i w_i <= a_i / 2, so a_i / 2 <= |phi(D_i~)| <= 3 a_i / 2.
  r.eta = std::sqrt(std::min({1.0, a1 * a1 / (8.0 * h1), a2 * a2 / (8.0 * h2)}));
  r.within_eta = r.w2[0] <= r.eta && r.w2[1] <= r.eta;

  // Write ~a_i = |phi(D_i~)|, D_i = |~a_i - a_i| <= A_i w_i.
  const double big_a1 = std::sqrt(2.0 * h1);
  const double big_a2 = std::sqrt(2.0 * h2);

  // First term, |~a2/~a1 - a2/a1| <= (a1 D2 + a2 D1) / (a1 ~a1)
  //   <= 2 (a1 D2 + a2 D1) / a1^2.
  const double m1_w1 = 2.0 * a2 * big_a1 / (a1 * a1);
  const double m1_w2 = 2.0 * big_a2 / a1;
  // Second term, the same with the roles of 1 and 2 swapped.
  const double m2_w1 = 2.0 * big_a1 / a2;
  const double m2_w2 = 2.0 * a1 * big_a2 / (a2 * a2);
  // Third term, |~delta^2 / (~a1 ~a2) - delta^2 / (a1 a2)|, split as
  //   |~delta^2 - delta^2| / (~a1 ~a2) + delta^2 |1/(~a1 ~a2) - 1/(a1 a2)|.
  // (a) ~a1 ~a2 >= a1 a2 / 4, |~delta - delta| <= D1 + D2 and
  //     ~delta + delta <= ~a1 + ~a2 + delta <= 3 (a1 + a2) / 2 + delta =: K,
  //     giving 4 K (D1 + D2) / (a1 a2).
  // (b) |1/(~a1 ~a2) - 1/(a1 a2)| <= |1/~a1 - 1/a1| / a2 + |1/~a2 - 1/a2| / ~a1
  //     <= 2 D1 / (a1^2 a2) + 4 D2 / (a1 a2^2).
  const double k = 1.5 * (a1 + a2) + delta;
  const double m3_w1 = 4.0 * k * big_a1 / (a1 * a2) + 2.0 * delta * delta * big_a1 / (a1 * a1 * a2);
  const double m3_w2 = 4.0 * k * big_a2 / (a1 * a2) + 4.0 * delta * delta * big_a2 / (a1 * a2 * a2);
  // 2 |s~ - s| is at most the sum of the three terms.
  r.c1 = 0.5 * (m1_w1 + m2_w1 + m3_w1);
  r.c2 = 0.5 * (m1_w2 + m2_w2 + m3_w2);
  r.rhs = r.c1 * r.w2[0] + r.c2 * r.w2[1];
  return r;
}

}  // namespace pdsim
