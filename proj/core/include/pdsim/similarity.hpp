#pragma once

#include <array>

#include "pdsim/persistence.hpp"

namespace pdsim {

// All functions here look only at the finite part of each diagram; essential
// classes have no landscape.

enum class SimilarityKind { cosine_similarity, cosine_distance, rho_similarity, rho_distance };

struct SimilarityResult {
  double value = 0.0;
  SimilarityKind kind = SimilarityKind::cosine_similarity;
};

const char* to_string(SimilarityKind kind);

/// <phi(D1), phi(D2)> / (|phi(D1)| |phi(D2)|) with exact landscape integrals.
/// Throws std::invalid_argument if either landscape is zero.
double cosine_similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2);
double cosine_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// 2<phi(D1), phi(D2)> / (|phi(D1)|^2 + |phi(D2)|^2). Defined when at least
/// one landscape is non-zero; throws std::invalid_argument otherwise.
double rho_similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2);
// 1 - rho, cross-checked against |phi(D1) - phi(D2)|^2 / (|phi(D1)|^2 + |phi(D2)|^2).
double rho_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2);
// The quotient form of rho_distance on its own.
double rho_distance_quotient(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

SimilarityResult similarity(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                            SimilarityKind kind);

/// <phi(D1), phi(D2)> <= tolerance * |phi(D1)| |phi(D2)|. A zero landscape is
/// orthogonal to everything. Throws std::invalid_argument for tolerance < 0.
bool is_orthogonal(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   double tolerance = 1e-12);

// Exact test: no open interval (b, d) of one diagram meets one of the other.
bool is_orthogonal_by_intervals(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

struct LandscapeBoundCheck {
  double lhs = 0.0;  // |phi(D~) - phi(D)|^2
  double rhs = 0.0;  // 2 (W_inf(D, empty) + 1/3) W_2(D, D~)^2
  bool applicable = false;  // W_2(D, D~) <= 1
};

struct StabilityReport {
  double lhs = 0.0;  // |s(D1~, D2~) - s(D1, D2)|
  double rhs = 0.0;  // c1 W_2(D1, D1~) + c2 W_2(D2, D2~)
  double c1 = 0.0;
  double c2 = 0.0;
  double eta = 0.0;
  std::array<double, 2> w2{};  // W_2(D1, D1~), W_2(D2, D2~)
  bool within_eta = false;
  std::array<LandscapeBoundCheck, 2> landscape_bound{};
};

/// Evaluates the cosine-similarity stability inequality for perturbations
/// D1~ of D1 and D2~ of D2, along with the landscape bound it rests on.
///
/// With a_i = |phi(D_i)|, A_i = sqrt(2 (W_inf(D_i, empty) + 1/3)),
/// delta = |phi(D1) - phi(D2)| and w_i = W_2(D_i, D_i~), the radius is
///   eta = min{1, a_i / sqrt(8 (W_inf(D_i, empty) + 1/3))},
/// which keeps | |phi(D_i~)| - a_i | <= A_i w_i <= a_i / 2. The constants
/// c1, c2 follow from bounding the three terms of
///   2 s = a1/a2 + a2/a1 - delta^2 / (a1 a2);
/// see similarity.cpp for the term-by-term assembly.
/// Throws std::invalid_argument if any landscape is zero.
StabilityReport check_stability_bound(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                      const PersistenceDiagram& d1_perturbed,
                                      const PersistenceDiagram& d2_perturbed);

}  // namespace pdsim
