#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pdsim/error.hpp"
#include "pdsim/rips.hpp"

using namespace pdsim;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Point2> random_points(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

double diameter(const DistanceMatrix& d, const std::vector<Vertex>& vs) {
  double m = 0.0;
  for (Vertex a : vs) {
    for (Vertex b : vs) m = std::max(m, d(a, b));
  }
  return m;
}

}  // namespace

TEST_SUITE("rips") {
  TEST_CASE("two points") {
    const auto c = build_rips(distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}}), 1);
    REQUIRE(c.size() == 3);
    CHECK(c.vertices(0) == std::vector<Vertex>{0});
    CHECK(c.value(0) == 0.0);
    CHECK(c.vertices(1) == std::vector<Vertex>{1});
    CHECK(c.vertices(2) == std::vector<Vertex>{0, 1});
    CHECK(c.value(2) == 1.0);
    c.validate();
  }

  TEST_CASE("equilateral triangle fills at its side length") {
    const double h = std::sqrt(3.0) / 2.0;
    // Side lengths are 1 up to rounding; the triangle enters with its longest edge.
    const auto d = distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}, {0.5, h}});
    const auto c = build_rips(d, 2);
    const std::vector<Vertex> tri{0, 1, 2};
    const auto pos = c.find(tri);
    REQUIRE(pos);
    CHECK(c.value(*pos) == d.max_entry());
    CHECK(c.value(*pos) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("unit square with cap 1 has sides only") {
    const auto d = distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto c = build_rips(d, 2, 1.0);
    CHECK(c.count_of_dim(0) == 4);
    CHECK(c.count_of_dim(1) == 4);
    CHECK(c.count_of_dim(2) == 0);
    CHECK_FALSE(c.find(std::vector<Vertex>{0, 2}));
    CHECK_FALSE(c.find(std::vector<Vertex>{1, 3}));
    CHECK(c.max_value() == 1.0);
  }

  TEST_CASE("full complex has every subset up to max_dim") {
    const auto d = distance_matrix(random_points(9, 1));
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto c = build_rips(d, k);
      std::size_t expected = 0;
      for (std::size_t j = 0; j <= k; ++j) expected += binomial(9, j + 1);
      CHECK(c.size() == expected);
    }
  }

  TEST_CASE("values, ordering and face closure on random clouds") {
    for (unsigned seed = 0; seed < 10; ++seed) {
      const auto d = distance_matrix(random_points(14, seed));
      const auto c = build_rips(d, 3, 1.2);
      c.validate();
      for (std::size_t pos = 0; pos < c.size(); ++pos) {
        const auto vs = c.vertices(pos);
        CHECK(c.value(pos) == diameter(d, vs));
        CHECK(c.value(pos) <= 1.2);
        for (std::size_t f : c.facet_positions(pos)) {
          CHECK(f < pos);
          CHECK(c.value(f) <= c.value(pos));
        }
        if (pos > 0) {
          const auto a = c.simplex(pos - 1), b = c.simplex(pos);
          const bool ordered = a.value < b.value ||
                               (a.value == b.value && (a.dim() < b.dim() ||
                                                       (a.dim() == b.dim() && a.vertices < b.vertices)));
          CHECK(ordered);
        }
      }
    }
  }

  TEST_CASE("a capped complex holds exactly the cliques under the cap") {
    const auto d = distance_matrix(random_points(10, 4));
    const auto c = build_rips(d, 2, 0.9);
    std::size_t expected = 10;
    for (Vertex a = 0; a < 10; ++a) {
      for (Vertex b = a + 1; b < 10; ++b) {
        if (d(a, b) <= 0.9) ++expected;
        for (Vertex e = b + 1; e < 10; ++e) {
          if (diameter(d, {a, b, e}) <= 0.9) ++expected;
        }
      }
    }
    CHECK(c.size() == expected);
  }

  TEST_CASE("max_dim is clamped to n - 1") {
    const auto c = build_rips(distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}}), 7);
    CHECK(c.max_dim() == 2);
    CHECK(c.size() == 7);
  }

  TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(build_rips(DistanceMatrix{}, 1), std::invalid_argument);
    const auto d = distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}});
    CHECK_THROWS_AS(build_rips(d, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rips(d, 1, -1.0), std::invalid_argument);
  }

  TEST_CASE("validate rejects a coface listed before its face") {
    const std::vector<FilteredSimplex> bad{{{0}, 0.0}, {{0, 1}, 1.0}, {{1}, 0.0}};
    const auto c = FilteredComplex::from_simplices(2, bad);
    CHECK_THROWS_AS(c.validate(), InvariantViolation);
  }

  TEST_CASE("validate rejects a missing face") {
    const std::vector<FilteredSimplex> bad{{{0}, 0.0}, {{1}, 0.0}, {{0, 1, 2}, 1.0}};
    const auto c = FilteredComplex::from_simplices(3, bad);
    CHECK_THROWS_AS(c.validate(), InvariantViolation);
  }

  TEST_CASE("validate rejects a face with a larger value") {
    const std::vector<FilteredSimplex> bad{{{0}, 0.0}, {{1}, 2.0}, {{0, 1}, 1.0}};
    const auto c = FilteredComplex::from_simplices(2, bad);
    CHECK_THROWS_AS(c.validate(), InvariantViolation);
  }
}
