#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdsim/error.hpp"
#include "pdsim/persistence.hpp"
#include "pdsim/rips.hpp"
#include "pdsim/sampling.hpp"

using namespace pdsim;

namespace {

std::vector<Point2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

// Random complex on `n` vertices with at most `max_size` simplices, closed
// under faces, with monotone values drawn from a coarse grid so that ties
// are common. Returned in (value, dim, lex) order.
std::vector<FilteredSimplex> random_complex(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  std::vector<FilteredSimplex> out;
  std::uniform_int_distribution<int> bump(0, 2);
  auto value_of = [&](const std::vector<Vertex>& vs) -> std::optional<double> {
    for (const auto& s : out) {
      if (s.vertices == vs) return s.value;
    }
    return std::nullopt;
  };
  for (Vertex v = 0; v < n; ++v) out.push_back({{v}, 0.5 * bump(rng)});
  std::vector<std::vector<Vertex>> candidates;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      candidates.push_back({a, b});
      for (Vertex c = b + 1; c < n; ++c) {
        candidates.push_back({a, b, c});
        for (Vertex d = c + 1; d < n; ++d) candidates.push_back({a, b, c, d});
      }
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  for (const auto& vs : candidates) {
    if (out.size() >= max_size) break;
    if (bump(rng) == 0) continue;
    double v = 0.0;
    bool closed = true;
    for (std::size_t drop = 0; drop < vs.size() && closed; ++drop) {
      std::vector<Vertex> face = vs;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      const auto fv = value_of(face);
      if (!fv) closed = false;
      else v = std::max(v, *fv);
    }
    if (closed) out.push_back({vs, v + 0.5 * bump(rng)});
  }
  std::sort(out.begin(), out.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.vertices < b.vertices;
  });
  return out;
}

// Betti numbers of the first `prefix` simplices by Z/2 ranks of the
// boundary matrices.
std::vector<std::size_t> betti_by_rank(const std::vector<FilteredSimplex>& s, std::size_t prefix,
                                       std::size_t top) {
  std::vector<std::vector<std::size_t>> by_dim(top + 2);
  for (std::size_t i = 0; i < prefix; ++i) by_dim[s[i].dim()].push_back(i);
  auto rank_boundary = [&](std::size_t k) -> std::size_t {  // rank of d_k: C_k -> C_{k-1}
    if (k == 0 || k > top || by_dim[k].empty() || by_dim[k - 1].empty()) return 0;
    std::vector<std::vector<unsigned char>> rows;
    for (std::size_t col : by_dim[k]) {
      std::vector<unsigned char> row(by_dim[k - 1].size(), 0);
      for (std::size_t r = 0; r < by_dim[k - 1].size(); ++r) {
        const auto& face = s[by_dim[k - 1][r]].vertices;
        const auto& cell = s[col].vertices;
        row[r] = std::includes(cell.begin(), cell.end(), face.begin(), face.end()) ? 1 : 0;
      }
      rows.push_back(std::move(row));
    }
    return oracle::rank_z2(rows);
  };
  std::vector<std::size_t> betti(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    betti[k] = by_dim[k].size() - rank_boundary(k) - rank_boundary(k + 1);
  }
  return betti;
}

}  // namespace

TEST_SUITE("persistence") {
  TEST_CASE("two points at distance 1") {
    const auto c = build_rips(distance_matrix(std::vector<Point2>{{0, 0}, {1, 0}}), 1);
    const auto pairs = reduce(c);
    std::vector<std::pair<double, double>> h0;
    for (const auto& p : pairs) {
      CHECK(p.dim == 0);
      h0.emplace_back(p.birth, p.death);
    }
    std::sort(h0.begin(), h0.end());
    REQUIRE(h0.size() == 2);
    CHECK(h0[0] == std::pair{0.0, 1.0});
    CHECK(h0[1] == std::pair{0.0, kInfinity});
  }

  TEST_CASE("unit square has one H1 class (1, sqrt 2)") {
    const auto dgms = rips_persistence(distance_matrix(unit_square()), 1);
    REQUIRE(dgms.count(1) == 1);
    const auto& h1 = dgms.at(1);
    REQUIRE(h1.finite_pairs.size() == 1);
    CHECK(h1.finite_pairs[0].birth == 1.0);
    CHECK(h1.finite_pairs[0].death == std::sqrt(2.0));
    CHECK(h1.essential_births.empty());
    CHECK(dgms.at(0).essential_births == std::vector<double>{0.0});
    CHECK(dgms.at(0).finite_pairs.size() == 3);
  }

  TEST_CASE("exactly one essential H0 class on connected complexes") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
      const auto cloud = sample_disc(40, seed);
      const auto dgms = rips_persistence(distance_matrix(cloud), 1);
      CHECK(dgms.at(0).essential_births.size() == 1);
      CHECK(dgms.at(0).finite_pairs.size() == 39);
      CHECK(dgms.at(1).essential_births.empty());
    }
  }

  TEST_CASE("pair ranks match Z/2 Betti numbers on every prefix") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> nv(2, 4);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = nv(rng);
      const auto simplices = random_complex(rng, n, 8);
      const auto complex = FilteredComplex::from_simplices(n, simplices);
      complex.validate();
      const std::size_t top = complex.max_dim();
      const auto pairs = reduce(complex);
      for (std::size_t prefix = 0; prefix <= simplices.size(); ++prefix) {
        const auto expected = betti_by_rank(simplices, prefix, top);
        std::vector<std::size_t> from_pairs(top + 1, 0);
        for (const auto& p : pairs) {
          if (p.birth_simplex < prefix && (p.essential() || p.death_simplex >= prefix)) {
            ++from_pairs[p.dim];
          }
        }
        CHECK(from_pairs == expected);
      }
      // Every position is used by at most one pair.
      std::vector<int> used(simplices.size(), 0);
      for (const auto& p : pairs) {
        ++used[p.birth_simplex];
        if (!p.essential()) ++used[p.death_simplex];
      }
      CHECK(std::all_of(used.begin(), used.end(), [](int u) { return u <= 1; }));
    }
  }

  TEST_CASE("clearing gives the same pairs") {
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const auto c = build_rips(distance_matrix(sample_annulus(60, seed)), 2, 0.8);
      auto plain = reduce(c);
      auto twisted = reduce(c, {.clearing = true});
      auto key = [](const PersistencePair& p) { return std::tuple(p.dim, p.birth_simplex, p.death_simplex); };
      auto by_key = [&](const auto& a, const auto& b) { return key(a) < key(b); };
      std::sort(plain.begin(), plain.end(), by_key);
      std::sort(twisted.begin(), twisted.end(), by_key);
      REQUIRE(plain.size() == twisted.size());
      for (std::size_t i = 0; i < plain.size(); ++i) CHECK(key(plain[i]) == key(twisted[i]));
    }
  }

  TEST_CASE("reduction rejects a coface before its face") {
    const std::vector<FilteredSimplex> bad{{{0}, 0.0}, {{0, 1}, 1.0}, {{1}, 0.0}};
    const auto c = FilteredComplex::from_simplices(2, bad);
    CHECK_THROWS_AS(reduce(c), InvariantViolation);
    CHECK_THROWS_AS(boundary(c, 1), InvariantViolation);
  }

  TEST_CASE("boundary columns") {
    const auto c = build_rips(distance_matrix(unit_square()), 2);
    for (std::size_t pos = 0; pos < c.size(); ++pos) {
      const auto col = boundary(c, pos);
      CHECK(col.simplex_index == pos);
      CHECK(col.chain.size() == (c.dim(pos) == 0 ? 0 : c.dim(pos) + 1));
      CHECK(std::is_sorted(col.chain.begin(), col.chain.end()));
    }
  }

  TEST_CASE("lifespan") {
    CHECK(lifespan({0, 0.0, 1.0}) == 1.0);
    CHECK(lifespan({0, 0.3, 0.3}) == 0.0);
    CHECK(lifespan({1, 0.5, kInfinity}) == kInfinity);
  }

  TEST_CASE("diagrams buckets by dimension and drops zero-lifespan pairs") {
    const std::vector<PersistencePair> pairs{
        {0, 0.0, kInfinity}, {0, 0.0, 1.0}, {0, 0.5, 0.5}, {1, 1.0, 1.5}, {2, 1.0, 2.0}};
    const auto d = diagrams(pairs, 2);
    CHECK(d.size() == 2);
    CHECK(d.at(0).finite_pairs == std::vector<BirthDeath>{{0.0, 1.0}});
    CHECK(d.at(0).essential_births == std::vector<double>{0.0});
    CHECK(d.at(1).finite_pairs == std::vector<BirthDeath>{{1.0, 1.5}});
    CHECK(d.at(1).dim == 1);

    const auto empty = diagrams({}, 2);
    CHECK(empty.size() == 2);
    CHECK(empty.at(0).empty());
    CHECK(empty.at(1).empty());
  }

  TEST_CASE("300-point circle has one dominant H1 class") {
    const auto dgms = rips_persistence(distance_matrix(sample_circle(300, 17)), 1, 1.9);
    std::vector<double> life;
    for (const auto& x : dgms.at(1).finite_pairs) life.push_back(x.death - x.birth);
    std::sort(life.rbegin(), life.rend());
    REQUIRE_FALSE(life.empty());
    const double second = life.size() > 1 ? life[1] : 0.0;
    CHECK(life[0] > 5.0 * second);
    CHECK(life[0] > 1.0);
  }

  TEST_CASE("finite diagram points lie above the diagonal") {
    const auto dgms = rips_persistence(distance_matrix(sample_annulus(80, 3)), 1);
    for (const auto& [dim, d] : dgms) {
      for (const auto& x : d.finite_pairs) CHECK(x.death > x.birth);
    }
  }
}
