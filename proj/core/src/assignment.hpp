#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pdsim::detail {

// Maximum-cardinality bipartite matching by Hopcroft-Karp. Left and right
// vertices are 0-based.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t n_left, std::size_t n_right);

  void add_edge(std::size_t left, std::size_t right);
  std::size_t max_matching();

  // Right partner of each left vertex after max_matching(), or npos.
  const std::vector<std::size_t>& left_partner() const { return pair_left_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  bool bfs();
  bool dfs(std::size_t u);

  std::size_t n_left_;
  std::size_t n_right_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> pair_left_;
  std::vector<std::size_t> pair_right_;
  std::vector<std::size_t> level_;
};

// Minimum-cost perfect assignment on a dense n x n row-major cost matrix
// (shortest augmenting paths with potentials, O(n^3)). Returns the column
// assigned to each row.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace pdsim::detail
