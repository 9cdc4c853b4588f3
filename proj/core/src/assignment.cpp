#include "assignment.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pdsim::detail {

BipartiteMatcher::BipartiteMatcher(std::size_t n_left, std::size_t n_right)
    : n_left_(n_left),
      n_right_(n_right),
      adjacency_(n_left),
      pair_left_(n_left, npos),
      pair_right_(n_right, npos),
      level_(n_left, 0) {}

void BipartiteMatcher::add_edge(std::size_t left, std::size_t right) {
  adjacency_[left].push_back(right);
}

bool BipartiteMatcher::bfs() {
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::queue<std::size_t> queue;
  for (std::size_t u = 0; u < n_left_; ++u) {
    if (pair_left_[u] == npos) {
      level_[u] = 0;
      queue.push(u);
    } else {
      level_[u] = kUnreached;
    }
  }
  bool found_free = false;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adjacency_[u]) {
      const std::size_t w = pair_right_[v];
      if (w == npos) {
        found_free = true;
      } else if (level_[w] == kUnreached) {
        level_[w] = level_[u] + 1;
        queue.push(w);
      }
    }
  }
  return found_free;
}

bool BipartiteMatcher::dfs(std::size_t u) {
  for (std::size_t v : adjacency_[u]) {
    const std::size_t w = pair_right_[v];
    if (w == npos || (level_[w] == level_[u] + 1 && dfs(w))) {
      pair_left_[u] = v;
      pair_right_[v] = u;
      return true;
    }
  }
  level_[u] = std::numeric_limits<std::size_t>::max();
  return false;
}

std::size_t BipartiteMatcher::max_matching() {
  std::size_t size = 0;
  while (bfs()) {
    for (std::size_t u = 0; u < n_left_; ++u) {
      if (pair_left_[u] == npos && dfs(u)) ++size;
    }
  }
  return size;
}

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
  // 1-based arrays; row 0 / column 0 are the virtual source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), min_to(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::fill(min_to.begin(), min_to.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      const double* row = cost.data() + (i0 - 1) * n;
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = row[j - 1] - u[i0] - v[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          way[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[row_of[j] - 1] = j - 1;
  return assignment;
}

}  // namespace pdsim::detail
