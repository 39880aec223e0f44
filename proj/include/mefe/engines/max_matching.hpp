#ifndef MEFE_ENGINES_MAX_MATCHING_HPP
#define MEFE_ENGINES_MAX_MATCHING_HPP

#include <algorithm>
#include <climits>
#include <queue>
#include <vector>

#include "mefe/engines/preference_system.hpp"

namespace mefe {

struct MaxMatchingResult {
  std::vector<int> left_match;   // right partner or kUnmatched
  std::vector<int> right_match;  // left partner or kUnmatched
  int size = 0;

  [[nodiscard]] bool saturates_left() const { return size == static_cast<int>(left_match.size()); }
  [[nodiscard]] bool saturates_right() const { return size == static_cast<int>(right_match.size()); }
};

/// Hopcroft-Karp on adjacency lists left -> right. Neighbors are tried in list
/// order, so the result is deterministic.
inline MaxMatchingResult max_bipartite_matching(const std::vector<std::vector<int>>& adj, int num_right) {
  const int num_left = static_cast<int>(adj.size());
  MaxMatchingResult res{std::vector<int>(static_cast<std::size_t>(num_left), kUnmatched),
                        std::vector<int>(static_cast<std::size_t>(num_right), kUnmatched), 0};
  std::vector<int> dist(static_cast<std::size_t>(num_left));

  auto bfs = [&] {
    std::queue<int> q;
    bool reachable_free = false;
    for (int l = 0; l < num_left; ++l) {
      if (res.left_match[l] == kUnmatched) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = INT_MAX;
      }
    }
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        const int next = res.right_match[r];
        if (next == kUnmatched) {
          reachable_free = true;
        } else if (dist[next] == INT_MAX) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return reachable_free;
  };

  std::vector<std::size_t> it(static_cast<std::size_t>(num_left));
  auto dfs = [&](auto&& self, int l) -> bool {
    for (; it[l] < adj[l].size(); ++it[l]) {
      const int r = adj[l][it[l]];
      const int next = res.right_match[r];
      if (next == kUnmatched || (dist[next] == dist[l] + 1 && self(self, next))) {
        res.left_match[l] = r;
        res.right_match[r] = l;
        return true;
      }
    }
    dist[l] = INT_MAX;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int l = 0; l < num_left; ++l) {
      if (res.left_match[l] == kUnmatched && dfs(dfs, l)) ++res.size;
    }
  }
  return res;
}

}  // namespace mefe

#endif  // MEFE_ENGINES_MAX_MATCHING_HPP
