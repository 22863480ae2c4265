#include "aligneval/matching.h"

#include <limits>
#include <queue>

namespace aligneval {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(int left, int right, const std::vector<std::vector<int>>& adj)
      : adj_(adj), match_left_(left, -1), match_right_(right, -1), dist_(left) {}

  std::vector<int> run() {
    while (bfs()) {
      for (int u = 0; u < static_cast<int>(match_left_.size()); ++u)
        if (match_left_[u] == -1) dfs(u);
    }
    return match_left_;
  }

 private:
  // Layers free left vertices; true if some augmenting path exists.
  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < static_cast<int>(match_left_.size()); ++u) {
      if (match_left_[u] == -1) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        int w = match_right_[v];
        if (w == -1) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      int w = match_right_[v];
      if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace

std::vector<int> maximum_bipartite_matching(int left, int right,
                                            const std::vector<std::vector<int>>& adjacency) {
  return HopcroftKarp(left, right, adjacency).run();
}

}  // namespace aligneval
