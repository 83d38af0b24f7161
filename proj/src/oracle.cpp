#include "defmatch/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>

namespace defmatch::oracle {

namespace {
constexpr int INF = std::numeric_limits<int>::max();
}

MatchingState empty_matching(const ExplicitGraph& g) {
  MatchingState m;
  m.match_a.assign(g.na, -1);
  m.match_b.assign(g.nb, -1);
  return m;
}

MatchingState max_matching(const ExplicitGraph& g) {
  MatchingState m = empty_matching(g);
  std::vector<int> dist(g.na);
  std::deque<int> q;

  auto bfs = [&]() {
    q.clear();
    for (int a = 0; a < g.na; ++a) {
      if (m.match_a[a] == -1) {
        dist[a] = 0;
        q.push_back(a);
      } else {
        dist[a] = INF;
      }
    }
    bool reachable = false;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (const Edge& e : g.adj[a]) {
        int a2 = m.match_b[e.b];
        if (a2 == -1)
          reachable = true;
        else if (dist[a2] == INF) {
          dist[a2] = dist[a] + 1;
          q.push_back(a2);
        }
      }
    }
    return reachable;
  };

  std::function<bool(int)> dfs = [&](int a) {
    for (const Edge& e : g.adj[a]) {
      int a2 = m.match_b[e.b];
      if (a2 == -1 || (dist[a2] == dist[a] + 1 && dfs(a2))) {
        m.match_a[a] = e.b;
        m.match_b[e.b] = a;
        return true;
      }
    }
    dist[a] = INF;
    return false;
  };

  while (bfs()) {
    for (int a = 0; a < g.na; ++a)
      if (m.match_a[a] == -1 && dfs(a)) ++m.size;
  }
  return m;
}

std::optional<std::vector<int>> augmenting_path(const ExplicitGraph& g, const MatchingState& m,
                                                int max_len, const std::vector<char>& free_a,
                                                const std::vector<char>& free_b) {
  auto a_free = [&](int a) {
    if (!g.a_flag.empty() && g.a_flag[a]) return false;
    return free_a.empty() ? m.match_a[a] == -1 : free_a[a] != 0;
  };
  auto b_free = [&](int b) {
    if (!g.b_flag.empty() && g.b_flag[b]) return false;
    return free_b.empty() ? m.match_b[b] == -1 : free_b[b] != 0;
  };

  std::vector<int> dist(g.na, INF), pred_a(g.na, -1), pred_b(g.nb, -1);
  std::vector<char> seen_b(g.nb, 0);
  std::deque<int> q;
  for (int a = 0; a < g.na; ++a)
    if (a_free(a)) {
      dist[a] = 0;
      q.push_back(a);
    }
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    if (2 * dist[a] + 1 > max_len) break;
    for (const Edge& e : g.adj[a]) {
      if (e.b == m.match_a[a] || seen_b[e.b]) continue;
      seen_b[e.b] = 1;
      pred_b[e.b] = a;
      if (b_free(e.b)) {
        std::vector<int> path;
        int b = e.b;
        while (b != -1) {
          int pa = pred_b[b];
          path.push_back(b);
          path.push_back(pa);
          b = pred_a[pa];
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      int a2 = m.match_b[e.b];
      if (a2 != -1 && dist[a2] == INF) {
        dist[a2] = dist[a] + 1;
        pred_a[a2] = e.b;
        q.push_back(a2);
      }
    }
  }
  return std::nullopt;
}

bool matching_valid(const ExplicitGraph& g, const MatchingState& m) {
  if (int(m.match_a.size()) != g.na || int(m.match_b.size()) != g.nb) return false;
  for (int a = 0; a < g.na; ++a) {
    int b = m.match_a[a];
    if (b == -1) continue;
    if (b < 0 || b >= g.nb || m.match_b[b] != a) return false;
    bool edge = false;
    for (const Edge& e : g.adj[a]) edge |= (e.b == b);
    if (!edge) return false;
  }
  for (int b = 0; b < g.nb; ++b) {
    int a = m.match_b[b];
    if (a != -1 && (a < 0 || a >= g.na || m.match_a[a] != b)) return false;
  }
  return true;
}

namespace {

bool cover_rec(const std::vector<std::vector<std::vector<std::uint64_t>>>& items, size_t i,
               std::set<std::uint64_t>& used, std::vector<int>& chosen) {
  if (i == items.size()) return true;
  for (size_t c = 0; c < items[i].size(); ++c) {
    const auto& chunk = items[i][c];
    bool clash = false;
    for (std::uint64_t y : chunk)
      if (used.count(y)) {
        clash = true;
        break;
      }
    if (clash) continue;
    for (std::uint64_t y : chunk) used.insert(y);
    chosen[i] = int(c);
    if (cover_rec(items, i + 1, used, chosen)) return true;
    for (std::uint64_t y : chunk) used.erase(y);
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> brute_cover(
    const std::vector<std::vector<std::vector<std::uint64_t>>>& items) {
  std::set<std::uint64_t> used;
  std::vector<int> chosen(items.size(), -1);
  if (cover_rec(items, 0, used, chosen)) return chosen;
  return std::nullopt;
}

}  // namespace defmatch::oracle
