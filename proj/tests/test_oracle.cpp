#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defmatch/common.hpp"
#include "defmatch/oracle.hpp"

#include <algorithm>

using namespace defmatch;
using namespace defmatch::oracle;

namespace {

ExplicitGraph graph_of(int na, int nb, const std::vector<std::pair<int, int>>& edges) {
  ExplicitGraph g;
  g.na = na;
  g.nb = nb;
  g.adj.resize(na);
  for (auto [a, b] : edges) g.adj[a].push_back({b, 0});
  g.a_val.resize(na);
  g.b_val.resize(nb);
  g.a_flag.assign(na, 0);
  g.b_flag.assign(nb, 0);
  return g;
}

// Exhaustive maximum matching by trying every assignment of left vertices.
int brute_max(const ExplicitGraph& g, int a, std::vector<char>& used) {
  if (a == g.na) return 0;
  int best = brute_max(g, a + 1, used);
  for (const Edge& e : g.adj[a]) {
    if (used[e.b]) continue;
    used[e.b] = 1;
    best = std::max(best, 1 + brute_max(g, a + 1, used));
    used[e.b] = 0;
  }
  return best;
}

int brute_max(const ExplicitGraph& g) {
  std::vector<char> used(g.nb, 0);
  return brute_max(g, 0, used);
}

bool is_edge(const ExplicitGraph& g, int a, int b) {
  for (const Edge& e : g.adj[a])
    if (e.b == b) return true;
  return false;
}

}  // namespace

TEST_CASE("maximum matching matches exhaustive search") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    int na = 1 + int(rng.below(7)), nb = 1 + int(rng.below(7));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b)
        if (rng.below(100) < 40) edges.push_back({a, b});
    ExplicitGraph g = graph_of(na, nb, edges);
    MatchingState m = max_matching(g);
    CHECK(matching_valid(g, m));
    CHECK(m.size == brute_max(g));
  }

  CHECK(max_matching(graph_of(0, 0, {})).size == 0);
}

TEST_CASE("augmenting path search respects length bounds") {
  // a1 reaches the free b1 only through the matched pair (a0, b0).
  ExplicitGraph g = graph_of(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  MatchingState m = empty_matching(g);
  m.match_a[0] = 0;
  m.match_b[0] = 0;
  m.size = 1;

  CHECK_FALSE(augmenting_path(g, m, 1).has_value());
  auto p = augmenting_path(g, m, 3);
  REQUIRE(p.has_value());
  CHECK(*p == std::vector<int>{1, 0, 0, 1});

  // A direct edge makes the shortest path length one.
  ExplicitGraph g2 = graph_of(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  auto p2 = augmenting_path(g2, m, 3);
  REQUIRE(p2.has_value());
  CHECK(p2->size() == 2);
}

TEST_CASE("flags and masks exclude free endpoints") {
  ExplicitGraph g = graph_of(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  MatchingState m = empty_matching(g);
  m.match_a[0] = 0;
  m.match_b[0] = 0;
  m.size = 1;

  g.b_flag[1] = 1;
  CHECK_FALSE(augmenting_path(g, m, 5).has_value());
  g.b_flag[1] = 0;

  // Masks take over the notion of freeness entirely.
  std::vector<char> fa{0, 1}, fb{0, 1};
  CHECK(augmenting_path(g, m, 5, fa, fb).has_value());
  fa[1] = 0;  // a1 no longer counts as free
  CHECK_FALSE(augmenting_path(g, m, 5, fa, fb).has_value());
  fa[1] = 1;
  fb[1] = 0;
  CHECK_FALSE(augmenting_path(g, m, 5, fa, fb).has_value());
}

TEST_CASE("returned paths alternate and flip to a larger matching") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int na = 2 + int(rng.below(6)), nb = 2 + int(rng.below(6));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b)
        if (rng.below(100) < 45) edges.push_back({a, b});
    ExplicitGraph g = graph_of(na, nb, edges);

    // Partial greedy matching, then ask for one augmenting step.
    MatchingState m = empty_matching(g);
    for (int a = 0; a < na; a += 2)
      for (const Edge& e : g.adj[a])
        if (m.match_a[a] < 0 && m.match_b[e.b] < 0) {
          m.match_a[a] = e.b;
          m.match_b[e.b] = a;
          ++m.size;
        }

    auto p = augmenting_path(g, m, 9);
    if (!p) continue;
    const auto& path = *p;
    REQUIRE(path.size() % 2 == 0);
    CHECK(path.size() <= 10);
    CHECK(m.match_a[path.front()] < 0);
    CHECK(m.match_b[path.back()] < 0);
    for (size_t i = 0; i + 1 < path.size(); i += 2) CHECK(is_edge(g, path[i], path[i + 1]));
    for (size_t i = 1; i + 1 < path.size(); i += 2)
      CHECK(m.match_b[path[i]] == path[i + 1]);

    int before = m.size;
    for (size_t i = 0; i < path.size(); i += 2) {
      m.match_a[path[i]] = path[i + 1];
      m.match_b[path[i + 1]] = path[i];
    }
    m.size = before + 1;
    CHECK(matching_valid(g, m));
  }
}

TEST_CASE("matching_valid rejects inconsistent states") {
  ExplicitGraph g = graph_of(2, 2, {{0, 0}, {1, 1}});
  MatchingState m = empty_matching(g);
  CHECK(matching_valid(g, m));

  m.match_a[0] = 0;  // one-sided link
  CHECK_FALSE(matching_valid(g, m));
  m.match_b[0] = 0;
  m.size = 1;
  CHECK(matching_valid(g, m));

  m.match_a[1] = 0;  // b0 claimed twice
  CHECK_FALSE(matching_valid(g, m));
  m.match_a[1] = -1;

  m.match_a[0] = 1;  // not an edge
  m.match_b[1] = 0;
  m.match_b[0] = -1;
  CHECK_FALSE(matching_valid(g, m));
}

TEST_CASE("brute_cover finds disjoint chunk assignments") {
  // Item 0 must give up {0,1} so item 1 can take it.
  std::vector<std::vector<std::vector<u64>>> items = {{{0, 1}, {2}}, {{0, 1}}};
  auto pick = brute_cover(items);
  REQUIRE(pick.has_value());
  CHECK(*pick == std::vector<int>{1, 0});

  CHECK_FALSE(brute_cover({{{0}}, {{0}}}).has_value());
  CHECK_FALSE(brute_cover({{}}).has_value());
  CHECK(brute_cover({}).has_value());
}
