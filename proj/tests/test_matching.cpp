#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defmatch/matching.hpp"
#include "defmatch/presets.hpp"

#include <stdexcept>

using namespace defmatch;

namespace {

PartialIso table_map(const UniversePtr& u, u64 n, bool twist) {
  // x -> n + x, or the twisted x -> n + (x+1 mod n); both total on [0, n).
  std::vector<i64> fwd(2 * n, -1);
  for (u64 x = 0; x < n; ++x) fwd[x] = i64(n + (twist ? (x + 1) % n : x));
  return make_iso(u, TableRule{fwd}, DefSet::range(u, 0, n));
}

// Cycle of length 2n: left element i is adjacent to n+i and n+(i+1 mod n).
NiceGraph cycle_graph(u64 n) {
  auto u = Universe::finite(2 * n);
  return make_graph(u, {DefSet::range(u, 0, n)}, DefSet::range(u, n, 2 * n),
                    {{{table_map(u, n, false)}, {table_map(u, n, true)}}});
}

// Matching on the 20-cycle leaving 0 and 15 free, nine edges apart.
SymbolicMatching far_apart_m0(const NiceGraph& g) {
  SymbolicMatching m;
  m.add(0, 0, DefSet::of(g.u, {1, 2, 3, 4}));
  m.add(0, 1, DefSet::of(g.u, {5, 6, 7, 8, 9}));
  return m;
}

}  // namespace

TEST_CASE("matching containers merge and validate") {
  NiceGraph g = preset_graph("four-cycle");
  SymbolicMatching m;
  CHECK(m.empty());
  m.add(0, 0, DefSet::of(g.u, {0}));
  m.add(0, 0, DefSet::of(g.u, {1}));
  CHECK(m.parts().size() == 1);
  CHECK(m.domain_of(0, 0, g.u) == DefSet::of(g.u, {0, 1}));
  CHECK(validate_graph(g).ok);
  CHECK(validate_matching(g, m).ok);

  m.remove(0, 0, DefSet::of(g.u, {0}));
  CHECK(m.domain_of(0, 0, g.u) == DefSet::of(g.u, {1}));

  // A vertex matched along two entries at once is rejected.
  SymbolicMatching bad;
  bad.add(0, 0, DefSet::of(g.u, {0}));
  bad.add(0, 1, DefSet::of(g.u, {0}));
  CHECK_FALSE(validate_matching(g, bad).ok);

  // Domain escaping its piece is rejected.
  SymbolicMatching off;
  off.add(0, 0, DefSet::of(g.u, {2}));
  CHECK_FALSE(validate_matching(g, off).ok);
}

TEST_CASE("covered sets track both endpoints") {
  NiceGraph g = preset_graph("four-cycle");
  SymbolicMatching m;
  CHECK(covered_a(g, m).is_empty());

  m.add(0, 0, a_side(g));
  CHECK(covered_a(g, m) == DefSet::of(g.u, {0, 1}));
  CHECK(covered_b(g, m) == DefSet::of(g.u, {2, 3}));

  NiceGraph path = preset_graph("one-ended-path");
  SymbolicMatching pm;
  pm.add(0, 0, DefSet::of(path.u, {0}));
  pm.add(1, 0, DefSet::progression(path.u, 2, 2));
  CHECK((covered_a(path, pm) | covered_b(path, pm)) == DefSet::full(path.u));
}

TEST_CASE("start sets of generating sequences are exact") {
  NiceGraph g = preset_graph("four-cycle");

  // No matching: every free vertex starts a length-one path.
  SymbolicMatching empty_m;
  CHECK(aug_start_set(g, empty_m, {0, {{0, 0}}}) == DefSet::of(g.u, {0, 1}));

  // Perfect matching: nothing is free, no sequence starts anywhere.
  SymbolicMatching full_m;
  full_m.add(0, 0, a_side(g));
  CHECK(aug_start_set(g, full_m, {0, {{0, 1}, {0, 0}, {0, 1}}}).is_empty());

  // 0 matched along the first map; the length-three walk from 1 goes
  // through it and ends at the free 3.
  SymbolicMatching one;
  one.add(0, 0, DefSet::of(g.u, {0}));
  GenSeq walk{0, {{0, 1}, {0, 0}, {0, 1}}};
  CHECK(aug_start_set(g, one, walk) == DefSet::of(g.u, {1}));
  CHECK(aug_start_set(g, one, walk, DefSet::empty(g.u)).is_empty());

  NiceGraph path = preset_graph("one-ended-path");
  SymbolicMatching pm;
  pm.add(1, 0, DefSet::progression(path.u, 2, 2));
  CHECK(aug_start_set(path, pm, {0, {{0, 0}}}) == DefSet::of(path.u, {0}));
}

TEST_CASE("flipping a family rewrites the matching wholesale") {
  NiceGraph g = preset_graph("four-cycle");

  SymbolicMatching m;
  flip_family(g, m, {0, {{0, 0}}}, DefSet::empty(g.u));
  CHECK(m.empty());

  flip_family(g, m, {0, {{0, 0}}}, a_side(g));
  CHECK(m.parts().size() == 1);
  CHECK(covered_b(g, m) == g.B);

  // Flip a walk through the matched edge 0 -> 3 and reach the perfect
  // matching along the first map.
  SymbolicMatching one;
  one.add(0, 1, DefSet::of(g.u, {0}));
  GenSeq walk{0, {{0, 0}, {0, 1}, {0, 0}}};
  flip_family(g, one, walk, DefSet::of(g.u, {1}));
  auto parts = one.parts();
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].piece == 0);
  CHECK(parts[0].entry == 0);
  CHECK(parts[0].domain == a_side(g));

  // Starting from a vertex outside the start set corrupts the matching and
  // must be caught.
  SymbolicMatching again;
  again.add(0, 1, DefSet::of(g.u, {0}));
  CHECK_THROWS_AS(flip_family(g, again, walk, DefSet::of(g.u, {0})), std::logic_error);
}

TEST_CASE("elimination finishes bijection graphs in one flip") {
  auto u = Universe::finite(8);
  std::vector<i64> fwd(8, -1);
  for (u64 x = 0; x < 4; ++x) fwd[x] = i64(x + 4);
  NiceGraph g = make_graph(u, {DefSet::range(u, 0, 4)}, DefSet::range(u, 4, 8),
                           {{{make_iso(u, TableRule{fwd}, DefSet::range(u, 0, 4))}}});
  SymbolicMatching m;
  EliminateStats st = eliminate(g, m, 2);
  CHECK(st.flips == 1);
  CHECK(covered_a(g, m) == a_side(g));
}

TEST_CASE("elimination reaches the four-cycle perfect matching at depth zero") {
  NiceGraph g = preset_graph("four-cycle");
  SymbolicMatching m;
  eliminate(g, m, 0);
  CHECK(validate_matching(g, m).ok);
  CHECK(covered_a(g, m) == a_side(g));

  WindowView wv = window_view(g, m, 4);
  CHECK(oracle::matching_valid(wv.x.graph, wv.m));
  CHECK(wv.m.size == 2);
  CHECK(wv.m.size == oracle::max_matching(wv.x.graph).size);
}

TEST_CASE("short augmenting paths are blind to far-apart free vertices") {
  NiceGraph g = cycle_graph(10);
  REQUIRE(validate_graph(g).ok);
  SymbolicMatching m = far_apart_m0(g);
  REQUIRE(validate_matching(g, m).ok);

  // The only augmenting path has nine edges; depth one sees nothing.
  EliminateStats st = eliminate(g, m, 1);
  CHECK(st.flips == 0);
  WindowView wv = window_view(g, m, 20);
  CHECK_FALSE(oracle::augmenting_path(wv.x.graph, wv.m, 7, wv.free_a, wv.free_b).has_value());
  CHECK(oracle::augmenting_path(wv.x.graph, wv.m, 9, wv.free_a, wv.free_b).has_value());

  // Depth four covers length nine and completes the matching.
  EliminateStats st2 = eliminate(g, m, 4);
  CHECK(st2.flips >= 1);
  CHECK(covered_a(g, m) == a_side(g));
  CHECK(covered_b(g, m) == g.B);
}

TEST_CASE("elimination never uncovers a covered vertex") {
  Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    u64 n = 4 + rng.below(9);
    u64 k = 2 + rng.below(2);
    NiceGraph g = gen_finite_regular(n, k, rng);
    REQUIRE(validate_graph(g).ok);
    SymbolicMatching m0 = random_matching(g, rng, 40);
    REQUIRE(validate_matching(g, m0).ok);
    CHECK_FALSE(m0.empty());

    SymbolicMatching m = m0;
    u32 K = rng.below(3);
    eliminate(g, m, K);
    CHECK(validate_matching(g, m).ok);
    CHECK(is_subset(covered_a(g, m0), covered_a(g, m)));
    CHECK(is_subset(covered_b(g, m0), covered_b(g, m)));

    WindowView wv = window_view(g, m, 2 * n);
    CHECK(oracle::matching_valid(wv.x.graph, wv.m));
    CHECK_FALSE(oracle::augmenting_path(wv.x.graph, wv.m, int(2 * K + 1), wv.free_a, wv.free_b)
                    .has_value());
  }
}

TEST_CASE("infinite paths settle within the window") {
  NiceGraph g = preset_graph("one-ended-path");
  SymbolicMatching m;
  eliminate(g, m, 1);
  CHECK(validate_matching(g, m).ok);
  CHECK(covered_a(g, m).enumerate_window(100) ==
        DefSet::progression(g.u, 0, 2).enumerate_window(100));

  WindowView wv = window_view(g, m, 200);
  CHECK(oracle::matching_valid(wv.x.graph, wv.m));
  CHECK_FALSE(oracle::augmenting_path(wv.x.graph, wv.m, 3, wv.free_a, wv.free_b).has_value());
}

TEST_CASE("the node budget aborts oversized searches") {
  NiceGraph g = preset_graph("hilbert-hotel");
  SymbolicMatching m;
  CHECK_THROWS_AS(eliminate(g, m, 1, std::nullopt, 1), resource_limit_error);
}
