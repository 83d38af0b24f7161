#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defmatch/coverage.hpp"
#include "defmatch/presets.hpp"

using namespace defmatch;

namespace {

PartialIso table_map(const UniversePtr& u, u64 n, bool twist) {
  std::vector<i64> fwd(2 * n, -1);
  for (u64 x = 0; x < n; ++x) fwd[x] = i64(n + (twist ? (x + 1) % n : x));
  return make_iso(u, TableRule{fwd}, DefSet::range(u, 0, n));
}

NiceGraph cycle_graph(u64 n) {
  auto u = Universe::finite(2 * n);
  return make_graph(u, {DefSet::range(u, 0, n)}, DefSet::range(u, n, 2 * n),
                    {{{table_map(u, n, false)}, {table_map(u, n, true)}}});
}

SymbolicMatching far_apart_m0(const NiceGraph& g) {
  SymbolicMatching m;
  m.add(0, 0, DefSet::of(g.u, {1, 2, 3, 4}));
  m.add(0, 1, DefSet::of(g.u, {5, 6, 7, 8, 9}));
  return m;
}

// Reference computation for the depth threshold, written independently of
// the library loop.
u32 smallest_odd_depth(i64 k, const Rat& m) {
  for (u32 K = 1;; K += 2) {
    Rat reach = Rat(k + 1, k) * (Rat(1) + Rat(i64(K) - 1, 2 * k));
    if (m <= reach) return K;
  }
}

}  // namespace

TEST_CASE("depth thresholds match the reference computation") {
  CHECK(k_for_target(2, Rat(3, 2)) == 1);
  CHECK(k_for_target(2, Rat(3)) == 5);
  CHECK(k_for_target(3, Rat(2)) == 5);

  for (i64 k = 2; k <= 5; ++k)
    for (i64 num = 1; num <= 8; ++num) {
      Rat m(num, 2);
      CHECK(k_for_target(u64(k), m) == smallest_odd_depth(k, m));
    }

  CHECK_THROWS_AS(k_for_target(1, Rat(2)), hypothesis_error);
  CHECK_THROWS_AS(k_for_target(3, Rat(0)), hypothesis_error);
}

TEST_CASE("left degree is the common family weight") {
  CHECK(left_degree(preset_graph("four-cycle")) == 2);
  CHECK(left_degree(preset_graph("hilbert-hotel")) == 2);

  // Pieces of unequal degree are refused, as is degree one.
  CHECK_THROWS_AS(left_degree(preset_graph("one-ended-path")), hypothesis_error);

  auto u = Universe::finite(8);
  std::vector<i64> fwd(8, -1);
  for (u64 x = 0; x < 4; ++x) fwd[x] = i64(x + 4);
  NiceGraph one = make_graph(u, {DefSet::range(u, 0, 4)}, DefSet::range(u, 4, 8),
                             {{{make_iso(u, TableRule{fwd}, DefSet::range(u, 0, 4))}}});
  CHECK_THROWS_AS(left_degree(one), hypothesis_error);
}

TEST_CASE("neighborhoods expand along edges and matchings") {
  NiceGraph g = preset_graph("four-cycle");
  CHECK(graph_neighbors(g, DefSet::of(g.u, {0})) == DefSet::of(g.u, {2, 3}));
  CHECK(graph_neighbors(g, DefSet::of(g.u, {2})) == DefSet::of(g.u, {0, 1}));

  SymbolicMatching m;
  m.add(0, 0, a_side(g));
  CHECK(matched_neighbors(g, m, DefSet::of(g.u, {0})) == DefSet::of(g.u, {2}));
  CHECK(matched_neighbors(g, m, DefSet::of(g.u, {2})) == DefSet::of(g.u, {0}));
}

TEST_CASE("the 20-cycle defect chain has the expected counts") {
  NiceGraph g = cycle_graph(10);
  SymbolicMatching m = far_apart_m0(g);
  eliminate(g, m, 1);  // shortest augmenting path has nine edges, untouched

  YChainResult res =
      y_chain_certificate(g, m, 2, 3, Variant::both_sides, NmReading::matched, 20);
  CHECK(res.exact);
  CHECK(res.ok);
  CHECK(res.chain.front() == DefSet::of(g.u, {0, 15}));
  CHECK(res.counts == std::vector<u64>{2, 4, 4, 8});
  for (const ChainCheck& c : res.checks) CHECK(c.holds);

  // Reading even steps through all edges instead of matched ones inflates
  // the middle of the chain.
  YChainResult loose =
      y_chain_certificate(g, m, 2, 3, Variant::both_sides, NmReading::all_edges, 20);
  CHECK(loose.counts == std::vector<u64>{2, 4, 6, 8});
  for (size_t i = 0; i < res.counts.size(); ++i) CHECK(loose.counts[i] >= res.counts[i]);
}

TEST_CASE("berge bound against the explicit maximum") {
  NiceGraph g = cycle_graph(10);
  SymbolicMatching m = far_apart_m0(g);

  BergeCheck b1 = berge_check(g, m, 1);
  CHECK(b1.matched == 9);
  CHECK(b1.maximum == 10);
  CHECK(b1.bound == Rat(2, 3));
  CHECK(b1.holds);

  BergeCheck b3 = berge_check(g, m, 3);
  CHECK(b3.bound == Rat(4, 5));
  CHECK(b3.holds);

  NiceGraph inf = preset_graph("one-ended-path");
  CHECK_THROWS_AS(berge_check(inf, SymbolicMatching{}, 1), hypothesis_error);
}

TEST_CASE("defect driver certifies the far-apart instance") {
  NiceGraph g = cycle_graph(10);
  SymbolicMatching m0 = far_apart_m0(g);
  CoverageReport rep = match_with_defect(g, Rat(2), Variant::both_sides,
                                         NmReading::matched, &m0);
  CHECK(rep.k == 2);
  CHECK(rep.K == 3);
  CHECK(rep.chain_bound == Rat(9, 4));
  CHECK(rep.stats.flips == 0);
  CHECK(rep.Y0 == DefSet::of(g.u, {0, 15}));
  CHECK(rep.counting_ok);  // 2 * 2 <= 20
  CHECK(rep.counting_exact);
  CHECK(rep.chain.ok);
}

TEST_CASE("defect driver on random regular instances") {
  Rng rng(555);
  for (int trial = 0; trial < 12; ++trial) {
    u64 n = 5 + rng.below(10);
    u64 k = 2 + rng.below(3);
    NiceGraph g = gen_finite_regular(n, k, rng);
    Rat m = trial % 2 == 0 ? Rat(3, 2) : Rat(2);
    CoverageReport rep = match_with_defect(g, m, Variant::both_sides);
    CHECK(validate_matching(g, rep.matching).ok);
    CHECK(rep.counting_ok);
    CHECK(rep.counting_exact);
    CHECK(rep.chain.ok);
    CHECK(rep.K == k_for_target(k, m));

    BergeCheck b = berge_check(g, rep.matching, (rep.K - 1) / 2);
    CHECK(b.holds);
    CHECK(b.maximum == n);  // regular bipartite graphs have perfect matchings
  }
}

TEST_CASE("variant hypotheses are enforced") {
  NiceGraph g = cycle_graph(6);

  // Right side degrees differ after deleting edges: build a graph whose B
  // has degrees one and two.
  auto u = Universe::finite(6);
  std::vector<i64> f0(6, -1), f1(6, -1);
  f0[0] = 3, f0[1] = 4;
  f1[0] = 4, f1[1] = 5;
  NiceGraph uneven =
      make_graph(u, {DefSet::of(u, {0, 1})}, DefSet::of(u, {3, 4, 5}),
                 {{{make_iso(u, TableRule{f0}, DefSet::of(u, {0, 1}))},
                   {make_iso(u, TableRule{f1}, DefSet::of(u, {0, 1}))}}});
  REQUIRE(validate_graph(uneven).ok);
  CHECK_THROWS_AS(match_with_defect(uneven, Rat(2), Variant::both_sides), hypothesis_error);
  CHECK(match_with_defect(uneven, Rat(2), Variant::a_side).counting_ok);

  // Parallel edges need the multigraph variant.
  std::vector<i64> dbl(12, -1);
  for (u64 x = 0; x < 6; ++x) dbl[x] = i64(x + 6);
  auto u2 = Universe::finite(12);
  NiceGraph multi = make_graph(
      u2, {DefSet::range(u2, 0, 6)}, DefSet::range(u2, 6, 12),
      {{{make_iso(u2, TableRule{dbl}, DefSet::range(u2, 0, 6)), 2}}});
  CHECK_THROWS_AS(match_with_defect(multi, Rat(2), Variant::a_side), hypothesis_error);
  CoverageReport rep = match_with_defect(multi, Rat(2), Variant::multigraph);
  CHECK(rep.k == 2);
  CHECK(rep.Y0.is_empty());
  CHECK(rep.counting_ok);
}
