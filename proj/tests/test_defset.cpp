#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defmatch/defset.hpp"

#include <algorithm>
#include <set>

using namespace defmatch;

namespace {

// Element-wise model of an eventually periodic set, kept deliberately dumb.
struct Model {
  u64 T = 0, P = 1;
  std::set<u64> R, E;

  bool member(u64 x) const { return x < T ? E.count(x) > 0 : R.count(x % P) > 0; }
};

Model random_model(Rng& rng) {
  Model m;
  m.T = rng.below(20);
  m.P = 1 + rng.below(10);
  for (u64 r = 0; r < m.P; ++r)
    if (rng.coin()) m.R.insert(r);
  for (u64 e = 0; e < m.T; ++e)
    if (rng.coin()) m.E.insert(e);
  return m;
}

DefSet lift(const UniversePtr& u, const Model& m) {
  return DefSet::eventually_periodic(u, m.T, m.P, std::vector<u64>(m.R.begin(), m.R.end()),
                                     std::vector<u64>(m.E.begin(), m.E.end()));
}

std::vector<u64> window_of(const std::set<u64>& s, u64 n) {
  std::vector<u64> out;
  for (u64 x : s)
    if (x < n) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("construction normalizes redundant descriptions") {
  auto u = Universe::naturals();
  DefSet evens = DefSet::progression(u, 0, 2);

  // Non-minimal period.
  CHECK(DefSet::eventually_periodic(u, 0, 4, {0, 2}, {}) == evens);
  // Exceptional part agreeing with the periodic tail folds away.
  CHECK(DefSet::eventually_periodic(u, 4, 2, {0}, {0, 2}) == evens);
  // Duplicates in element lists collapse.
  CHECK(DefSet::of(u, {3, 1, 3, 1}) == DefSet::of(u, {1, 3}));

  // from_data on the canonical form reproduces the set.
  PeriodicForm pf = evens.periodic_form();
  CHECK(DefSet::from_data(u, SetData{pf}) == evens);
}

TEST_CASE("membership matches the threshold/period description") {
  auto u = Universe::naturals();
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    Model m = random_model(rng);
    DefSet s = lift(u, m);
    for (u64 x = 0; x < 200; ++x) CHECK(s.contains(x) == m.member(x));
  }
}

TEST_CASE("boolean operations agree with an element-wise model") {
  auto u = Universe::naturals();
  Rng rng(202);
  const u64 W = 300;
  for (int trial = 0; trial < 60; ++trial) {
    Model ma = random_model(rng), mb = random_model(rng);
    DefSet a = lift(u, ma), b = lift(u, mb);
    std::set<u64> sa, sb;
    for (u64 x = 0; x < W + 120; ++x) {
      if (ma.member(x)) sa.insert(x);
      if (mb.member(x)) sb.insert(x);
    }

    std::set<u64> su, si, sd, sx;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), inserter(su, su.end()));
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), inserter(si, si.end()));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), inserter(sd, sd.end()));
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  inserter(sx, sx.end()));

    CHECK((a | b).enumerate_window(W) == window_of(su, W));
    CHECK((a & b).enumerate_window(W) == window_of(si, W));
    CHECK((a - b).enumerate_window(W) == window_of(sd, W));
    CHECK((a ^ b).enumerate_window(W) == window_of(sx, W));
    for (u64 x = 0; x < W; ++x) CHECK(a.complement().contains(x) == !sa.count(x));

    CHECK(is_subset(a & b, a));
    CHECK(disjoint(a - b, b));
    CHECK((a | b) == (b | a));
  }
}

TEST_CASE("fixed identities") {
  auto u = Universe::naturals();
  DefSet evens = DefSet::progression(u, 0, 2);
  DefSet odds = DefSet::progression(u, 1, 2);
  DefSet by4 = DefSet::progression(u, 0, 4);

  CHECK((evens | odds) == DefSet::full(u));
  CHECK(set_intersect(DefSet::of(u, {1, 2}), DefSet::of(u, {2, 3})) == DefSet::of(u, {2}));
  CHECK(set_difference(by4, evens).is_empty());
  CHECK(is_subset(by4, evens));
  CHECK_FALSE(is_subset(evens, by4));

  CHECK(DefSet::of(u, {1, 2, 3}).cardinality() == u64(3));
  CHECK_FALSE(evens.cardinality().has_value());
  CHECK(evens.density() == Rat(1, 2));
  CHECK((DefSet::progression(u, 1, 3) | DefSet::of(u, {0})).density() == Rat(1, 3));

  CHECK(evens.enumerate_window(5) == std::vector<u64>{0, 2, 4});
  CHECK(DefSet::empty(u).enumerate_window(10).empty());
  CHECK(DefSet::of(u, {7}).enumerate_window(5).empty());

  CHECK(DefSet::range(u, 3, 6) == DefSet::of(u, {3, 4, 5}));
}

TEST_CASE("finite and naturals backends agree on shared windows") {
  auto nat = Universe::naturals();
  auto fin = Universe::finite(64);
  Rng rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<u64> xs, ys;
    for (u64 x = 0; x < 64; ++x) {
      if (rng.coin()) xs.push_back(x);
      if (rng.coin()) ys.push_back(x);
    }
    DefSet an = DefSet::of(nat, xs), af = DefSet::of(fin, xs);
    DefSet bn = DefSet::of(nat, ys), bf = DefSet::of(fin, ys);
    CHECK((an | bn).enumerate_window(64) == (af | bf).enumerate_window(64));
    CHECK((an & bn).enumerate_window(64) == (af & bf).enumerate_window(64));
    CHECK((an ^ bn).enumerate_window(64) == (af ^ bf).enumerate_window(64));
    CHECK((an - bn).enumerate_window(64) == (af - bf).enumerate_window(64));
    CHECK(an.complement().enumerate_window(64) == af.complement().enumerate_window(64));
    CHECK(an.cardinality() == af.cardinality());
  }

  // Finite density is relative to the ground size.
  CHECK(DefSet::of(fin, {0, 1}).density() == Rat(1, 32));
}

TEST_CASE("universes do not mix") {
  auto nat = Universe::naturals();
  auto fin = Universe::finite(8);
  CHECK_THROWS_AS(set_union(DefSet::full(nat), DefSet::full(fin)), universe_mismatch_error);
  CHECK_THROWS_AS((void)is_subset(DefSet::empty(fin), DefSet::empty(nat)),
                  universe_mismatch_error);
}

TEST_CASE("period growth beyond the cap is refused") {
  auto u = Universe::naturals();
  DefSet five = DefSet::progression(u, 0, 5);
  DefSet seven = DefSet::progression(u, 0, 7);
  CHECK((five & seven) == DefSet::progression(u, 0, 35));

  u64 old = period_cap();
  set_period_cap(16);
  CHECK_THROWS_AS(five & seven, resource_limit_error);
  set_period_cap(old);
  CHECK((five & seven) == DefSet::progression(u, 0, 35));
}
