#include "defmatch/coverage.hpp"

namespace defmatch {

u32 k_for_target(u64 k, const Rat& m) {
  if (k < 2) throw hypothesis_error("k_for_target: left degree must be at least 2");
  if (m <= Rat(0)) throw hypothesis_error("k_for_target: copy count must be positive");
  for (u32 K = 1;; K += 2) {
    Rat bound = Rat(i64(k) + 1, i64(k)) * (Rat(1) + Rat(i64(K) - 1, 2 * i64(k)));
    if (m <= bound) return K;
  }
}

u64 left_degree(const NiceGraph& g) {
  if (g.families.empty()) throw hypothesis_error("left_degree: graph has no pieces");
  u64 k = 0;
  for (size_t i = 0; i < g.families.size(); ++i) {
    u64 sum = 0;
    for (const FamilyEntry& e : g.families[i]) sum += e.multiplicity;
    if (i == 0)
      k = sum;
    else if (sum != k)
      throw hypothesis_error("left_degree: pieces have different degrees");
  }
  if (k < 2) throw hypothesis_error("left_degree: degree must be at least 2");
  return k;
}

DefSet graph_neighbors(const NiceGraph& g, const DefSet& x) {
  DefSet out = DefSet::empty(g.u);
  for (size_t i = 0; i < g.pieces.size(); ++i) {
    DefSet xa = set_intersect(x, g.pieces[i]);
    if (!xa.is_empty())
      for (const FamilyEntry& e : g.families[i]) out = set_union(out, image(e.map, xa));
  }
  DefSet xb = set_intersect(x, g.B);
  if (!xb.is_empty())
    for (size_t i = 0; i < g.pieces.size(); ++i)
      for (const FamilyEntry& e : g.families[i])
        out = set_union(out, set_intersect(g.pieces[i], preimage(e.map, xb)));
  return out;
}

DefSet matched_neighbors(const NiceGraph& g, const SymbolicMatching& m, const DefSet& x) {
  DefSet out = DefSet::empty(g.u);
  for (const MatchPart& p : m.parts()) {
    PartialIso f = restrict(g.map_of(p.piece, p.entry), p.domain);
    out = set_union(out, image(f, x));
    out = set_union(out, preimage(f, x));
  }
  return out;
}

namespace {

u64 count_of(const DefSet& s, u64 window, bool exact) {
  if (exact) return *s.cardinality();
  return s.enumerate_window(window).size();
}

std::string ratio(const Rat& r) { return to_string(r); }

}  // namespace

YChainResult y_chain_certificate(const NiceGraph& g, const SymbolicMatching& m, u64 k, u32 K,
                                 Variant variant, NmReading reading, u64 window) {
  YChainResult res;
  res.exact = g.u->ground() == Ground::finite;
  DefSet y0 = set_difference(a_side(g), covered_a(g, m));
  if (variant == Variant::both_sides)
    y0 = set_union(y0, set_difference(g.B, covered_b(g, m)));
  res.chain.push_back(std::move(y0));
  for (u32 i = 1; i <= K; ++i) {
    const DefSet& prev = res.chain.back();
    if (i % 2 == 1 || reading == NmReading::all_edges)
      res.chain.push_back(graph_neighbors(g, prev));
    else
      res.chain.push_back(matched_neighbors(g, m, prev));
  }
  for (const DefSet& s : res.chain) res.counts.push_back(count_of(s, window, res.exact));

  auto record = [&](std::string name, bool holds, std::string detail) {
    res.checks.push_back({std::move(name), holds, res.exact, std::move(detail)});
    if (res.exact && !holds) res.ok = false;
  };
  const auto& c = res.counts;
  Rat growth = Rat(i64(k), i64(k) - 1) * i64(c[0]);
  record("(k-1)|Y1| >= k|Y0|", Rat(i64(c[1])) >= growth,
         std::to_string(c[1]) + " vs " + ratio(growth));
  for (u32 i = 1; i + 2 <= K; i += 2)
    record("|Y" + std::to_string(i) + "| = |Y" + std::to_string(i + 1) + "|",
           c[i] == c[i + 1], std::to_string(c[i]) + " vs " + std::to_string(c[i + 1]));
  for (u32 i = 1; i <= K; i += 2) {
    Rat rhs = (Rat(i64(k)) + Rat(i64(i) - 1, 2)) * i64(c[1]);
    record("k|Y" + std::to_string(i) + "| >= (k+(i-1)/2)|Y1|", Rat(i64(k) * i64(c[i])) >= rhs,
           std::to_string(k * c[i]) + " vs " + ratio(rhs));
  }
  Rat fin = (Rat(1) + Rat(i64(K) - 1, 2 * i64(k))) * Rat(i64(k) + 1, i64(k)) * i64(c[0]);
  record("|YK| >= (1+(K-1)/2k)(k+1)/k |Y0|", Rat(i64(c[K])) >= fin,
         std::to_string(c[K]) + " vs " + ratio(fin));
  return res;
}

BergeCheck berge_check(const NiceGraph& g, const SymbolicMatching& m, u32 K) {
  if (g.u->ground() != Ground::finite)
    throw hypothesis_error("berge_check: finite universes only");
  BergeCheck r;
  for (const MatchPart& p : m.parts()) r.matched += *p.domain.cardinality();
  ExplicitExpansion x = explicit_expand(g, g.u->size());
  r.maximum = u64(oracle::max_matching(x.graph).size);
  r.bound = Rat(i64(K) + 1, i64(K) + 2);
  r.holds = Rat(i64(r.matched)) >= r.bound * i64(r.maximum);
  return r;
}

CoverageReport match_with_defect(const NiceGraph& g, const Rat& m, Variant variant,
                                 NmReading reading, const SymbolicMatching* start, u64 window,
                                 u64 max_nodes) {
  ValidationReport vg = validate_graph(g);
  if (!vg.ok) throw hypothesis_error("match_with_defect: " + vg.problems.front());
  CoverageReport rep;
  rep.k = left_degree(g);
  rep.m = m;
  if (variant != Variant::multigraph)
    for (const auto& fam : g.families)
      for (const FamilyEntry& e : fam)
        if (e.multiplicity != 1)
          throw hypothesis_error("match_with_defect: multiplicities need the multigraph variant");
  if (variant == Variant::both_sides) {
    auto dp = degree_partition_b(g);
    if (dp.size() != 1 || dp.front().first != rep.k)
      throw hypothesis_error("match_with_defect: right side is not k-regular");
  } else if (!b_degree_at_most(g, rep.k)) {
    throw hypothesis_error("match_with_defect: right degree exceeds k");
  }
  rep.K = k_for_target(rep.k, m);
  rep.chain_bound = Rat(i64(rep.k) + 1, i64(rep.k)) *
                    (Rat(1) + Rat(i64(rep.K) - 1, 2 * i64(rep.k)));
  if (start) {
    ValidationReport vm = validate_matching(g, *start);
    if (!vm.ok) throw hypothesis_error("match_with_defect: seed: " + vm.problems.front());
    rep.matching = *start;
  }
  rep.stats = eliminate(g, rep.matching, (rep.K - 1) / 2, std::nullopt, max_nodes);
  rep.chain =
      y_chain_certificate(g, rep.matching, rep.k, rep.K, variant, reading, window);
  rep.Y0 = rep.chain.chain.front();
  rep.counting_exact = rep.chain.exact;
  u64 y0 = rep.chain.counts.front();
  u64 total;
  if (g.u->ground() == Ground::finite) {
    total = *a_side(g).cardinality();
    if (variant == Variant::both_sides) total += *g.B.cardinality();
  } else {
    total = a_side(g).enumerate_window(window).size();
    if (variant == Variant::both_sides) total += g.B.enumerate_window(window).size();
  }
  rep.counting_ok = m * i64(y0) <= Rat(i64(total));
  return rep;
}

}  // namespace defmatch
