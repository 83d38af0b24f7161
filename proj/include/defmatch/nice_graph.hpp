#pragma once

// Symbolic bipartite graphs. The left side is a list of pairwise disjoint
// pieces; each piece carries a finite family of injections, every one total
// on its piece, with images inside the right side B and pairwise empty
// equalizers within the family. An entry may carry a multiplicity for
// parallel edges. All of A, B and the maps are DefSets / PartialIsos, so one
// object can describe an infinite graph.

#include "defmatch/iso.hpp"
#include "defmatch/oracle.hpp"

#include <string>
#include <vector>

namespace defmatch {

struct FamilyEntry {
  PartialIso map;
  u32 multiplicity = 1;
};

struct NiceGraph {
  UniversePtr u;
  std::vector<DefSet> pieces;
  DefSet B;
  std::vector<std::vector<FamilyEntry>> families;  // families[i] belongs to pieces[i]

  const PartialIso& map_of(u32 piece, u32 entry) const { return families[piece][entry].map; }
};

NiceGraph make_graph(const UniversePtr& u, std::vector<DefSet> pieces, DefSet B,
                     std::vector<std::vector<FamilyEntry>> families);
// Same, with every map given as a generator word to realize.
NiceGraph make_graph_words(const UniversePtr& u, std::vector<DefSet> pieces, DefSet B,
                           const std::vector<std::vector<IsoWord>>& words,
                           const std::vector<std::vector<u32>>& multiplicities = {});

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;

  void fail(std::string p) {
    ok = false;
    problems.push_back(std::move(p));
  }
};

// Checks disjointness of the pieces and of A from B, totality of each map on
// its piece, images inside B, and pairwise empty equalizers within each
// family.
ValidationReport validate_graph(const NiceGraph& g);

DefSet a_side(const NiceGraph& g);

// Right-side degree classes, weighted by multiplicity: each returned pair is
// (degree, set of B elements with that degree), covering B, degrees
// ascending.
std::vector<std::pair<u64, DefSet>> degree_partition_b(const NiceGraph& g);

// Every piece's multiplicities sum to k (left side k-regular).
bool is_k_regular_in_a(const NiceGraph& g, u64 k);
// No right vertex exceeds degree k.
bool b_degree_at_most(const NiceGraph& g, u64 k);

struct Refinement {
  NiceGraph graph;
  std::vector<u32> parent;  // new piece index -> original piece index
};

// Splits every piece along s (intersection first, then difference), dropping
// empty parts. Families are inherited.
Refinement refine_pieces(const NiceGraph& g, const DefSet& s);

// Explicit adjacency on the elements below window. a_flag/b_flag mark
// vertices with an incident edge leaving the window. Edge labels are entry
// indices within the left vertex's family.
struct ExplicitExpansion {
  oracle::ExplicitGraph graph;
  std::vector<u32> a_piece;        // piece index per left vertex
  std::vector<i64> a_id_of, b_id_of;  // element -> vertex id, -1 if absent
};

ExplicitExpansion explicit_expand(const NiceGraph& g, u64 window);

}  // namespace defmatch
