#pragma once

// Symbolic matchings on nice graphs and the augmenting-path elimination
// engine. A matching is stored as one DefSet of left elements per
// (piece, entry) pair: every element of that set is matched along that
// entry's map. Augmenting paths are handled wholesale through generating
// sequences: a fixed pattern of graph steps and matching steps whose start
// set (all left free vertices from which a simple augmenting path follows
// the pattern) is computed exactly as one DefSet and flipped in one move.

#include "defmatch/nice_graph.hpp"

#include <map>
#include <optional>

namespace defmatch {

struct MatchPart {
  u32 piece = 0;
  u32 entry = 0;
  DefSet domain;
};

class SymbolicMatching {
 public:
  SymbolicMatching() = default;

  // parts are unioned per (piece, entry); empty domains are dropped.
  void add(u32 piece, u32 entry, const DefSet& d);
  // d must lie inside the stored domain.
  void remove(u32 piece, u32 entry, const DefSet& d);
  DefSet domain_of(u32 piece, u32 entry, const UniversePtr& u) const;

  std::vector<MatchPart> parts() const;  // sorted by (piece, entry)
  bool empty() const { return parts_.empty(); }

 private:
  std::map<std::pair<u32, u32>, DefSet> parts_;
};

DefSet covered_a(const NiceGraph& g, const SymbolicMatching& m);
DefSet covered_b(const NiceGraph& g, const SymbolicMatching& m);

// Index validity, domains inside their pieces, per-piece disjoint domains,
// globally disjoint images.
ValidationReport validate_matching(const NiceGraph& g, const SymbolicMatching& m);

// One step of a generating sequence. Even positions are graph steps leaving
// the current piece (piece must equal the walk's current piece); odd
// positions are matching steps naming the (piece, entry) whose matched edges
// the walk crosses backwards.
struct SeqStep {
  u32 piece = 0;
  u32 entry = 0;
};

struct GenSeq {
  u32 start_piece = 0;
  std::vector<SeqStep> steps;  // odd length
};

std::string seq_str(const GenSeq& s);

// Exact start set of seq: free left vertices of the start piece (further
// restricted to within when given) from which a simple augmenting path
// follows seq and ends at a free right vertex.
DefSet aug_start_set(const NiceGraph& g, const SymbolicMatching& m, const GenSeq& seq,
                     const std::optional<DefSet>& within = std::nullopt);

// Flips m along seq simultaneously for every start vertex in starts.
// starts must be a subset of aug_start_set(g, m, seq). The result is
// re-validated; a violation throws std::logic_error.
void flip_family(const NiceGraph& g, SymbolicMatching& m, const GenSeq& seq,
                 const DefSet& starts);

struct EliminateStats {
  u64 flips = 0;
  u64 leaves = 0;   // sequences whose exact start set was computed
  u64 nodes = 0;    // search tree nodes visited
  u64 passes = 0;
};

// Removes every augmenting path of length <= 2K+1 from m, in stages of
// increasing length. Within a stage, start pieces are taken in index order
// and sequences in lexicographic order; each nonempty start set is flipped
// whole. A stage repeats until a full pass performs no flip, so on return no
// sequence of that length has a nonempty start set. within restricts start
// vertices. max_nodes > 0 bounds the total search size
// (resource_limit_error beyond it).
EliminateStats eliminate(const NiceGraph& g, SymbolicMatching& m, u32 K,
                         const std::optional<DefSet>& within = std::nullopt, u64 max_nodes = 0);

// Explicit window view of (g, m) for cross-checking: the expansion plus the
// restriction of m to it and masks of symbolically free vertices.
struct WindowView {
  ExplicitExpansion x;
  oracle::MatchingState m;
  std::vector<char> free_a, free_b;
};

WindowView window_view(const NiceGraph& g, const SymbolicMatching& m, u64 window);

}  // namespace defmatch
