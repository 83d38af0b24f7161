#pragma once

// Witness algebra for size comparison of definable sets. An embedding
// witness partitions a source set into finitely many pieces, each carried
// into the target by one partial iso, with pairwise disjoint images. Tagged
// sets add formal disjoint copies (tag + base set) so that p copies of X
// can be compared against q copies of Y without leaving the base universe;
// the tag layer is pure bookkeeping and no tag crossing is ever witnessed by
// a tag map itself, only by honest isos of the base universe. On top of
// this sit the bounded searches (find_embedding, check_leq_m, check_leq_0),
// the cancellation engine (kX <= kY implies X <= Y up to a small defect),
// and the paradox/measure verdict.

#include "defmatch/coverage.hpp"

#include <optional>

namespace defmatch {

struct WitnessPiece {
  DefSet set;
  IsoWord word;   // informational; iso is authoritative
  PartialIso iso;
};

struct EmbeddingWitness {
  DefSet source, target;
  std::vector<WitnessPiece> pieces;
};

struct WitnessReport {
  bool valid = true;
  bool onto = false;  // images cover the target exactly
  std::vector<std::string> problems;
};

WitnessReport verify_witness(const EmbeddingWitness& w);
EmbeddingWitness identity_witness(const DefSet& x);
// u: X <= Y, then v: Y <= Z (target of u inside source of v); result X <= Z.
EmbeddingWitness compose_witness(const EmbeddingWitness& u, const EmbeddingWitness& v);
// Disjoint sources and disjoint targets required.
EmbeddingWitness sum_witness(const EmbeddingWitness& u, const EmbeddingWitness& v);

// --- tagged layer ------------------------------------------------------

// Formal disjoint union of base sets; parts[t] is the content of copy t.
struct TaggedSet {
  UniversePtr u;
  std::vector<DefSet> parts;
};

TaggedSet tagged(const DefSet& x, u64 copies = 1);
// p concatenated copies: copy r of a sits at tags [r*|a|, (r+1)*|a|).
TaggedSet scale(const TaggedSet& a, u64 p);
TaggedSet tagged_sum(const TaggedSet& a, const TaggedSet& b);
bool tagged_empty(const TaggedSet& a);

struct TaggedPiece {
  u32 src_tag = 0;
  DefSet set;
  IsoWord word;
  u32 dst_tag = 0;
  PartialIso iso;
};

struct TaggedWitness {
  TaggedSet source, target;
  std::vector<TaggedPiece> pieces;
};

WitnessReport verify_tagged(const TaggedWitness& w);
TaggedWitness identity_tagged(const TaggedSet& a);
TaggedWitness compose_tagged(const TaggedWitness& u, const TaggedWitness& v);
TaggedWitness tagged_sum_witness(const TaggedWitness& u, const TaggedWitness& v);

struct SearchBounds {
  u32 max_word_len = 3;
  u64 max_isos = 100000;   // pseudogroup enumeration cap
  u64 max_nodes = 200000;  // assignment search cap; exhaustion reports none
};

// Bounded search for a tagged witness a <= b using realized generator
// words. Finite backend: element-level bipartite matching against the
// enumerated pseudogroup (complete relative to it). Naturals backend:
// backtracking chunk assignment over (target tag, word) candidates in
// enumeration order. nullopt means the bounded search failed, never that no
// witness exists.
std::optional<TaggedWitness> find_tagged_witness(const TaggedSet& a, const TaggedSet& b,
                                                 const SearchBounds& bounds);

std::optional<EmbeddingWitness> find_embedding(const DefSet& x, const DefSet& y,
                                               const SearchBounds& bounds);

struct LeqMResult {
  u64 p = 1, q = 1;  // m reduced; the witness shows p copies into q copies
  TaggedWitness w;
};

// Witness search for x <=_m y: p x <= q y with p/q = m (reduced).
std::optional<LeqMResult> check_leq_m(const TaggedSet& x, const TaggedSet& y, const Rat& m,
                                      const SearchBounds& bounds);

struct Leq0Entry {
  u64 m = 1;
  std::vector<DefSet> x0;  // subset of x, per tag
  bool x0_full = false;
  std::optional<LeqMResult> self;   // x0 <=_m x (absent when x0 empty)
  std::optional<TaggedWitness> rest;  // x \ x0 <= y (absent when x0 = x)
};

// Per m in 1..m_max tries the two candidate subsets (empty, all of x);
// returns entries only for the m values where both halves were witnessed.
std::vector<Leq0Entry> check_leq_0(const TaggedSet& x, const TaggedSet& y, u64 m_max,
                                   const SearchBounds& bounds);

// --- cancellation ------------------------------------------------------

struct CancelEntry {
  u32 i = 0, j = 0;  // smallest (copy, copy) pair realizing the map
  DefSet C, D;       // matched left chunk and its image, base universe
  IsoWord word;
};

struct CancellationOutput {
  DefSet Y0;  // left defect, base universe
  std::vector<CancelEntry> entries;
  EmbeddingWitness witness;  // (A \ Y0) <= B, verified
  bool counting_ok = true;   // finite backend: m|Y0| <= |A|
  bool counting_exact = true;
  u32 K = 1;
  EliminateStats stats;
};

// theta must be a verified witness k[A] <= k[B]. Builds the representative
// multigraph over a two-stride working universe (left element a at 2a,
// right at 2b+1), runs the defect-bounded matcher, and pulls the matched
// components back to base sets with their base words.
CancellationOutput cancel(const DefSet& A, const DefSet& B, u64 k, const TaggedWitness& theta,
                          const Rat& m, u64 window = 1000, u64 max_nodes = 0);

// --- k to 2 reduction --------------------------------------------------

struct TwoFromKResult {
  u64 m = 1;
  CancellationOutput out;  // over A = two interleaved copies of X, B = X
};

// From a witness (n+1)X <= nX builds 2nX <= nX by repeated substitution,
// regroups the 2n source copies as n copies of the doubled set
// 2X = {2x} u {2x+1}, and cancels for every m <= m_max. Naturals only
// (the doubling uses the interleaving encoding).
std::vector<TwoFromKResult> two_from_k(const DefSet& x, const TaggedWitness& w, u64 m_max,
                                       u64 window = 1000, u64 max_nodes = 0);

// --- verdict -----------------------------------------------------------

enum class VerdictKind { Paradoxical, MeasureCandidate, Inconclusive };

struct ParadoxBundle {
  u64 m = 3;
  u64 p = 3, q = 1;
  Leq0Entry entry;     // the m = 3 entry for 2X vs X
  Rat mu_x0_max;       // invariant measure would force mu(X0) <= this
  Rat mu_rest_min;     // and mu(2X \ X0) >= this, which exceeds 1
};

struct MeasureDescription {
  std::string kind;  // "counting" or "density"
  u64 checked_sets = 0;
};

struct TarskiVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<ParadoxBundle> paradox;
  std::optional<MeasureDescription> measure;
};

// Decides between a paradoxical self-embedding of X (check_leq_0(2X, X) up
// to m = 3) and a certified invariant-measure regime (finite universe with
// total bijective generators: counting; naturals with translation-only
// generators: natural density, invariance spot-checked on random sets).
// Both triggering is a consistency failure (logic_error). Anything else is
// Inconclusive.
TarskiVerdict tarski_verdict(const DefSet& x, const SearchBounds& bounds, Rng& rng);

}  // namespace defmatch
