#pragma once

// Defect-bounded matching driver. Picks the elimination depth K from the
// requested copy count m, runs the engine, and certifies the size of the
// uncovered set through an alternating neighborhood chain plus counting
// checks done in exact rational arithmetic.

#include "defmatch/matching.hpp"

#include <string>

namespace defmatch {

// both_sides: graph k-regular on both sides, uncovered set taken in A u B.
// a_side: k-regular in A, degree <= k in B, uncovered set taken in A.
// multigraph: as a_side but multiplicities may exceed 1.
enum class Variant { both_sides, a_side, multigraph };

// Interpretation of the even chain steps: partners along the matching, or
// all graph neighbors.
enum class NmReading { matched, all_edges };

// Smallest odd K with m <= (k+1)/k * (1 + (K-1)/(2k)).
u32 k_for_target(u64 k, const Rat& m);

// Uniform left degree (sum of multiplicities per piece); throws
// hypothesis_error when pieces disagree or k < 2.
u64 left_degree(const NiceGraph& g);

struct ChainCheck {
  std::string name;
  bool holds = true;
  bool exact = true;  // false when counts are window samples
  std::string detail;
};

struct YChainResult {
  std::vector<DefSet> chain;    // Y_0 .. Y_K
  std::vector<u64> counts;      // |Y_i|, exact or windowed
  std::vector<ChainCheck> checks;
  bool exact = true;
  bool ok = true;               // every exact check holds
};

// Builds Y_0 (uncovered vertices per variant) and the chain Y_i, odd steps
// through graph edges, even steps per reading, then evaluates the counting
// consequences: |Y1| >= k/(k-1)|Y0|; |Yi| = |Yi+1| for odd i <= K-2;
// k|Yi| >= (k+(i-1)/2)|Y1| for odd i; |YK| >= (1+(K-1)/(2k))((k+1)/k)|Y0|.
// Caller must have removed augmenting paths of length <= K first. On
// infinite universes the counts are window samples and advisory.
YChainResult y_chain_certificate(const NiceGraph& g, const SymbolicMatching& m, u64 k, u32 K,
                                 Variant variant, NmReading reading, u64 window);

DefSet graph_neighbors(const NiceGraph& g, const DefSet& x);
DefSet matched_neighbors(const NiceGraph& g, const SymbolicMatching& m, const DefSet& x);

struct BergeCheck {
  u64 matched = 0;   // |M|
  u64 maximum = 0;   // oracle maximum matching
  Rat bound;         // (K+1)/(K+2)
  bool holds = true;
};

// Finite universes only: no augmenting path of length <= 2K+1 forces
// |M| >= (K+1)/(K+2) |M*|; checked against the explicit maximum matching.
BergeCheck berge_check(const NiceGraph& g, const SymbolicMatching& m, u32 K);

struct CoverageReport {
  u64 k = 0;
  Rat m;
  u32 K = 1;           // odd path-length threshold
  Rat chain_bound;     // (k+1)/k * (1+(K-1)/(2k)), >= m by choice of K
  SymbolicMatching matching;
  DefSet Y0;
  YChainResult chain;
  bool counting_ok = true;  // m|Y0| <= |V| (both_sides) or <= |A|
  bool counting_exact = true;
  EliminateStats stats;
};

// Validates the regularity hypothesis of the variant, eliminates augmenting
// paths up to length K = k_for_target(k, m), and certifies the defect.
// start may seed the matching (its covered vertices stay covered).
CoverageReport match_with_defect(const NiceGraph& g, const Rat& m, Variant variant,
                                 NmReading reading = NmReading::matched,
                                 const SymbolicMatching* start = nullptr, u64 window = 1000,
                                 u64 max_nodes = 0);

}  // namespace defmatch
