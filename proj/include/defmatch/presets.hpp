#pragma once

// Named demo instances and seeded random generators. Everything here is
// deterministic in the seed; the CLI and the test suite both build their
// instances through these.

#include "defmatch/matching.hpp"
#include "defmatch/semigroup.hpp"

namespace defmatch {

// "one-ended-path", "hilbert-hotel": symbolic graphs over the naturals.
// "four-cycle": the 4-element demo graph. Unknown names throw
// hypothesis_error.
NiceGraph preset_graph(const std::string& name);

// Universe behind a preset. "finite-rotation" (size elements, rotation and
// reflection generators) is additionally available here for the verdict
// demos; size is ignored by the naturals presets.
UniversePtr preset_universe(const std::string& name, u64 size = 12);

std::vector<std::string> preset_graph_names();
std::vector<std::string> preset_universe_names();

// Random bipartite instance on a finite universe of 2n elements: left side
// [0,n) as a single piece, right side [n,2n), k bijections with pairwise
// empty equalizers. k=2 pairs a random bijection with its derangement
// twist (components are even cycles); k>=3 composes a random bijection with
// k distinct rotations.
NiceGraph gen_finite_regular(u64 n, u64 k, Rng& rng);

// Random valid partial matching on a finite-universe graph. Tries to match
// roughly percent% of the left side greedily; always returns at least one
// edge when the graph has any.
SymbolicMatching random_matching(const NiceGraph& g, Rng& rng, u32 percent);

// Random valid witness k[A] <= k[A] over A's universe, produced by mutating
// the identity witness (copy splits, per-target-copy composition with a
// bijection, target relabeling). Finite universes only.
TaggedWitness random_theta(const DefSet& A, u64 k, Rng& rng, u32 moves);

}  // namespace defmatch
