#pragma once

// Self-contained finite-graph checkers used to cross-validate the symbolic
// engine. Everything here works on explicit adjacency lists with plain
// integer vertex ids and knows nothing about DefSets or words.

#include <cstdint>
#include <optional>
#include <vector>

namespace defmatch::oracle {

struct Edge {
  int b;      // right endpoint
  int label;  // arbitrary caller tag (family/map index)
};

struct ExplicitGraph {
  int na = 0;
  int nb = 0;
  std::vector<std::vector<Edge>> adj;  // adj[a] = edges out of left vertex a

  // Optional caller annotations carried through expansion.
  std::vector<std::uint64_t> a_val, b_val;  // underlying element per vertex
  std::vector<char> a_flag, b_flag;         // boundary markers (excluded as
                                            // free endpoints of paths)
};

struct MatchingState {
  std::vector<int> match_a;  // matched b per a, -1 free
  std::vector<int> match_b;  // matched a per b, -1 free
  int size = 0;
};

MatchingState empty_matching(const ExplicitGraph& g);

// Hopcroft-Karp maximum matching.
MatchingState max_matching(const ExplicitGraph& g);

// Shortest augmenting path of length <= max_len (edge count, odd), starting
// and ending at unflagged free vertices. free_a/free_b restrict which
// vertices count as free; pass empty vectors to mean "unmatched". Returns
// the path as alternating vertex ids a0,b0,a1,b1,... or nullopt.
std::optional<std::vector<int>> augmenting_path(const ExplicitGraph& g, const MatchingState& m,
                                                int max_len,
                                                const std::vector<char>& free_a = {},
                                                const std::vector<char>& free_b = {});

// Verifies match_a/match_b are mutually consistent and every matched pair is
// an edge of g.
bool matching_valid(const ExplicitGraph& g, const MatchingState& m);

// Exhaustive search for an injective total assignment of left chunks to
// right targets. items[i] lists the admissible choices for item i, each
// choice being a set of right elements that must be pairwise disjoint across
// the chosen items. Returns chosen indices or nullopt. Used as the
// ground-truth for embedding searches on small instances.
std::optional<std::vector<int>> brute_cover(
    const std::vector<std::vector<std::vector<std::uint64_t>>>& items);

}  // namespace defmatch::oracle
