#pragma once

// Partial isomorphisms of a universe, written as words over the registered
// generators. A word is the identity of record; every word also carries a
// realized rule (injection table on finite universes, rational-affine map
// x -> (al*x + be)/ga on the naturals) together with its exact domain and
// image as DefSets. Composition and inversion stay inside this class of
// rules, so images and preimages of eventually periodic sets are again
// eventually periodic.

#include "defmatch/defset.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace defmatch {

struct IsoLetter {
  std::string label;
  int sign = 1;  // +1 generator, -1 inverse

  bool operator==(const IsoLetter&) const = default;
  auto operator<=>(const IsoLetter&) const = default;
};

using IsoWord = std::vector<IsoLetter>;

// Eager free reduction: adjacent (g,+1)(g,-1) or (g,-1)(g,+1) pairs vanish.
IsoWord free_reduce(IsoWord w);
IsoWord word_inverse(const IsoWord& w);
// a followed by b (letters apply left to right), freely reduced.
IsoWord word_concat(const IsoWord& a, const IsoWord& b);
std::string word_str(const IsoWord& w);

struct TableRule {
  // fwd[x] = image of x, or -1 when x is outside the domain.
  std::vector<i64> fwd;
};

struct RatAffine {
  u64 al = 1;
  i64 be = 0;
  u64 ga = 1;

  bool operator==(const RatAffine&) const = default;
};

struct PartialIso {
  UniversePtr u;
  IsoWord word;
  std::variant<TableRule, RatAffine> rule;
  DefSet dom;
  DefSet img;

  std::optional<u64> apply(u64 x) const;
};

PartialIso identity_iso(const UniversePtr& u);
// Builds an iso from an explicit rule and domain; the image is computed.
// word is informational only and is not checked against the generators.
PartialIso make_iso(const UniversePtr& u, std::variant<TableRule, RatAffine> rule, DefSet dom,
                    IsoWord word = {});
// Realizes a single generator (sign -1 gives its inverse).
PartialIso letter_iso(const UniversePtr& u, const IsoLetter& l);
// Realizes a word, letters applied left to right.
PartialIso realize(const UniversePtr& u, const IsoWord& w);

// compose(f, g): g first, then f. Domain is the exact pullback.
PartialIso compose(const PartialIso& f, const PartialIso& g);
PartialIso invert(const PartialIso& f);
PartialIso restrict(const PartialIso& f, const DefSet& d);

DefSet image(const PartialIso& f, const DefSet& s);
DefSet preimage(const PartialIso& f, const DefSet& s);

// {x in dom f /\ dom g : f(x) = g(x)}. For rational-affine rules this is
// empty, a single point, or all of the common domain.
DefSet equalizer(const PartialIso& f, const PartialIso& g);

// Same domain and pointwise equal on it.
bool extensionally_equal(const PartialIso& f, const PartialIso& g);

// All realized words of length <= max_word_len over the universe's
// generators, deduplicated by extensional graph equality, in breadth-first
// discovery order (identity first; letters ordered by label, then sign).
// Throws resource_limit_error when more than cap distinct elements appear.
std::vector<PartialIso> enumerate_pseudogroup(const UniversePtr& u, u32 max_word_len,
                                              u64 cap = 100000);

}  // namespace defmatch
