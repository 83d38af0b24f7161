#pragma once

// Definable subsets of a universe, with two backends:
//  - Finite(n): dense bit vector over {0..n-1}.
//  - Naturals: eventually periodic subsets of N in canonical form
//    (threshold T, period P, residues R, explicit exceptional part below T).
//
// All values are immutable; operations return fresh sets. Sets carry their
// universe and refuse to combine across universes.

#include "defmatch/common.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace defmatch {

class Universe;
using UniversePtr = std::shared_ptr<const Universe>;

enum class Ground { finite, naturals };

// Raw payloads. These never carry a universe pointer so they can be stored
// inside Universe (generator domains) before the universe exists.
struct FiniteBits {
  std::vector<u64> words;  // bit i set <=> element i present

  bool operator==(const FiniteBits&) const = default;
};

struct PeriodicForm {
  u64 T = 0;               // threshold
  u64 P = 1;               // period, >= 1
  std::vector<u64> R;      // sorted residues in [0, P)
  std::vector<u64> E;      // sorted exceptional members in [0, T)

  bool operator==(const PeriodicForm&) const = default;
};

using SetData = std::variant<FiniteBits, PeriodicForm>;

// A generator of the distinguished pseudogroup, as registered on a universe.
// Finite universes register partial injection tables; the naturals register
// affine rules n -> a*n + b (a >= 1) with an optional domain restriction.
struct GenAffine {
  u64 a = 1;
  u64 b = 0;
};
struct GenTable {
  std::vector<std::pair<u64, u64>> pairs;  // sorted by source, injective
};

struct GeneratorSpec {
  std::string label;

  using Affine = GenAffine;
  using Table = GenTable;

  std::variant<Affine, Table> rule;
  std::optional<SetData> domain;  // absent = maximal domain
};

class Universe : public std::enable_shared_from_this<Universe> {
 public:
  static UniversePtr finite(u64 size, std::vector<GeneratorSpec> gens = {});
  static UniversePtr naturals(std::vector<GeneratorSpec> gens = {});

  Ground ground() const { return ground_; }
  u64 size() const { return size_; }  // finite only
  const std::map<std::string, GeneratorSpec>& generators() const { return gens_; }
  const GeneratorSpec& generator(const std::string& label) const;

 private:
  Universe() = default;
  Ground ground_ = Ground::finite;
  u64 size_ = 0;
  std::map<std::string, GeneratorSpec> gens_;
};

class DefSet {
 public:
  DefSet() = default;

  // Constructors.
  static DefSet empty(const UniversePtr& u);
  static DefSet full(const UniversePtr& u);
  static DefSet of(const UniversePtr& u, std::vector<u64> elements);
  // Set described by (T, P, R, E) literally; normalized on construction.
  // Naturals only. E entries must lie below T, R entries below P.
  static DefSet eventually_periodic(const UniversePtr& u, u64 T, u64 P,
                                    std::vector<u64> R, std::vector<u64> E);
  // Arithmetic progression {x >= first : x = first (mod step)}.
  static DefSet progression(const UniversePtr& u, u64 first, u64 step);
  // Half-open interval [lo, hi) within the universe.
  static DefSet range(const UniversePtr& u, u64 lo, u64 hi);
  static DefSet from_data(const UniversePtr& u, SetData data);

  const UniversePtr& universe() const { return u_; }
  const SetData& data() const { return data_; }

  bool contains(u64 x) const;
  bool is_empty() const;
  // Number of elements; nullopt when infinite.
  std::optional<u64> cardinality() const;
  // Natural density |R|/P (naturals); |S|/|ground| on finite universes with
  // nonempty ground.
  Rat density() const;
  // Members below n, ascending.
  std::vector<u64> enumerate_window(u64 n) const;

  bool operator==(const DefSet& o) const;
  bool operator!=(const DefSet& o) const { return !(*this == o); }

  friend DefSet operator|(const DefSet& a, const DefSet& b);
  friend DefSet operator&(const DefSet& a, const DefSet& b);
  friend DefSet operator-(const DefSet& a, const DefSet& b);
  friend DefSet operator^(const DefSet& a, const DefSet& b);
  DefSet complement() const;

  // For the periodic backend, exposes the canonical form.
  const PeriodicForm& periodic_form() const;

 private:
  UniversePtr u_;
  SetData data_;
};

inline DefSet set_union(const DefSet& a, const DefSet& b) { return a | b; }
inline DefSet set_intersect(const DefSet& a, const DefSet& b) { return a & b; }
inline DefSet set_difference(const DefSet& a, const DefSet& b) { return a - b; }
inline DefSet set_symdiff(const DefSet& a, const DefSet& b) { return a ^ b; }

bool is_subset(const DefSet& a, const DefSet& b);
bool disjoint(const DefSet& a, const DefSet& b);

// Membership test on raw payloads (used for generator domains).
bool data_contains(const SetData& d, u64 x);

}  // namespace defmatch
