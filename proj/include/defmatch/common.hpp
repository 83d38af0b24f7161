#pragma once

// Shared plumbing: error types, exact rationals, deterministic RNG.

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace defmatch {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Parses "a", "a/b", or "a.b" with short decimal tails (CLI input).
Rat parse_rational(const std::string& s);

// Thrown when two values from different universes are combined.
struct universe_mismatch_error : std::logic_error {
  universe_mismatch_error() : std::logic_error("values belong to different universes") {}
  explicit universe_mismatch_error(const std::string& what) : std::logic_error(what) {}
};

// Thrown when a configured cap (period, enumeration count, search nodes) is hit.
struct resource_limit_error : std::runtime_error {
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation's stated hypothesis fails (not a bug, bad input).
struct hypothesis_error : std::invalid_argument {
  explicit hypothesis_error(const std::string& what) : std::invalid_argument(what) {}
};

// Period cap for eventually periodic set normalization. Settable from the CLI.
u64 period_cap();
void set_period_cap(u64 cap);

// Deterministic 64-bit generator (splitmix64). Distribution code is written
// out here so outputs are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n). n = 0 is rejected.
  u64 below(u64 n) {
    if (n == 0) throw std::logic_error("Rng::below(0)");
    return next() % n;
  }

  bool coin() { return next() & 1; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (u64 i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  std::vector<u64> permutation(u64 n) {
    std::vector<u64> p(n);
    for (u64 i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

 private:
  u64 state_;
};

}  // namespace defmatch
