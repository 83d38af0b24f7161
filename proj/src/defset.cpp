#include "defmatch/defset.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>

namespace defmatch {

namespace {

std::atomic<u64> g_period_cap{1000000};

u64 words_for(u64 n) { return (n + 63) / 64; }

bool bit_get(const std::vector<u64>& w, u64 i) {
  return (w[i / 64] >> (i % 64)) & 1;
}

void bit_set(std::vector<u64>& w, u64 i) { w[i / 64] |= (1ull << (i % 64)); }

u64 popcount_all(const std::vector<u64>& w) {
  u64 c = 0;
  for (u64 x : w) c += std::popcount(x);
  return c;
}

bool sorted_contains(const std::vector<u64>& v, u64 x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Membership in the literal (unnormalized is fine) periodic form.
bool pf_contains(const PeriodicForm& f, u64 x) {
  if (x < f.T) return sorted_contains(f.E, x);
  return sorted_contains(f.R, x % f.P);
}

u64 checked_lcm(u64 a, u64 b) {
  u64 g = std::gcd(a, b);
  unsigned __int128 l = (unsigned __int128)(a / g) * b;
  if (l > g_period_cap.load()) {
    throw resource_limit_error("period " + std::to_string((u64)l) +
                               " exceeds cap " + std::to_string(g_period_cap.load()));
  }
  return (u64)l;
}

// Canonical form: minimal eventual period (a divisor of the given one),
// then minimal threshold, with the exceptional part holding exactly the
// below-threshold members.
PeriodicForm normalize(PeriodicForm f) {
  if (f.P == 0) throw std::logic_error("period 0");
  u64 cap = g_period_cap.load();
  if (f.P > cap) {
    throw resource_limit_error("period " + std::to_string(f.P) + " exceeds cap " +
                               std::to_string(cap));
  }
  if (f.T > 64 * cap) {
    throw resource_limit_error("threshold " + std::to_string(f.T) + " exceeds cap");
  }
  if (!f.E.empty() && f.E.back() >= f.T)
    throw std::logic_error("exceptional entry at or above threshold");
  // Minimal eventual period divides every eventual period, so scanning the
  // divisors of P in increasing order finds it.
  std::vector<char> rbit(f.P, 0);
  for (u64 r : f.R) rbit[r] = 1;
  for (u64 d = 1; d <= f.P; ++d) {
    if (f.P % d != 0) continue;
    bool periodic = true;
    for (u64 r = 0; r < d && periodic; ++r) {
      for (u64 x = r + d; x < f.P; x += d) {
        if (rbit[x] != rbit[r]) {
          periodic = false;
          break;
        }
      }
    }
    if (periodic) {
      std::vector<u64> r2;
      for (u64 r = 0; r < d; ++r)
        if (rbit[r]) r2.push_back(r);
      f.R = std::move(r2);
      f.P = d;
      break;
    }
  }
  // Walk the threshold down while the exceptional part agrees with the
  // periodic prediction.
  std::vector<u64> e(f.E.begin(), f.E.end());
  u64 T = f.T;
  while (T > 0) {
    u64 x = T - 1;
    bool member = sorted_contains(e, x);
    bool predicted = sorted_contains(f.R, x % f.P);
    if (member != predicted) break;
    if (member) e.pop_back();  // x is the largest element of e when present
    --T;
  }
  // e may still contain entries >= T only if they were predicted; they were
  // popped above, so e is already confined to [0, T).
  f.T = T;
  f.E = std::move(e);
  if (f.R.empty()) f.P = 1;
  return f;
}

PeriodicForm bool_op(const PeriodicForm& a, const PeriodicForm& b, int op) {
  // op: 0 union, 1 intersect, 2 difference, 3 symdiff
  auto apply = [op](bool x, bool y) {
    switch (op) {
      case 0: return x || y;
      case 1: return x && y;
      case 2: return x && !y;
      default: return x != y;
    }
  };
  PeriodicForm out;
  out.P = checked_lcm(a.P, b.P);
  out.T = std::max(a.T, b.T);
  std::vector<char> ra(a.P, 0), rb(b.P, 0);
  for (u64 r : a.R) ra[r] = 1;
  for (u64 r : b.R) rb[r] = 1;
  for (u64 r = 0; r < out.P; ++r) {
    // Class r is eventually in the set iff the op holds on residues.
    if (apply(ra[r % a.P], rb[r % b.P])) out.R.push_back(r);
  }
  for (u64 x = 0; x < out.T; ++x) {
    if (apply(pf_contains(a, x), pf_contains(b, x))) out.E.push_back(x);
  }
  return normalize(std::move(out));
}

}  // namespace

u64 period_cap() { return g_period_cap.load(); }
void set_period_cap(u64 cap) { g_period_cap.store(cap == 0 ? 1 : cap); }

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw hypothesis_error("rational with zero denominator: " + s);
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string tail = s.substr(dot + 1);
    if (tail.empty() || tail.size() > 9) throw hypothesis_error("bad rational: " + s);
    long long den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    long long whole = std::stoll(s.substr(0, dot));
    long long frac = std::stoll(tail);
    bool neg = !s.empty() && s[0] == '-';
    Rat r = Rat(std::abs(whole)) + Rat(frac, den);
    return neg ? -r : r;
  }
  return Rat(std::stoll(s));
}

// ---------------------------------------------------------------------------
// Universe

UniversePtr Universe::finite(u64 size, std::vector<GeneratorSpec> gens) {
  auto u = std::shared_ptr<Universe>(new Universe());
  u->ground_ = Ground::finite;
  u->size_ = size;
  for (auto& g : gens) {
    if (!std::holds_alternative<GeneratorSpec::Table>(g.rule))
      throw hypothesis_error("finite universes take table generators only");
    auto& t = std::get<GeneratorSpec::Table>(g.rule);
    std::sort(t.pairs.begin(), t.pairs.end());
    std::vector<bool> used(size, false);
    u64 prev_src = 0;
    bool first = true;
    for (auto [x, y] : t.pairs) {
      if (x >= size || y >= size)
        throw hypothesis_error("generator '" + g.label + "' out of range");
      if (!first && x == prev_src)
        throw hypothesis_error("generator '" + g.label + "' not a function");
      if (used[y]) throw hypothesis_error("generator '" + g.label + "' not injective");
      used[y] = true;
      prev_src = x;
      first = false;
    }
    if (u->gens_.count(g.label))
      throw hypothesis_error("duplicate generator label '" + g.label + "'");
    u->gens_.emplace(g.label, std::move(g));
  }
  return u;
}

UniversePtr Universe::naturals(std::vector<GeneratorSpec> gens) {
  auto u = std::shared_ptr<Universe>(new Universe());
  u->ground_ = Ground::naturals;
  for (auto& g : gens) {
    if (!std::holds_alternative<GeneratorSpec::Affine>(g.rule))
      throw hypothesis_error("the naturals take affine generators only");
    auto& a = std::get<GeneratorSpec::Affine>(g.rule);
    if (a.a < 1) throw hypothesis_error("generator '" + g.label + "' needs a >= 1");
    if (g.domain && !std::holds_alternative<PeriodicForm>(*g.domain))
      throw hypothesis_error("generator '" + g.label + "' domain backend mismatch");
    if (u->gens_.count(g.label))
      throw hypothesis_error("duplicate generator label '" + g.label + "'");
    u->gens_.emplace(g.label, std::move(g));
  }
  return u;
}

const GeneratorSpec& Universe::generator(const std::string& label) const {
  auto it = gens_.find(label);
  if (it == gens_.end()) throw hypothesis_error("unknown generator '" + label + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// DefSet

bool data_contains(const SetData& d, u64 x) {
  if (auto* fb = std::get_if<FiniteBits>(&d)) {
    if (x >= fb->words.size() * 64) return false;
    return bit_get(fb->words, x);
  }
  return pf_contains(std::get<PeriodicForm>(d), x);
}

DefSet DefSet::from_data(const UniversePtr& u, SetData data) {
  DefSet s;
  s.u_ = u;
  if (u->ground() == Ground::finite) {
    if (!std::holds_alternative<FiniteBits>(data))
      throw hypothesis_error("set backend does not match universe");
    auto& fb = std::get<FiniteBits>(data);
    fb.words.resize(words_for(u->size()), 0);
    if (u->size() % 64 && !fb.words.empty())
      fb.words.back() &= (1ull << (u->size() % 64)) - 1;
  } else {
    if (!std::holds_alternative<PeriodicForm>(data))
      throw hypothesis_error("set backend does not match universe");
    data = normalize(std::get<PeriodicForm>(std::move(data)));
  }
  s.data_ = std::move(data);
  return s;
}

DefSet DefSet::empty(const UniversePtr& u) {
  if (u->ground() == Ground::finite) return from_data(u, FiniteBits{});
  return from_data(u, PeriodicForm{});
}

DefSet DefSet::full(const UniversePtr& u) {
  if (u->ground() == Ground::finite) {
    FiniteBits fb;
    fb.words.assign(words_for(u->size()), ~0ull);
    return from_data(u, std::move(fb));
  }
  return from_data(u, PeriodicForm{0, 1, {0}, {}});
}

DefSet DefSet::of(const UniversePtr& u, std::vector<u64> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (u->ground() == Ground::finite) {
    FiniteBits fb;
    fb.words.assign(words_for(u->size()), 0);
    for (u64 x : elements) {
      if (x >= u->size()) throw hypothesis_error("element outside finite ground");
      bit_set(fb.words, x);
    }
    return from_data(u, std::move(fb));
  }
  PeriodicForm f;
  f.T = elements.empty() ? 0 : elements.back() + 1;
  f.E = std::move(elements);
  return from_data(u, std::move(f));
}

DefSet DefSet::eventually_periodic(const UniversePtr& u, u64 T, u64 P,
                                   std::vector<u64> R, std::vector<u64> E) {
  if (u->ground() != Ground::naturals)
    throw hypothesis_error("eventually_periodic needs the naturals");
  if (P == 0) throw hypothesis_error("period must be >= 1");
  std::sort(R.begin(), R.end());
  R.erase(std::unique(R.begin(), R.end()), R.end());
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  if (!R.empty() && R.back() >= P) throw hypothesis_error("residue outside [0, P)");
  if (!E.empty() && E.back() >= T) throw hypothesis_error("exceptional entry >= T");
  return from_data(u, PeriodicForm{T, P, std::move(R), std::move(E)});
}

DefSet DefSet::progression(const UniversePtr& u, u64 first, u64 step) {
  if (step == 0) throw hypothesis_error("step must be >= 1");
  if (u->ground() == Ground::finite) {
    std::vector<u64> e;
    for (u64 x = first; x < u->size(); x += step) e.push_back(x);
    return of(u, std::move(e));
  }
  return eventually_periodic(u, first, step, {first % step}, {});
}

DefSet DefSet::range(const UniversePtr& u, u64 lo, u64 hi) {
  if (u->ground() == Ground::finite) hi = std::min(hi, u->size());
  if (lo >= hi) return empty(u);
  if (u->ground() == Ground::finite) {
    std::vector<u64> e;
    for (u64 x = lo; x < hi; ++x) e.push_back(x);
    return of(u, std::move(e));
  }
  std::vector<u64> e;
  for (u64 x = lo; x < hi; ++x) e.push_back(x);
  PeriodicForm f;
  f.T = hi;
  f.E = std::move(e);
  return from_data(u, std::move(f));
}

bool DefSet::contains(u64 x) const { return data_contains(data_, x); }

bool DefSet::is_empty() const {
  if (auto* fb = std::get_if<FiniteBits>(&data_)) {
    for (u64 w : fb->words)
      if (w) return false;
    return true;
  }
  auto& f = std::get<PeriodicForm>(data_);
  return f.R.empty() && f.E.empty();
}

std::optional<u64> DefSet::cardinality() const {
  if (auto* fb = std::get_if<FiniteBits>(&data_)) return popcount_all(fb->words);
  auto& f = std::get<PeriodicForm>(data_);
  if (!f.R.empty()) return std::nullopt;
  return f.E.size();
}

Rat DefSet::density() const {
  if (auto* fb = std::get_if<FiniteBits>(&data_)) {
    if (u_->size() == 0) return Rat(0);
    return Rat((long long)popcount_all(fb->words), (long long)u_->size());
  }
  auto& f = std::get<PeriodicForm>(data_);
  return Rat((long long)f.R.size(), (long long)f.P);
}

std::vector<u64> DefSet::enumerate_window(u64 n) const {
  std::vector<u64> out;
  if (auto* fb = std::get_if<FiniteBits>(&data_)) {
    u64 lim = std::min<u64>(n, u_->size());
    for (u64 x = 0; x < lim; ++x)
      if (bit_get(fb->words, x)) out.push_back(x);
    return out;
  }
  auto& f = std::get<PeriodicForm>(data_);
  for (u64 x : f.E) {
    if (x >= n) break;
    out.push_back(x);
  }
  if (!f.R.empty()) {
    for (u64 x = f.T; x < n; ++x)
      if (sorted_contains(f.R, x % f.P)) out.push_back(x);
  }
  return out;
}

bool DefSet::operator==(const DefSet& o) const {
  if (u_ != o.u_) throw universe_mismatch_error();
  return data_ == o.data_;
}

const PeriodicForm& DefSet::periodic_form() const {
  return std::get<PeriodicForm>(data_);
}

namespace {

DefSet finite_op(const DefSet& a, const DefSet& b, int op) {
  const auto& wa = std::get<FiniteBits>(a.data()).words;
  const auto& wb = std::get<FiniteBits>(b.data()).words;
  FiniteBits out;
  out.words.resize(wa.size());
  for (size_t i = 0; i < wa.size(); ++i) {
    switch (op) {
      case 0: out.words[i] = wa[i] | wb[i]; break;
      case 1: out.words[i] = wa[i] & wb[i]; break;
      case 2: out.words[i] = wa[i] & ~wb[i]; break;
      default: out.words[i] = wa[i] ^ wb[i]; break;
    }
  }
  return DefSet::from_data(a.universe(), std::move(out));
}

DefSet dispatch_op(const DefSet& a, const DefSet& b, int op) {
  if (a.universe() != b.universe()) throw universe_mismatch_error();
  if (a.universe()->ground() == Ground::finite) return finite_op(a, b, op);
  return DefSet::from_data(
      a.universe(),
      bool_op(std::get<PeriodicForm>(a.data()), std::get<PeriodicForm>(b.data()), op));
}

}  // namespace

DefSet operator|(const DefSet& a, const DefSet& b) { return dispatch_op(a, b, 0); }
DefSet operator&(const DefSet& a, const DefSet& b) { return dispatch_op(a, b, 1); }
DefSet operator-(const DefSet& a, const DefSet& b) { return dispatch_op(a, b, 2); }
DefSet operator^(const DefSet& a, const DefSet& b) { return dispatch_op(a, b, 3); }

DefSet DefSet::complement() const { return full(u_) - *this; }

bool is_subset(const DefSet& a, const DefSet& b) { return (a - b).is_empty(); }
bool disjoint(const DefSet& a, const DefSet& b) { return (a & b).is_empty(); }

}  // namespace defmatch
