#include "defmatch/matching.hpp"

#include <algorithm>

namespace defmatch {

void SymbolicMatching::add(u32 piece, u32 entry, const DefSet& d) {
  if (d.is_empty()) return;
  auto key = std::make_pair(piece, entry);
  auto it = parts_.find(key);
  if (it == parts_.end())
    parts_.emplace(key, d);
  else
    it->second = set_union(it->second, d);
}

void SymbolicMatching::remove(u32 piece, u32 entry, const DefSet& d) {
  if (d.is_empty()) return;
  auto it = parts_.find({piece, entry});
  if (it == parts_.end() || !is_subset(d, it->second))
    throw std::logic_error("SymbolicMatching::remove: domain not matched along this entry");
  it->second = set_difference(it->second, d);
  if (it->second.is_empty()) parts_.erase(it);
}

DefSet SymbolicMatching::domain_of(u32 piece, u32 entry, const UniversePtr& u) const {
  auto it = parts_.find({piece, entry});
  return it == parts_.end() ? DefSet::empty(u) : it->second;
}

std::vector<MatchPart> SymbolicMatching::parts() const {
  std::vector<MatchPart> out;
  for (const auto& [key, d] : parts_) out.push_back({key.first, key.second, d});
  return out;
}

DefSet covered_a(const NiceGraph& g, const SymbolicMatching& m) {
  DefSet s = DefSet::empty(g.u);
  for (const MatchPart& p : m.parts()) s = set_union(s, p.domain);
  return s;
}

DefSet covered_b(const NiceGraph& g, const SymbolicMatching& m) {
  DefSet s = DefSet::empty(g.u);
  for (const MatchPart& p : m.parts())
    s = set_union(s, image(g.map_of(p.piece, p.entry), p.domain));
  return s;
}

ValidationReport validate_matching(const NiceGraph& g, const SymbolicMatching& m) {
  ValidationReport r;
  std::vector<MatchPart> parts = m.parts();
  for (const MatchPart& p : parts) {
    if (p.piece >= g.pieces.size() || p.entry >= g.families[p.piece].size()) {
      r.fail("part references missing piece/entry");
      return r;
    }
    if (!is_subset(p.domain, g.pieces[p.piece]))
      r.fail("matched domain leaves piece " + std::to_string(p.piece));
  }
  std::vector<DefSet> images;
  for (const MatchPart& p : parts)
    images.push_back(image(g.map_of(p.piece, p.entry), p.domain));
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!is_subset(images[i], g.B)) r.fail("matched image leaves the right side");
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if (parts[i].piece == parts[j].piece && !disjoint(parts[i].domain, parts[j].domain))
        r.fail("piece " + std::to_string(parts[i].piece) + ": entries " +
               std::to_string(parts[i].entry) + " and " + std::to_string(parts[j].entry) +
               " match a common vertex");
      if (!disjoint(images[i], images[j])) r.fail("two matched parts share a right vertex");
    }
  }
  return r;
}

std::string seq_str(const GenSeq& s) {
  std::string out = "p" + std::to_string(s.start_piece);
  for (size_t i = 0; i < s.steps.size(); ++i) {
    out += i % 2 == 0 ? " g" : " m";
    out += std::to_string(s.steps[i].piece) + "." + std::to_string(s.steps[i].entry);
  }
  return out;
}

namespace {

PartialIso matched_pullback(const NiceGraph& g, const SymbolicMatching& m, u32 piece, u32 entry) {
  DefSet d = m.domain_of(piece, entry, g.u);
  return invert(restrict(g.map_of(piece, entry), d));
}

// Transports from the start set to every position of the walk.
struct Walk {
  std::vector<PartialIso> psi;   // psi[t]: start -> left position t
  std::vector<PartialIso> phi;   // phi[s-1]: start -> right position s
  std::vector<u32> piece_at;     // piece of left position t
};

void check_seq(const NiceGraph& g, const GenSeq& seq) {
  if (seq.steps.size() % 2 == 0) throw hypothesis_error("sequence length must be odd");
  if (seq.start_piece >= g.pieces.size()) throw hypothesis_error("bad start piece");
  u32 cur = seq.start_piece;
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const SeqStep& st = seq.steps[i];
    if (st.piece >= g.pieces.size() || st.entry >= g.families[st.piece].size())
      throw hypothesis_error("sequence step out of range");
    if (i % 2 == 0 && st.piece != cur)
      throw hypothesis_error("graph step must leave the current piece");
    cur = st.piece;
  }
}

Walk walk_seq(const NiceGraph& g, const SymbolicMatching& m, const GenSeq& seq,
              const DefSet& start) {
  Walk w;
  w.psi.push_back(restrict(identity_iso(g.u), start));
  w.piece_at.push_back(seq.start_piece);
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const SeqStep& st = seq.steps[i];
    if (i % 2 == 0) {
      w.phi.push_back(compose(g.map_of(st.piece, st.entry), w.psi.back()));
    } else {
      w.psi.push_back(compose(matched_pullback(g, m, st.piece, st.entry), w.phi.back()));
      w.piece_at.push_back(st.piece);
    }
  }
  return w;
}

DefSet simple_exclusions(const Walk& w, DefSet s) {
  for (size_t t = 0; t + 1 < w.psi.size() && !s.is_empty(); ++t)
    for (size_t t2 = t + 1; t2 < w.psi.size(); ++t2) {
      if (w.piece_at[t] != w.piece_at[t2]) continue;
      s = set_difference(s, equalizer(w.psi[t], w.psi[t2]));
    }
  for (size_t t = 0; t + 1 < w.phi.size() && !s.is_empty(); ++t)
    for (size_t t2 = t + 1; t2 < w.phi.size(); ++t2)
      s = set_difference(s, equalizer(w.phi[t], w.phi[t2]));
  return s;
}

}  // namespace

DefSet aug_start_set(const NiceGraph& g, const SymbolicMatching& m, const GenSeq& seq,
                     const std::optional<DefSet>& within) {
  check_seq(g, seq);
  DefSet x = set_difference(g.pieces[seq.start_piece], covered_a(g, m));
  if (within) x = set_intersect(x, *within);
  if (x.is_empty()) return x;
  Walk w = walk_seq(g, m, seq, x);
  const PartialIso& fin = w.phi.back();
  DefSet s = set_intersect(fin.dom, preimage(fin, set_difference(g.B, covered_b(g, m))));
  if (s.is_empty()) return s;
  return simple_exclusions(w, std::move(s));
}

void flip_family(const NiceGraph& g, SymbolicMatching& m, const GenSeq& seq,
                 const DefSet& starts) {
  check_seq(g, seq);
  if (starts.is_empty()) return;
  Walk w = walk_seq(g, m, seq, starts);
  if (!(w.phi.back().dom == starts))
    throw std::logic_error("flip_family: starts is not a start set of this sequence");
  size_t T = seq.steps.size() / 2;
  for (size_t t = 1; t <= T; ++t)
    m.remove(seq.steps[2 * t - 1].piece, seq.steps[2 * t - 1].entry, w.psi[t].img);
  for (size_t t = 0; t <= T; ++t)
    m.add(w.piece_at[t], seq.steps[2 * t].entry, w.psi[t].img);
  ValidationReport r = validate_matching(g, m);
  if (!r.ok) throw std::logic_error("flip_family broke the matching: " + r.problems.front());
}

namespace {

struct Eliminator {
  const NiceGraph& g;
  SymbolicMatching& m;
  const std::optional<DefSet>& within;
  u64 max_nodes;
  EliminateStats st;
  u32 stage_len = 1;
  u64 pass_flips = 0;
  // matched pullbacks, invalidated on every flip
  std::vector<std::vector<std::optional<PartialIso>>> pull_cache;

  Eliminator(const NiceGraph& g_, SymbolicMatching& m_, const std::optional<DefSet>& w,
             u64 cap)
      : g(g_), m(m_), within(w), max_nodes(cap) {
    pull_cache.resize(g.families.size());
    for (size_t i = 0; i < g.families.size(); ++i) pull_cache[i].resize(g.families[i].size());
  }

  const PartialIso& pullback(u32 p, u32 e) {
    auto& slot = pull_cache[p][e];
    if (!slot) slot = matched_pullback(g, m, p, e);
    return *slot;
  }

  void clear_cache() {
    for (auto& row : pull_cache)
      for (auto& slot : row) slot.reset();
  }

  void bump() {
    ++st.nodes;
    if (max_nodes && st.nodes > max_nodes)
      throw resource_limit_error("eliminate: search node cap exceeded");
  }

  void leaf(GenSeq& seq) {
    ++st.leaves;
    DefSet s = aug_start_set(g, m, seq, within);
    if (s.is_empty()) return;
    flip_family(g, m, seq, s);
    ++st.flips;
    ++pass_flips;
    clear_cache();
  }

  void dfs(GenSeq& seq, const PartialIso& cur, u32 cur_piece, u32 depth) {
    if (depth == stage_len) {
      leaf(seq);
      return;
    }
    if (depth % 2 == 0) {
      for (u32 e = 0; e < g.families[cur_piece].size(); ++e) {
        bump();
        PartialIso next = compose(g.map_of(cur_piece, e), cur);
        if (next.dom.is_empty()) continue;
        seq.steps.push_back({cur_piece, e});
        dfs(seq, next, cur_piece, depth + 1);
        seq.steps.pop_back();
      }
    } else {
      for (u32 p = 0; p < g.pieces.size(); ++p)
        for (u32 e = 0; e < g.families[p].size(); ++e) {
          bump();
          PartialIso next = compose(pullback(p, e), cur);
          if (next.dom.is_empty()) continue;
          seq.steps.push_back({p, e});
          dfs(seq, next, p, depth + 1);
          seq.steps.pop_back();
        }
    }
  }

  void run_stage() {
    do {
      pass_flips = 0;
      ++st.passes;
      clear_cache();
      for (u32 i0 = 0; i0 < g.pieces.size(); ++i0) {
        DefSet root = set_difference(g.pieces[i0], covered_a(g, m));
        if (within) root = set_intersect(root, *within);
        if (root.is_empty()) continue;
        GenSeq seq{i0, {}};
        dfs(seq, restrict(identity_iso(g.u), root), i0, 0);
      }
    } while (pass_flips > 0);
  }
};

}  // namespace

EliminateStats eliminate(const NiceGraph& g, SymbolicMatching& m, u32 K,
                         const std::optional<DefSet>& within, u64 max_nodes) {
  Eliminator e(g, m, within, max_nodes);
  for (u32 len = 1; len <= 2 * K + 1; len += 2) {
    e.stage_len = len;
    e.run_stage();
  }
  return e.st;
}

WindowView window_view(const NiceGraph& g, const SymbolicMatching& m, u64 window) {
  if (g.u->ground() == Ground::finite) window = std::min(window, g.u->size());
  WindowView v{explicit_expand(g, window), {}, {}, {}};
  v.m = oracle::empty_matching(v.x.graph);
  for (const MatchPart& p : m.parts()) {
    const PartialIso& f = g.map_of(p.piece, p.entry);
    for (u64 x : p.domain.enumerate_window(window)) {
      u64 y = *f.apply(x);
      if (y >= window) continue;
      int a = int(v.x.a_id_of[x]), b = int(v.x.b_id_of[y]);
      v.m.match_a[a] = b;
      v.m.match_b[b] = a;
      ++v.m.size;
    }
  }
  DefSet fa = set_difference(a_side(g), covered_a(g, m));
  DefSet fb = set_difference(g.B, covered_b(g, m));
  v.free_a.assign(v.x.graph.na, 0);
  v.free_b.assign(v.x.graph.nb, 0);
  for (int a = 0; a < v.x.graph.na; ++a) v.free_a[a] = fa.contains(v.x.graph.a_val[a]);
  for (int b = 0; b < v.x.graph.nb; ++b) v.free_b[b] = fb.contains(v.x.graph.b_val[b]);
  return v;
}

}  // namespace defmatch
