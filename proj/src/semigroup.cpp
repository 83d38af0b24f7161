#include "defmatch/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace defmatch {

namespace {

std::string pc(size_t i) { return "piece " + std::to_string(i); }

void check_partition(const std::vector<const DefSet*>& sets, const DefSet& whole,
                     WitnessReport& r, const std::string& what) {
  DefSet seen = DefSet::empty(whole.universe());
  for (size_t i = 0; i < sets.size(); ++i) {
    if (!is_subset(*sets[i], whole)) {
      r.valid = false;
      r.problems.push_back(what + " " + pc(i) + " leaves the source");
    }
    if (!disjoint(*sets[i], seen)) {
      r.valid = false;
      r.problems.push_back(what + " pieces overlap at " + pc(i));
    }
    seen = set_union(seen, *sets[i]);
  }
  if (!(seen == whole)) {
    r.valid = false;
    r.problems.push_back(what + " pieces do not cover the source");
  }
}

}  // namespace

WitnessReport verify_witness(const EmbeddingWitness& w) {
  WitnessReport r;
  std::vector<const DefSet*> sets;
  for (const WitnessPiece& p : w.pieces) sets.push_back(&p.set);
  check_partition(sets, w.source, r, "source");
  DefSet covered = DefSet::empty(w.target.universe());
  for (size_t i = 0; i < w.pieces.size(); ++i) {
    const WitnessPiece& p = w.pieces[i];
    if (!is_subset(p.set, p.iso.dom)) {
      r.valid = false;
      r.problems.push_back(pc(i) + " not inside its map's domain");
      continue;
    }
    DefSet img = image(p.iso, p.set);
    if (!disjoint(img, covered)) {
      r.valid = false;
      r.problems.push_back(pc(i) + " image overlaps an earlier image");
    }
    if (!is_subset(img, w.target)) {
      r.valid = false;
      r.problems.push_back(pc(i) + " image leaves the target");
    }
    covered = set_union(covered, img);
  }
  r.onto = r.valid && covered == w.target;
  return r;
}

EmbeddingWitness identity_witness(const DefSet& x) {
  EmbeddingWitness w{x, x, {}};
  if (!x.is_empty()) w.pieces.push_back({x, {}, identity_iso(x.universe())});
  return w;
}

EmbeddingWitness compose_witness(const EmbeddingWitness& u, const EmbeddingWitness& v) {
  if (!is_subset(u.target, v.source))
    throw hypothesis_error("compose_witness: first target not inside second source");
  EmbeddingWitness out{u.source, v.target, {}};
  for (const WitnessPiece& a : u.pieces)
    for (const WitnessPiece& b : v.pieces) {
      DefSet hit = set_intersect(image(a.iso, a.set), b.set);
      if (hit.is_empty()) continue;
      DefSet src = set_intersect(preimage(a.iso, hit), a.set);
      out.pieces.push_back({src, word_concat(a.word, b.word), compose(b.iso, a.iso)});
    }
  return out;
}

EmbeddingWitness sum_witness(const EmbeddingWitness& u, const EmbeddingWitness& v) {
  if (!disjoint(u.source, v.source) || !disjoint(u.target, v.target))
    throw hypothesis_error("sum_witness: sources or targets overlap");
  EmbeddingWitness out{set_union(u.source, v.source), set_union(u.target, v.target), u.pieces};
  out.pieces.insert(out.pieces.end(), v.pieces.begin(), v.pieces.end());
  return out;
}

// --- tagged layer ------------------------------------------------------

TaggedSet tagged(const DefSet& x, u64 copies) {
  TaggedSet t{x.universe(), {}};
  for (u64 i = 0; i < copies; ++i) t.parts.push_back(x);
  return t;
}

TaggedSet scale(const TaggedSet& a, u64 p) {
  TaggedSet t{a.u, {}};
  for (u64 r = 0; r < p; ++r)
    for (const DefSet& s : a.parts) t.parts.push_back(s);
  return t;
}

TaggedSet tagged_sum(const TaggedSet& a, const TaggedSet& b) {
  if (a.u != b.u) throw universe_mismatch_error("tagged_sum: different universes");
  TaggedSet t = a;
  t.parts.insert(t.parts.end(), b.parts.begin(), b.parts.end());
  return t;
}

bool tagged_empty(const TaggedSet& a) {
  for (const DefSet& s : a.parts)
    if (!s.is_empty()) return false;
  return true;
}

WitnessReport verify_tagged(const TaggedWitness& w) {
  WitnessReport r;
  for (size_t i = 0; i < w.pieces.size(); ++i)
    if (w.pieces[i].src_tag >= w.source.parts.size() ||
        w.pieces[i].dst_tag >= w.target.parts.size()) {
      r.valid = false;
      r.problems.push_back(pc(i) + " has an out-of-range tag");
      return r;
    }
  for (u32 t = 0; t < w.source.parts.size(); ++t) {
    std::vector<const DefSet*> sets;
    for (const TaggedPiece& p : w.pieces)
      if (p.src_tag == t) sets.push_back(&p.set);
    check_partition(sets, w.source.parts[t], r, "copy " + std::to_string(t));
  }
  bool onto = true;
  for (u32 t = 0; t < w.target.parts.size(); ++t) {
    DefSet covered = DefSet::empty(w.target.u);
    for (size_t i = 0; i < w.pieces.size(); ++i) {
      const TaggedPiece& p = w.pieces[i];
      if (p.dst_tag != t) continue;
      if (!is_subset(p.set, p.iso.dom)) {
        r.valid = false;
        r.problems.push_back(pc(i) + " not inside its map's domain");
        continue;
      }
      DefSet img = image(p.iso, p.set);
      if (!disjoint(img, covered)) {
        r.valid = false;
        r.problems.push_back(pc(i) + " image overlaps within copy " + std::to_string(t));
      }
      if (!is_subset(img, w.target.parts[t])) {
        r.valid = false;
        r.problems.push_back(pc(i) + " image leaves target copy " + std::to_string(t));
      }
      covered = set_union(covered, img);
    }
    onto = onto && covered == w.target.parts[t];
  }
  r.onto = r.valid && onto;
  return r;
}

TaggedWitness identity_tagged(const TaggedSet& a) {
  TaggedWitness w{a, a, {}};
  for (u32 t = 0; t < a.parts.size(); ++t)
    if (!a.parts[t].is_empty()) w.pieces.push_back({t, a.parts[t], {}, t, identity_iso(a.u)});
  return w;
}

TaggedWitness compose_tagged(const TaggedWitness& u, const TaggedWitness& v) {
  if (u.target.parts.size() != v.source.parts.size())
    throw hypothesis_error("compose_tagged: copy counts disagree");
  for (size_t t = 0; t < u.target.parts.size(); ++t)
    if (!is_subset(u.target.parts[t], v.source.parts[t]))
      throw hypothesis_error("compose_tagged: first target not inside second source");
  TaggedWitness out{u.source, v.target, {}};
  for (const TaggedPiece& a : u.pieces)
    for (const TaggedPiece& b : v.pieces) {
      if (b.src_tag != a.dst_tag) continue;
      DefSet hit = set_intersect(image(a.iso, a.set), b.set);
      if (hit.is_empty()) continue;
      DefSet src = set_intersect(preimage(a.iso, hit), a.set);
      out.pieces.push_back(
          {a.src_tag, src, word_concat(a.word, b.word), b.dst_tag, compose(b.iso, a.iso)});
    }
  return out;
}

TaggedWitness tagged_sum_witness(const TaggedWitness& u, const TaggedWitness& v) {
  TaggedWitness out{tagged_sum(u.source, v.source), tagged_sum(u.target, v.target), u.pieces};
  u32 soff = u32(u.source.parts.size()), doff = u32(u.target.parts.size());
  for (TaggedPiece p : v.pieces) {
    p.src_tag += soff;
    p.dst_tag += doff;
    out.pieces.push_back(std::move(p));
  }
  return out;
}

// --- bounded searches --------------------------------------------------

namespace {

std::optional<TaggedWitness> finite_search(const TaggedSet& a, const TaggedSet& b,
                                           const std::vector<PartialIso>& isos) {
  const UniversePtr& u = a.u;
  struct SrcElem {
    u32 tag;
    u64 x;
  };
  std::vector<SrcElem> src;
  for (u32 t = 0; t < a.parts.size(); ++t)
    for (u64 x : a.parts[t].enumerate_window(u->size())) src.push_back({t, x});
  std::vector<std::pair<u32, u64>> tgt;
  std::map<std::pair<u32, u64>, int> tgt_id;
  for (u32 t = 0; t < b.parts.size(); ++t)
    for (u64 y : b.parts[t].enumerate_window(u->size())) {
      tgt_id[{t, y}] = int(tgt.size());
      tgt.emplace_back(t, y);
    }
  oracle::ExplicitGraph g;
  g.na = int(src.size());
  g.nb = int(tgt.size());
  g.adj.resize(g.na);
  for (int i = 0; i < g.na; ++i) {
    std::vector<i64> first_label(u->size(), -1);
    for (size_t f = 0; f < isos.size(); ++f) {
      auto y = isos[f].apply(src[i].x);
      if (y && first_label[*y] < 0) first_label[*y] = i64(f);
    }
    for (u32 t = 0; t < b.parts.size(); ++t)
      for (u64 y = 0; y < u->size(); ++y)
        if (first_label[y] >= 0 && b.parts[t].contains(y))
          g.adj[i].push_back({tgt_id[{t, y}], int(first_label[y])});
  }
  oracle::MatchingState m = oracle::max_matching(g);
  if (m.size < g.na) return std::nullopt;
  std::map<std::tuple<u32, int, u32>, std::vector<u64>> groups;
  for (int i = 0; i < g.na; ++i) {
    int tb = m.match_a[i];
    int label = -1;
    for (const oracle::Edge& e : g.adj[i])
      if (e.b == tb) {
        label = e.label;
        break;
      }
    groups[{src[i].tag, label, tgt[tb].first}].push_back(src[i].x);
  }
  TaggedWitness w{a, b, {}};
  for (auto& [key, xs] : groups) {
    auto [stag, label, dtag] = key;
    w.pieces.push_back(
        {stag, DefSet::of(u, xs), isos[size_t(label)].word, dtag, isos[size_t(label)]});
  }
  return w;
}

std::optional<TaggedWitness> chunk_search(const TaggedSet& a, const TaggedSet& b,
                                          const std::vector<PartialIso>& isos, u64 max_nodes) {
  std::vector<DefSet> remaining = a.parts;
  std::vector<DefSet> free = b.parts;
  std::vector<TaggedPiece> pieces;
  u64 nodes = 0;
  std::function<bool()> rec = [&]() -> bool {
    size_t t = 0;
    while (t < remaining.size() && remaining[t].is_empty()) ++t;
    if (t == remaining.size()) return true;
    if (++nodes > max_nodes) return false;
    for (u32 d = 0; d < free.size(); ++d)
      for (const PartialIso& f : isos) {
        DefSet sa = set_intersect(remaining[t], preimage(f, free[d]));
        if (sa.is_empty()) continue;
        DefSet img = image(f, sa);
        remaining[t] = set_difference(remaining[t], sa);
        free[d] = set_difference(free[d], img);
        pieces.push_back({u32(t), sa, f.word, d, f});
        if (rec()) return true;
        pieces.pop_back();
        free[d] = set_union(free[d], img);
        remaining[t] = set_union(remaining[t], sa);
      }
    return false;
  };
  if (!rec()) return std::nullopt;
  return TaggedWitness{a, b, std::move(pieces)};
}

void assert_sound(const TaggedWitness& w) {
  WitnessReport r = verify_tagged(w);
  if (!r.valid) throw std::logic_error("witness search returned an invalid witness");
  if (w.source.u->ground() != Ground::finite) return;
  u64 src = 0, tgt = 0;
  for (const DefSet& s : w.source.parts) src += *s.cardinality();
  for (const DefSet& s : w.target.parts) tgt += *s.cardinality();
  if (src > tgt) throw std::logic_error("witness contradicts counting");
}

}  // namespace

std::optional<TaggedWitness> find_tagged_witness(const TaggedSet& a, const TaggedSet& b,
                                                 const SearchBounds& bounds) {
  if (a.u != b.u) throw universe_mismatch_error("find_tagged_witness: different universes");
  if (tagged_empty(a)) return TaggedWitness{a, b, {}};
  std::vector<PartialIso> isos = enumerate_pseudogroup(a.u, bounds.max_word_len, bounds.max_isos);
  std::optional<TaggedWitness> w = a.u->ground() == Ground::finite
                                       ? finite_search(a, b, isos)
                                       : chunk_search(a, b, isos, bounds.max_nodes);
  if (w) assert_sound(*w);
  return w;
}

std::optional<EmbeddingWitness> find_embedding(const DefSet& x, const DefSet& y,
                                               const SearchBounds& bounds) {
  auto w = find_tagged_witness(tagged(x), tagged(y), bounds);
  if (!w) return std::nullopt;
  EmbeddingWitness out{x, y, {}};
  for (const TaggedPiece& p : w->pieces) out.pieces.push_back({p.set, p.word, p.iso});
  return out;
}

std::optional<LeqMResult> check_leq_m(const TaggedSet& x, const TaggedSet& y, const Rat& m,
                                      const SearchBounds& bounds) {
  if (m <= Rat(0)) throw hypothesis_error("check_leq_m: positive ratio required");
  u64 p = u64(m.numerator()), q = u64(m.denominator());
  auto w = find_tagged_witness(scale(x, p), scale(y, q), bounds);
  if (!w) return std::nullopt;
  return LeqMResult{p, q, std::move(*w)};
}

std::vector<Leq0Entry> check_leq_0(const TaggedSet& x, const TaggedSet& y, u64 m_max,
                                   const SearchBounds& bounds) {
  std::vector<Leq0Entry> out;
  std::vector<DefSet> empty_parts, full_parts = x.parts;
  for (const DefSet& s : x.parts) empty_parts.push_back(DefSet::empty(s.universe()));
  for (u64 m = 1; m <= m_max; ++m) {
    Leq0Entry e;
    e.m = m;
    if (auto rest = find_tagged_witness(x, y, bounds)) {
      e.x0 = empty_parts;
      e.rest = std::move(*rest);
      out.push_back(std::move(e));
      continue;
    }
    if (auto self = check_leq_m(x, x, Rat(i64(m)), bounds)) {
      e.x0 = full_parts;
      e.x0_full = true;
      e.self = std::move(*self);
      out.push_back(std::move(e));
    }
  }
  return out;
}

// --- cancellation ------------------------------------------------------

namespace {

// Working side-by-side encoding: left element a at 2a, right element b at
// 2b+1. On the naturals the working universe is the base universe itself;
// finite universes get a fresh one of double size.
struct SideEncoding {
  UniversePtr base, work;

  explicit SideEncoding(const UniversePtr& b) : base(b) {
    work = b->ground() == Ground::finite ? Universe::finite(2 * b->size(), {}) : b;
  }

  DefSet left(const DefSet& s) const { return shift(s, 0); }
  DefSet right(const DefSet& s) const { return shift(s, 1); }

  DefSet shift(const DefSet& s, u64 off) const {
    if (base->ground() == Ground::finite) {
      std::vector<u64> xs;
      for (u64 v : s.enumerate_window(base->size())) xs.push_back(2 * v + off);
      return DefSet::of(work, xs);
    }
    PartialIso enc = make_iso(work, RatAffine{2, i64(off), 1}, DefSet::full(work));
    PeriodicForm pf = s.periodic_form();
    return image(enc, DefSet::from_data(work, SetData{pf}));
  }

  DefSet unshift_left(const DefSet& s) const {
    if (base->ground() == Ground::finite) {
      std::vector<u64> xs;
      for (u64 v : s.enumerate_window(work->size()))
        if (v % 2 == 0) xs.push_back(v / 2);
      return DefSet::of(base, xs);
    }
    PartialIso dec = make_iso(work, RatAffine{1, 0, 2}, s);
    PeriodicForm pf = image(dec, s).periodic_form();
    return DefSet::from_data(base, SetData{pf});
  }

  // left-to-right working map from a base-level map
  PartialIso lift(const PartialIso& f, const DefSet& base_dom) const {
    if (base->ground() == Ground::finite) {
      TableRule t;
      t.fwd.assign(work->size(), -1);
      std::vector<u64> xs;
      for (u64 v : base_dom.enumerate_window(base->size())) {
        t.fwd[2 * v] = i64(2 * *f.apply(v) + 1);
        xs.push_back(2 * v);
      }
      return make_iso(work, std::move(t), DefSet::of(work, xs), f.word);
    }
    PartialIso dec = make_iso(work, RatAffine{1, 0, 2}, left(base_dom));
    PartialIso enc = make_iso(work, RatAffine{2, 1, 1}, DefSet::full(work));
    PartialIso lifted = compose(enc, compose(restrict(f, base_dom), dec));
    lifted.word = f.word;
    return lifted;
  }
};

}  // namespace

CancellationOutput cancel(const DefSet& A, const DefSet& B, u64 k, const TaggedWitness& theta,
                          const Rat& m, u64 window, u64 max_nodes) {
  if (k == 0) throw hypothesis_error("cancel: k must be positive");
  if (theta.source.parts.size() != k || theta.target.parts.size() != k)
    throw hypothesis_error("cancel: witness is not between k copies");
  for (u64 t = 0; t < k; ++t)
    if (!(theta.source.parts[t] == A) || !(theta.target.parts[t] == B))
      throw hypothesis_error("cancel: witness copies do not match A and B");
  WitnessReport vr = verify_tagged(theta);
  if (!vr.valid) throw hypothesis_error("cancel: input witness invalid: " + vr.problems.front());

  CancellationOutput out;
  out.Y0 = DefSet::empty(A.universe());
  out.witness = EmbeddingWitness{A, B, {}};
  if (A.is_empty()) {
    out.counting_ok = true;
    return out;
  }

  // overlay of the per-copy partitions: each part knows one theta piece per copy
  std::vector<std::pair<DefSet, std::vector<u32>>> parts{{A, {}}};
  for (u32 copy = 0; copy < k; ++copy) {
    std::vector<std::pair<DefSet, std::vector<u32>>> next;
    for (auto& [set, ids] : parts)
      for (u32 pi = 0; pi < theta.pieces.size(); ++pi) {
        if (theta.pieces[pi].src_tag != copy) continue;
        DefSet hit = set_intersect(set, theta.pieces[pi].set);
        if (hit.is_empty()) continue;
        auto ids2 = ids;
        ids2.push_back(pi);
        next.emplace_back(std::move(hit), std::move(ids2));
      }
    parts = std::move(next);
  }
  // split until any two copy maps agree everywhere or nowhere on each part
  for (size_t i = 0; i < parts.size(); ++i) {
    bool split = false;
    for (u32 a = 0; a < k && !split; ++a)
      for (u32 b = a + 1; b < k && !split; ++b) {
        DefSet eq = set_intersect(equalizer(theta.pieces[parts[i].second[a]].iso,
                                            theta.pieces[parts[i].second[b]].iso),
                                  parts[i].first);
        if (eq.is_empty() || eq == parts[i].first) continue;
        parts.emplace_back(set_difference(parts[i].first, eq), parts[i].second);
        parts[i].first = std::move(eq);
        split = true;
      }
    if (split) --i;  // recheck the shrunk part
  }

  SideEncoding enc(A.universe());
  struct BaseEntry {
    PartialIso map;  // base-level, restricted to the part
    u32 i, j;
    u32 mult;
  };
  std::vector<DefSet> h_pieces;
  std::vector<std::vector<FamilyEntry>> h_families;
  std::vector<std::vector<BaseEntry>> h_base;
  for (auto& [set, ids] : parts) {
    std::vector<BaseEntry> entries;
    for (u32 copy = 0; copy < k; ++copy) {
      const TaggedPiece& tp = theta.pieces[ids[copy]];
      PartialIso f = restrict(tp.iso, set);
      f.word = tp.word;
      bool merged = false;
      for (BaseEntry& e : entries)
        if (is_subset(set, equalizer(e.map, f))) {
          ++e.mult;
          merged = true;
          break;
        }
      if (!merged) entries.push_back({std::move(f), copy, tp.dst_tag, 1});
    }
    std::vector<FamilyEntry> fam;
    for (const BaseEntry& e : entries)
      fam.push_back({enc.lift(e.map, set), e.mult});
    h_pieces.push_back(enc.left(set));
    h_families.push_back(std::move(fam));
    h_base.push_back(std::move(entries));
  }
  NiceGraph h = make_graph(enc.work, std::move(h_pieces), enc.right(B), std::move(h_families));
  ValidationReport hv = validate_graph(h);
  if (!hv.ok) throw hypothesis_error("cancel: representative graph invalid: " + hv.problems.front());
  if (!is_k_regular_in_a(h, k) || !b_degree_at_most(h, k))
    throw hypothesis_error("cancel: representative graph violates the degree hypothesis");

  SymbolicMatching match;
  if (k == 1) {
    for (u32 p = 0; p < h.pieces.size(); ++p) match.add(p, 0, h.pieces[p]);
    ValidationReport mv = validate_matching(h, match);
    if (!mv.ok) throw std::logic_error("cancel: 1-regular family is not a matching");
    out.K = 1;
  } else {
    CoverageReport rep = match_with_defect(h, m, Variant::multigraph, NmReading::matched,
                                           nullptr, window, max_nodes);
    match = rep.matching;
    out.K = rep.K;
    out.stats = rep.stats;
  }

  DefSet covered = covered_a(h, match);
  out.Y0 = enc.unshift_left(set_difference(a_side(h), covered));
  for (const MatchPart& p : match.parts()) {
    const BaseEntry& be = h_base[p.piece][p.entry];
    CancelEntry e;
    e.i = be.i;
    e.j = be.j;
    e.C = enc.unshift_left(p.domain);
    e.D = image(be.map, e.C);
    e.word = be.map.word;
    out.witness.pieces.push_back({e.C, e.word, be.map});
    out.entries.push_back(std::move(e));
  }
  out.witness.source = set_difference(A, out.Y0);
  WitnessReport wr = verify_witness(out.witness);
  if (!wr.valid) throw std::logic_error("cancel: assembled witness invalid: " + wr.problems.front());

  out.counting_exact = A.universe()->ground() == Ground::finite;
  if (out.counting_exact)
    out.counting_ok = m * i64(*out.Y0.cardinality()) <= Rat(i64(*A.cardinality()));
  else
    out.counting_ok =
        m * i64(out.Y0.enumerate_window(window).size()) <= Rat(i64(A.enumerate_window(window).size()));
  return out;
}

// --- k to 2 reduction --------------------------------------------------

std::vector<TwoFromKResult> two_from_k(const DefSet& x, const TaggedWitness& w, u64 m_max,
                                       u64 window, u64 max_nodes) {
  const UniversePtr& u = x.universe();
  if (u->ground() != Ground::naturals)
    throw hypothesis_error("two_from_k: needs the naturals backend");
  u64 n = w.target.parts.size();
  if (w.source.parts.size() != n + 1)
    throw hypothesis_error("two_from_k: witness must map n+1 copies into n");
  for (const DefSet& s : w.source.parts)
    if (!(s == x)) throw hypothesis_error("two_from_k: source copies must equal X");
  for (const DefSet& s : w.target.parts)
    if (!(s == x)) throw hypothesis_error("two_from_k: target copies must equal X");
  WitnessReport vr = verify_tagged(w);
  if (!vr.valid) throw hypothesis_error("two_from_k: input invalid: " + vr.problems.front());

  // v_j: (n+j)X <= nX; v_{j+1} = v_j after (w + identity on (j-1)X)
  TaggedWitness v = w;
  for (u64 j = 1; j < n; ++j) {
    TaggedWitness step = tagged_sum_witness(w, identity_tagged(tagged(x, j)));
    v = compose_tagged(step, v);
  }

  // regroup the 2n source copies as n copies of 2X = {2x} u {2x+1}:
  // source tag t = 2i+s becomes copy i, half s
  PartialIso enc0 = make_iso(u, RatAffine{2, 0, 1}, DefSet::full(u));
  PartialIso enc1 = make_iso(u, RatAffine{2, 1, 1}, DefSet::full(u));
  DefSet double_x = set_union(image(enc0, x), image(enc1, x));
  TaggedWitness theta{tagged(double_x, n), tagged(x, n), {}};
  for (const TaggedPiece& p : v.pieces) {
    u32 i = p.src_tag / 2, s = p.src_tag % 2;
    const PartialIso& e = s == 0 ? enc0 : enc1;
    DefSet lifted = image(e, p.set);
    PartialIso dec = make_iso(u, RatAffine{1, -i64(s), 2}, lifted,
                              {IsoLetter{s == 0 ? "dec0" : "dec1", 1}});
    TaggedPiece np{i, lifted, word_concat(dec.word, p.word), p.dst_tag, compose(p.iso, dec)};
    theta.pieces.push_back(std::move(np));
  }
  WitnessReport tr = verify_tagged(theta);
  if (!tr.valid) throw std::logic_error("two_from_k: regrouped witness invalid: " + tr.problems.front());

  std::vector<TwoFromKResult> out;
  for (u64 m = 1; m <= m_max; ++m)
    out.push_back({m, cancel(double_x, x, n, theta, Rat(i64(m)), window, max_nodes)});
  return out;
}

// --- verdict -----------------------------------------------------------

namespace {

bool counting_regime(const UniversePtr& u, u64 trials, Rng& rng,
                     MeasureDescription& desc) {
  if (u->ground() != Ground::finite || u->generators().empty()) return false;
  for (const auto& [label, g] : u->generators()) {
    if (!std::holds_alternative<GeneratorSpec::Table>(g.rule)) return false;
    const auto& pairs = std::get<GeneratorSpec::Table>(g.rule).pairs;
    if (pairs.size() != u->size() || g.domain) return false;  // total
    std::vector<char> hit(u->size(), 0);
    for (auto [a, b] : pairs) hit[b] = 1;
    for (char c : hit)
      if (!c) return false;  // onto
  }
  for (u64 t = 0; t < trials; ++t) {
    std::vector<u64> xs;
    for (u64 v = 0; v < u->size(); ++v)
      if (rng.coin()) xs.push_back(v);
    DefSet s = DefSet::of(u, xs);
    for (const auto& [label, g] : u->generators()) {
      PartialIso f = letter_iso(u, {label, 1});
      if (*image(f, s).cardinality() != *s.cardinality()) return false;
    }
  }
  desc.kind = "counting";
  desc.checked_sets = trials;
  return true;
}

bool density_regime(const UniversePtr& u, u64 trials, Rng& rng, MeasureDescription& desc) {
  if (u->ground() != Ground::naturals || u->generators().empty()) return false;
  for (const auto& [label, g] : u->generators()) {
    if (!std::holds_alternative<GeneratorSpec::Affine>(g.rule)) return false;
    if (std::get<GeneratorSpec::Affine>(g.rule).a != 1) return false;  // translations only
  }
  for (u64 t = 0; t < trials; ++t) {
    u64 P = 1 + rng.below(12);
    u64 T = rng.below(20);
    std::vector<u64> R, E;
    for (u64 r = 0; r < P; ++r)
      if (rng.coin()) R.push_back(r);
    for (u64 x = 0; x < T; ++x)
      if (rng.coin()) E.push_back(x);
    DefSet s = DefSet::eventually_periodic(u, T, P, R, E);
    for (const auto& [label, g] : u->generators()) {
      PartialIso f = letter_iso(u, {label, 1});
      DefSet sd = set_intersect(s, f.dom);
      if (image(f, sd).density() != sd.density()) return false;
    }
  }
  desc.kind = "density";
  desc.checked_sets = trials;
  return true;
}

}  // namespace

TarskiVerdict tarski_verdict(const DefSet& x, const SearchBounds& bounds, Rng& rng) {
  TarskiVerdict v;
  TaggedSet two_x = tagged(x, 2), one_x = tagged(x, 1);
  std::vector<Leq0Entry> entries = check_leq_0(two_x, one_x, 3, bounds);
  std::optional<Leq0Entry> at3;
  for (Leq0Entry& e : entries)
    if (e.m == 3) at3 = std::move(e);

  MeasureDescription desc;
  bool measurable = counting_regime(x.universe(), 100, rng, desc) ||
                    density_regime(x.universe(), 100, rng, desc);

  if (at3 && measurable)
    throw std::logic_error("tarski_verdict: paradox witness found in a measure regime");
  if (at3) {
    ParadoxBundle b;
    b.m = 3;
    if (at3->self) {
      b.p = at3->self->p;
      b.q = at3->self->q;
    } else {
      b.p = 3;
      b.q = 1;
    }
    b.mu_x0_max = Rat(2 * i64(b.q), i64(b.p));
    b.mu_rest_min = Rat(2) - b.mu_x0_max;
    if (!(b.mu_rest_min > Rat(1)))
      throw std::logic_error("tarski_verdict: obstruction arithmetic failed");
    b.entry = std::move(*at3);
    v.kind = VerdictKind::Paradoxical;
    v.paradox = std::move(b);
    return v;
  }
  if (measurable) {
    v.kind = VerdictKind::MeasureCandidate;
    v.measure = desc;
  }
  return v;
}

}  // namespace defmatch
