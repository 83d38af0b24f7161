#include "defmatch/presets.hpp"

#include <algorithm>

namespace defmatch {

namespace {

GeneratorSpec affine_gen(std::string label, u64 a, u64 b) {
  return {std::move(label), GeneratorSpec::Affine{a, b}, std::nullopt};
}

GeneratorSpec table_gen(std::string label, std::vector<std::pair<u64, u64>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  return {std::move(label), GeneratorSpec::Table{std::move(pairs)}, std::nullopt};
}

IsoWord w(const std::string& label, int sign = 1) { return {IsoLetter{label, sign}}; }

}  // namespace

UniversePtr preset_universe(const std::string& name, u64 size) {
  if (name == "one-ended-path") return Universe::naturals({affine_gen("s1", 1, 1)});
  if (name == "hilbert-hotel")
    return Universe::naturals({affine_gen("d0", 2, 0), affine_gen("d1", 2, 1),
                               affine_gen("t1", 1, 1), affine_gen("t3", 1, 3)});
  if (name == "four-cycle")
    return Universe::finite(4, {table_gen("f", {{0, 2}, {1, 3}}), table_gen("g", {{0, 3}, {1, 2}})});
  if (name == "finite-rotation") {
    if (size < 2) throw hypothesis_error("finite-rotation needs size >= 2");
    std::vector<std::pair<u64, u64>> rot, refl;
    for (u64 x = 0; x < size; ++x) {
      rot.emplace_back(x, (x + 1) % size);
      refl.emplace_back(x, size - 1 - x);
    }
    return Universe::finite(size, {table_gen("r", std::move(rot)), table_gen("s", std::move(refl))});
  }
  throw hypothesis_error("unknown preset \"" + name + "\"");
}

NiceGraph preset_graph(const std::string& name) {
  UniversePtr u = preset_universe(name);
  if (name == "one-ended-path") {
    // path 0-1-2-...: evens on the left, odds on the right; 0 has one
    // neighbor, every other even vertex two
    std::vector<DefSet> pieces{DefSet::of(u, {0}), DefSet::progression(u, 2, 2)};
    return make_graph_words(u, std::move(pieces), DefSet::progression(u, 1, 2),
                            {{w("s1")}, {w("s1"), w("s1", -1)}});
  }
  if (name == "hilbert-hotel")
    return make_graph_words(u, {DefSet::progression(u, 0, 2)}, DefSet::progression(u, 1, 2),
                            {{w("t1"), w("t3")}});
  if (name == "four-cycle")
    return make_graph_words(u, {DefSet::of(u, {0, 1})}, DefSet::of(u, {2, 3}),
                            {{w("f"), w("g")}});
  throw hypothesis_error("preset \"" + name + "\" has no graph");
}

std::vector<std::string> preset_graph_names() {
  return {"four-cycle", "hilbert-hotel", "one-ended-path"};
}

std::vector<std::string> preset_universe_names() {
  return {"finite-rotation", "four-cycle", "hilbert-hotel", "one-ended-path"};
}

NiceGraph gen_finite_regular(u64 n, u64 k, Rng& rng) {
  if (k < 2 || n < 3 || k > n) throw hypothesis_error("gen_finite_regular needs 3 <= k <= n or k = 2");
  std::vector<std::vector<u64>> maps(k, std::vector<u64>(n));
  if (k == 2) {
    std::vector<u64> pi = rng.permutation(n);
    std::vector<u64> twist;
    do
      twist = rng.permutation(n);
    while (std::ranges::any_of(twist, [&](u64 x) { return twist[x] == x; }));
    for (u64 x = 0; x < n; ++x) {
      maps[0][x] = n + pi[x];
      maps[1][x] = n + pi[twist[x]];
    }
  } else {
    std::vector<u64> rho = rng.permutation(n), pi = rng.permutation(n);
    std::vector<u64> offsets = rng.permutation(n);
    for (u64 c = 0; c < k; ++c)
      for (u64 x = 0; x < n; ++x) maps[c][x] = n + pi[(rho[x] + offsets[c]) % n];
  }
  std::vector<GeneratorSpec> gens;
  std::vector<IsoWord> words;
  for (u64 c = 0; c < k; ++c) {
    std::string label = "m" + std::to_string(c);
    std::vector<std::pair<u64, u64>> pairs;
    for (u64 x = 0; x < n; ++x) pairs.emplace_back(x, maps[c][x]);
    gens.push_back(table_gen(label, std::move(pairs)));
    words.push_back(w(label));
  }
  UniversePtr u = Universe::finite(2 * n, std::move(gens));
  return make_graph_words(u, {DefSet::range(u, 0, n)}, DefSet::range(u, n, 2 * n),
                          {std::move(words)});
}

SymbolicMatching random_matching(const NiceGraph& g, Rng& rng, u32 percent) {
  if (g.u->ground() != Ground::finite)
    throw hypothesis_error("random_matching needs a finite universe");
  SymbolicMatching m;
  std::vector<char> used_b(g.u->size(), 0);
  bool any = false;
  for (u32 pass = 0; pass < 2 && !any; ++pass) {
    // second pass only runs if the coin flips left nothing matched
    for (u32 p = 0; p < g.pieces.size(); ++p)
      for (u64 x : g.pieces[p].enumerate_window(g.u->size())) {
        if (pass == 0 && rng.below(100) >= percent) continue;
        std::vector<u64> order = rng.permutation(g.families[p].size());
        for (u64 e : order) {
          u64 y = *g.map_of(p, u32(e)).apply(x);
          if (used_b[y]) continue;
          used_b[y] = 1;
          m.add(p, u32(e), DefSet::of(g.u, {x}));
          any = true;
          break;
        }
        if (pass == 1 && any) return m;
      }
  }
  return m;
}

TaggedWitness random_theta(const DefSet& A, u64 k, Rng& rng, u32 moves) {
  const UniversePtr& u = A.universe();
  if (u->ground() != Ground::finite) throw hypothesis_error("random_theta needs a finite universe");
  std::vector<PartialIso> all = enumerate_pseudogroup(u, 2);
  std::vector<PartialIso> bijections;
  for (const PartialIso& f : all)
    if (is_subset(A, f.dom) && image(f, A) == A) bijections.push_back(f);

  TaggedWitness theta = identity_tagged(tagged(A, k));
  for (u32 mv = 0; mv < moves; ++mv) {
    switch (rng.below(3)) {
      case 0: {  // split one source copy along a random subset
        u32 copy = u32(rng.below(k));
        std::vector<u64> xs;
        for (u64 x : A.enumerate_window(u->size()))
          if (rng.coin()) xs.push_back(x);
        DefSet s = DefSet::of(u, xs);
        std::vector<TaggedPiece> next;
        for (TaggedPiece& p : theta.pieces) {
          if (p.src_tag != copy) {
            next.push_back(std::move(p));
            continue;
          }
          for (DefSet part : {set_intersect(p.set, s), set_difference(p.set, s)})
            if (!part.is_empty()) next.push_back({p.src_tag, part, p.word, p.dst_tag, p.iso});
        }
        theta.pieces = std::move(next);
        break;
      }
      case 1: {  // compose everything landing in one target copy with a bijection
        if (bijections.empty()) break;
        u32 tag = u32(rng.below(k));
        const PartialIso& tau = bijections[rng.below(bijections.size())];
        for (TaggedPiece& p : theta.pieces)
          if (p.dst_tag == tag) {
            p.iso = compose(tau, p.iso);
            p.word = p.iso.word;
          }
        break;
      }
      default: {  // relabel the target copies
        std::vector<u64> sigma = rng.permutation(k);
        for (TaggedPiece& p : theta.pieces) p.dst_tag = u32(sigma[p.dst_tag]);
        break;
      }
    }
  }
  return theta;
}

}  // namespace defmatch
