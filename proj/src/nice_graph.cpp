#include "defmatch/nice_graph.hpp"

#include <algorithm>
#include <map>

namespace defmatch {

NiceGraph make_graph(const UniversePtr& u, std::vector<DefSet> pieces, DefSet B,
                     std::vector<std::vector<FamilyEntry>> families) {
  if (pieces.size() != families.size())
    throw hypothesis_error("make_graph: one family per piece required");
  NiceGraph g;
  g.u = u;
  g.pieces = std::move(pieces);
  g.B = std::move(B);
  g.families = std::move(families);
  return g;
}

NiceGraph make_graph_words(const UniversePtr& u, std::vector<DefSet> pieces, DefSet B,
                           const std::vector<std::vector<IsoWord>>& words,
                           const std::vector<std::vector<u32>>& multiplicities) {
  std::vector<std::vector<FamilyEntry>> families(words.size());
  for (size_t i = 0; i < words.size(); ++i)
    for (size_t j = 0; j < words[i].size(); ++j) {
      u32 mult = multiplicities.empty() ? 1 : multiplicities[i][j];
      families[i].push_back({realize(u, words[i][j]), mult});
    }
  return make_graph(u, std::move(pieces), std::move(B), std::move(families));
}

ValidationReport validate_graph(const NiceGraph& g) {
  ValidationReport r;
  auto tag = [](size_t i, size_t j) {
    return "piece " + std::to_string(i) + " entry " + std::to_string(j);
  };
  for (size_t i = 0; i < g.pieces.size(); ++i) {
    if (g.pieces[i].is_empty()) r.fail("piece " + std::to_string(i) + " is empty");
    for (size_t j = i + 1; j < g.pieces.size(); ++j)
      if (!disjoint(g.pieces[i], g.pieces[j]))
        r.fail("pieces " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    if (!disjoint(g.pieces[i], g.B))
      r.fail("piece " + std::to_string(i) + " meets the right side");
  }
  for (size_t i = 0; i < g.families.size(); ++i) {
    const auto& fam = g.families[i];
    if (fam.empty()) r.fail("piece " + std::to_string(i) + " has no maps");
    for (size_t j = 0; j < fam.size(); ++j) {
      if (fam[j].multiplicity == 0) r.fail(tag(i, j) + " has multiplicity 0");
      if (!is_subset(g.pieces[i], fam[j].map.dom)) r.fail(tag(i, j) + " not total on its piece");
      else if (!is_subset(image(fam[j].map, g.pieces[i]), g.B))
        r.fail(tag(i, j) + " maps outside the right side");
      for (size_t l = j + 1; l < fam.size(); ++l) {
        DefSet eq = set_intersect(equalizer(fam[j].map, fam[l].map), g.pieces[i]);
        if (!eq.is_empty())
          r.fail(tag(i, j) + " and entry " + std::to_string(l) + " agree somewhere");
      }
    }
  }
  return r;
}

DefSet a_side(const NiceGraph& g) {
  DefSet a = DefSet::empty(g.u);
  for (const DefSet& p : g.pieces) a = set_union(a, p);
  return a;
}

std::vector<std::pair<u64, DefSet>> degree_partition_b(const NiceGraph& g) {
  std::map<u64, DefSet> classes;
  classes.emplace(0, g.B);
  for (size_t i = 0; i < g.families.size(); ++i)
    for (const FamilyEntry& e : g.families[i]) {
      DefSet img = image(e.map, g.pieces[i]);
      std::map<u64, DefSet> next;
      auto put = [&](u64 d, DefSet s) {
        if (s.is_empty()) return;
        auto it = next.find(d);
        if (it == next.end())
          next.emplace(d, std::move(s));
        else
          it->second = set_union(it->second, s);
      };
      for (auto& [d, s] : classes) {
        put(d + e.multiplicity, set_intersect(s, img));
        put(d, set_difference(s, img));
      }
      classes = std::move(next);
    }
  return {classes.begin(), classes.end()};
}

bool is_k_regular_in_a(const NiceGraph& g, u64 k) {
  for (const auto& fam : g.families) {
    u64 sum = 0;
    for (const FamilyEntry& e : fam) sum += e.multiplicity;
    if (sum != k) return false;
  }
  return true;
}

bool b_degree_at_most(const NiceGraph& g, u64 k) {
  for (const auto& [d, s] : degree_partition_b(g))
    if (d > k && !s.is_empty()) return false;
  return true;
}

Refinement refine_pieces(const NiceGraph& g, const DefSet& s) {
  Refinement out;
  out.graph.u = g.u;
  out.graph.B = g.B;
  for (size_t i = 0; i < g.pieces.size(); ++i) {
    for (DefSet part : {set_intersect(g.pieces[i], s), set_difference(g.pieces[i], s)}) {
      if (part.is_empty()) continue;
      out.graph.pieces.push_back(std::move(part));
      out.graph.families.push_back(g.families[i]);
      out.parent.push_back(u32(i));
    }
  }
  return out;
}

ExplicitExpansion explicit_expand(const NiceGraph& g, u64 window) {
  if (g.u->ground() == Ground::finite) window = std::min(window, g.u->size());
  ExplicitExpansion x;
  x.a_id_of.assign(window, -1);
  x.b_id_of.assign(window, -1);
  auto& eg = x.graph;
  for (u32 i = 0; i < g.pieces.size(); ++i)
    for (u64 v : g.pieces[i].enumerate_window(window)) {
      x.a_id_of[v] = eg.na;
      eg.a_val.push_back(v);
      x.a_piece.push_back(i);
      ++eg.na;
    }
  for (u64 v : g.B.enumerate_window(window)) {
    x.b_id_of[v] = eg.nb;
    eg.b_val.push_back(v);
    ++eg.nb;
  }
  eg.adj.resize(eg.na);
  eg.a_flag.assign(eg.na, 0);
  eg.b_flag.assign(eg.nb, 0);
  std::vector<std::vector<PartialIso>> inv(g.families.size());
  for (size_t i = 0; i < g.families.size(); ++i)
    for (const FamilyEntry& e : g.families[i]) inv[i].push_back(invert(e.map));
  for (int a = 0; a < eg.na; ++a) {
    u64 v = eg.a_val[a];
    const auto& fam = g.families[x.a_piece[a]];
    for (u32 j = 0; j < fam.size(); ++j) {
      auto y = fam[j].map.apply(v);
      if (!y) throw std::logic_error("explicit_expand: map not total on piece");
      if (*y < window)
        eg.adj[a].push_back({int(x.b_id_of[*y]), int(j)});
      else
        eg.a_flag[a] = 1;
    }
  }
  for (int b = 0; b < eg.nb; ++b) {
    u64 v = eg.b_val[b];
    for (size_t i = 0; i < g.families.size() && !eg.b_flag[b]; ++i)
      for (size_t j = 0; j < g.families[i].size(); ++j) {
        auto xsrc = inv[i][j].apply(v);
        if (xsrc && *xsrc >= window && g.pieces[i].contains(*xsrc)) {
          eg.b_flag[b] = 1;
          break;
        }
      }
  }
  return x;
}

}  // namespace defmatch
