#include "defmatch/json_io.hpp"

#include <algorithm>

namespace defmatch {

namespace {

u64 get_u64(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_unsigned())
    throw parse_error(std::string("expected unsigned field \"") + key + "\"");
  return j[key].get<u64>();
}

std::vector<u64> get_u64_array(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of naturals");
  std::vector<u64> out;
  for (const Json& v : j) {
    if (!v.is_number_unsigned()) throw parse_error("expected an array of naturals");
    out.push_back(v.get<u64>());
  }
  return out;
}

Json periodic_to_json(const PeriodicForm& pf) {
  return Json{{"T", pf.T}, {"P", pf.P}, {"R", pf.R}, {"exceptional", pf.E}};
}

PeriodicForm periodic_from_json(const Json& j) {
  PeriodicForm pf;
  pf.T = get_u64(j, "T");
  pf.P = get_u64(j, "P");
  pf.R = get_u64_array(j.contains("R") ? j["R"] : Json::array());
  pf.E = get_u64_array(j.contains("exceptional") ? j["exceptional"] : Json::array());
  return pf;
}

FiniteBits bits_from_members(const std::vector<u64>& xs, u64 size) {
  FiniteBits fb;
  fb.words.assign((size + 63) / 64, 0);
  for (u64 x : xs) {
    if (x >= size) throw parse_error("set member " + std::to_string(x) + " outside the universe");
    fb.words[x / 64] |= u64(1) << (x % 64);
  }
  return fb;
}

std::vector<u64> members_of_bits(const FiniteBits& fb) {
  std::vector<u64> xs;
  for (u64 w = 0; w < fb.words.size(); ++w)
    for (u64 b = 0; b < 64; ++b)
      if (fb.words[w] >> b & 1) xs.push_back(64 * w + b);
  return xs;
}

}  // namespace

Json data_to_json(const SetData& d, u64) {
  if (const auto* fb = std::get_if<FiniteBits>(&d)) return Json(members_of_bits(*fb));
  return periodic_to_json(std::get<PeriodicForm>(d));
}

SetData data_from_json(const Json& j, Ground ground, u64 finite_size) {
  if (ground == Ground::finite) {
    if (!j.is_array()) throw parse_error("finite set must be a member array");
    return bits_from_members(get_u64_array(j), finite_size);
  }
  if (!j.is_object()) throw parse_error("periodic set must be a T/P/R object");
  return periodic_from_json(j);
}

Json set_to_json(const DefSet& s) {
  if (s.universe()->ground() == Ground::finite)
    return Json(s.enumerate_window(s.universe()->size()));
  return periodic_to_json(s.periodic_form());
}

DefSet set_from_json(const UniversePtr& u, const Json& j) {
  if (u->ground() == Ground::finite) {
    if (!j.is_array()) throw parse_error("finite set must be a member array");
    std::vector<u64> xs = get_u64_array(j);
    for (u64 x : xs)
      if (x >= u->size())
        throw parse_error("set member " + std::to_string(x) + " outside the universe");
    return DefSet::of(u, std::move(xs));
  }
  if (!j.is_object()) throw parse_error("periodic set must be a T/P/R object");
  PeriodicForm pf = periodic_from_json(j);
  return DefSet::eventually_periodic(u, pf.T, pf.P, pf.R, pf.E);
}

Json universe_to_json(const UniversePtr& u) {
  Json gens = Json::array();
  for (const auto& [label, g] : u->generators()) {
    Json gj;
    gj["label"] = label;
    if (const auto* a = std::get_if<GeneratorSpec::Affine>(&g.rule)) {
      gj["kind"] = "affine";
      gj["a"] = a->a;
      gj["b"] = a->b;
    } else {
      gj["kind"] = "table";
      Json pairs = Json::array();
      for (auto [x, y] : std::get<GeneratorSpec::Table>(g.rule).pairs)
        pairs.push_back(Json::array({x, y}));
      gj["pairs"] = std::move(pairs);
    }
    if (g.domain) gj["domain"] = data_to_json(*g.domain, u->size());
    gens.push_back(std::move(gj));
  }
  Json out;
  if (u->ground() == Ground::finite) {
    out["kind"] = "finite";
    out["size"] = u->size();
  } else {
    out["kind"] = "affine_nat";
  }
  out["generators"] = std::move(gens);
  return out;
}

UniversePtr universe_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("universe needs a \"kind\" of finite or affine_nat");
  std::string kind = j["kind"].get<std::string>();
  bool finite = kind == "finite";
  if (!finite && kind != "affine_nat")
    throw parse_error("unknown universe kind \"" + kind + "\"");
  u64 size = finite ? get_u64(j, "size") : 0;
  std::vector<GeneratorSpec> gens;
  for (const Json& gj : j.contains("generators") ? j["generators"] : Json::array()) {
    if (!gj.contains("label") || !gj["label"].is_string())
      throw parse_error("generator needs a string \"label\"");
    std::string label = gj["label"].get<std::string>();
    std::string gk = gj.contains("kind") && gj["kind"].is_string()
                         ? gj["kind"].get<std::string>()
                         : std::string();
    std::variant<GeneratorSpec::Affine, GeneratorSpec::Table> rule;
    if (gk == "affine") {
      rule = GeneratorSpec::Affine{get_u64(gj, "a"), get_u64(gj, "b")};
    } else if (gk == "table") {
      GeneratorSpec::Table t;
      if (!gj.contains("pairs") || !gj["pairs"].is_array())
        throw parse_error("table generator needs \"pairs\"");
      for (const Json& p : gj["pairs"]) {
        if (!p.is_array() || p.size() != 2)
          throw parse_error("table pair must be [source, target]");
        t.pairs.emplace_back(p[0].get<u64>(), p[1].get<u64>());
      }
      rule = std::move(t);
    } else {
      throw parse_error("generator \"" + label + "\" needs kind affine or table");
    }
    std::optional<SetData> domain;
    if (gj.contains("domain"))
      domain = data_from_json(gj["domain"], finite ? Ground::finite : Ground::naturals, size);
    gens.push_back({std::move(label), std::move(rule), std::move(domain)});
  }
  return finite ? Universe::finite(size, std::move(gens)) : Universe::naturals(std::move(gens));
}

Json word_to_json(const IsoWord& w) {
  Json out = Json::array();
  for (const IsoLetter& l : w) out.push_back(Json::array({l.label, l.sign}));
  return out;
}

IsoWord word_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("word must be an array of [label, sign] pairs");
  IsoWord w;
  for (const Json& l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_number_integer())
      throw parse_error("word letter must be [label, sign]");
    int sign = l[1].get<int>();
    if (sign != 1 && sign != -1) throw parse_error("letter sign must be 1 or -1");
    w.push_back({l[0].get<std::string>(), sign});
  }
  return w;
}

Json graph_to_json(const NiceGraph& g) {
  Json out;
  out["universe"] = universe_to_json(g.u);
  Json pieces = Json::array();
  for (const DefSet& p : g.pieces) pieces.push_back(set_to_json(p));
  out["pieces"] = std::move(pieces);
  out["B"] = set_to_json(g.B);
  Json families = Json::array();
  bool any_mult = false;
  Json mult = Json::array();
  for (const auto& fam : g.families) {
    Json words = Json::array(), ms = Json::array();
    for (const FamilyEntry& e : fam) {
      words.push_back(word_to_json(e.map.word));
      ms.push_back(e.multiplicity);
      any_mult = any_mult || e.multiplicity != 1;
    }
    families.push_back(std::move(words));
    mult.push_back(std::move(ms));
  }
  out["families"] = std::move(families);
  if (any_mult) out["multiplicity"] = std::move(mult);
  return out;
}

NiceGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("universe") || !j.contains("pieces") || !j.contains("B") ||
      !j.contains("families"))
    throw parse_error("graph needs universe, pieces, B and families");
  UniversePtr u = universe_from_json(j["universe"]);
  std::vector<DefSet> pieces;
  for (const Json& p : j["pieces"]) pieces.push_back(set_from_json(u, p));
  DefSet B = set_from_json(u, j["B"]);
  std::vector<std::vector<IsoWord>> words;
  for (const Json& fam : j["families"]) {
    std::vector<IsoWord> fw;
    for (const Json& w : fam) fw.push_back(word_from_json(w));
    words.push_back(std::move(fw));
  }
  std::vector<std::vector<u32>> mult;
  if (j.contains("multiplicity"))
    for (const Json& ms : j["multiplicity"]) {
      std::vector<u32> row;
      for (const Json& m : ms) row.push_back(m.get<u32>());
      mult.push_back(std::move(row));
    }
  if (words.size() != pieces.size())
    throw parse_error("family count does not match piece count");
  return make_graph_words(u, std::move(pieces), std::move(B), words, mult);
}

Json matching_to_json(const NiceGraph& g, const SymbolicMatching& m) {
  Json out = Json::array();
  for (const MatchPart& p : m.parts()) {
    Json e;
    e["piece"] = p.piece;
    e["word"] = word_to_json(g.map_of(p.piece, p.entry).word);
    e["domain"] = set_to_json(p.domain);
    out.push_back(std::move(e));
  }
  return out;
}

SymbolicMatching matching_from_json(const NiceGraph& g, const Json& j) {
  if (!j.is_array()) throw parse_error("matching must be an array of parts");
  SymbolicMatching m;
  for (const Json& e : j) {
    u64 piece = get_u64(e, "piece");
    if (piece >= g.pieces.size()) throw parse_error("matching names a missing piece");
    if (!e.contains("word") || !e.contains("domain"))
      throw parse_error("matching part needs word and domain");
    IsoWord w = free_reduce(word_from_json(e["word"]));
    const auto& fam = g.families[piece];
    u32 entry = u32(fam.size());
    for (u32 i = 0; i < fam.size(); ++i)
      if (free_reduce(fam[i].map.word) == w) {
        entry = i;
        break;
      }
    if (entry == fam.size())
      throw parse_error("matching word " + word_str(w) + " is not in piece " +
                        std::to_string(piece) + "'s family");
    m.add(u32(piece), entry, set_from_json(g.u, e["domain"]));
  }
  return m;
}

Json witness_to_json(const EmbeddingWitness& w) {
  Json out;
  out["source"] = set_to_json(w.source);
  out["target"] = set_to_json(w.target);
  Json pieces = Json::array();
  for (const WitnessPiece& p : w.pieces) {
    Json pj;
    pj["set"] = set_to_json(p.set);
    pj["word"] = word_to_json(p.word);
    pieces.push_back(std::move(pj));
  }
  out["pieces"] = std::move(pieces);
  return out;
}

EmbeddingWitness witness_from_json(const UniversePtr& u, const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("pieces"))
    throw parse_error("witness needs source, target and pieces");
  EmbeddingWitness w{set_from_json(u, j["source"]), set_from_json(u, j["target"]), {}};
  for (const Json& pj : j["pieces"]) {
    if (!pj.contains("set") || !pj.contains("word"))
      throw parse_error("witness piece needs set and word");
    IsoWord word = word_from_json(pj["word"]);
    w.pieces.push_back({set_from_json(u, pj["set"]), word, realize(u, word)});
  }
  return w;
}

Json tagged_witness_to_json(const TaggedWitness& w) {
  Json out;
  Json src = Json::array(), tgt = Json::array();
  for (const DefSet& s : w.source.parts) src.push_back(set_to_json(s));
  for (const DefSet& s : w.target.parts) tgt.push_back(set_to_json(s));
  out["source"] = std::move(src);
  out["target"] = std::move(tgt);
  Json pieces = Json::array();
  for (const TaggedPiece& p : w.pieces) {
    Json pj;
    pj["src_copy"] = p.src_tag;
    pj["set"] = set_to_json(p.set);
    pj["word"] = word_to_json(p.word);
    pj["dst_copy"] = p.dst_tag;
    pieces.push_back(std::move(pj));
  }
  out["pieces"] = std::move(pieces);
  return out;
}

TaggedWitness tagged_witness_from_json(const UniversePtr& u, const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("pieces"))
    throw parse_error("tagged witness needs source, target and pieces");
  TaggedWitness w{{u, {}}, {u, {}}, {}};
  for (const Json& s : j["source"]) w.source.parts.push_back(set_from_json(u, s));
  for (const Json& s : j["target"]) w.target.parts.push_back(set_from_json(u, s));
  for (const Json& pj : j["pieces"]) {
    u64 st = get_u64(pj, "src_copy"), dt = get_u64(pj, "dst_copy");
    if (st >= w.source.parts.size() || dt >= w.target.parts.size())
      throw parse_error("tagged witness piece names a missing copy");
    IsoWord word = word_from_json(pj["word"]);
    w.pieces.push_back({u32(st), set_from_json(u, pj["set"]), word, u32(dt), realize(u, word)});
  }
  return w;
}

}  // namespace defmatch
