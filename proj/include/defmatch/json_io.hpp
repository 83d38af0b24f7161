#pragma once

// JSON round trips for every artifact the CLI reads or writes. Finite sets
// serialize as sorted member arrays, periodic sets as their canonical
// (threshold, period, residues, exceptional) quadruple. Keys come out sorted,
// so equal values produce identical bytes.

#include "defmatch/matching.hpp"
#include "defmatch/semigroup.hpp"

#include <json.hpp>

namespace defmatch {

using Json = nlohmann::json;

// Malformed input artifacts. Distinct from hypothesis_error so the CLI can
// map it to a usage failure.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

Json data_to_json(const SetData& d, u64 finite_size);
SetData data_from_json(const Json& j, Ground ground, u64 finite_size);

Json set_to_json(const DefSet& s);
DefSet set_from_json(const UniversePtr& u, const Json& j);

Json universe_to_json(const UniversePtr& u);
UniversePtr universe_from_json(const Json& j);

Json word_to_json(const IsoWord& w);
IsoWord word_from_json(const Json& j);

Json graph_to_json(const NiceGraph& g);
NiceGraph graph_from_json(const Json& j);

Json matching_to_json(const NiceGraph& g, const SymbolicMatching& m);
// Each entry's word must equal some family entry's word (after reduction).
SymbolicMatching matching_from_json(const NiceGraph& g, const Json& j);

Json witness_to_json(const EmbeddingWitness& w);
// Realizes each piece's word over u; all labels must be registered.
EmbeddingWitness witness_from_json(const UniversePtr& u, const Json& j);

Json tagged_witness_to_json(const TaggedWitness& w);
TaggedWitness tagged_witness_from_json(const UniversePtr& u, const Json& j);

}  // namespace defmatch
