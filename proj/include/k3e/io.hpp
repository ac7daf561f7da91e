#pragma once

#include <string>

#include "json.hpp"
#include "k3e/candidates.hpp"
#include "k3e/census.hpp"
#include "k3e/rank3.hpp"

namespace k3e::io {

using nlohmann::json;

// Every reader throws ParseError on malformed input.
json read_json_file(const std::string& path);
json parse_json(const std::string& text);

json to_json(const Lattice& l);
Lattice lattice_from_json(const json& j);  // {"name", "gram"} or a bare matrix
// A builtin name ("A1^8", "E8(2)+A1"), a JSON file path or inline JSON text.
Lattice load_lattice(const std::string& arg);

json to_json(const Catalog& c);  // array of lattice objects
Catalog catalog_from_json(const json& j, int rank);
Catalog load_catalog(const std::string& path, int rank);

NSLattice ns_from_json(const json& j);  // {"L": {"gram": ...}}
json to_json(const NSLattice& ns);
json to_json(const DivisorClass& c);
DivisorClass divisor_from_json(const json& j, const NSLattice& ns);  // {"x","y","z"} or [α, β, γ...]

json to_json(const NefVerdict& v);
json to_json(const SectionSearch& s);
json to_json(const FibrationClass& f);
json to_json(const Rank3Verdict& v);
json to_json(const Genus1Census& c);
json to_json(const GenusExploration& g);
json to_json(const WitnessSearch& w);
json to_json(const CandidateRecord& r);
json to_json(const CandidateList& l);
json to_json(const OverlatticeCensus& c);
json to_json(const Main10Verdict& v);
json to_json(const AdeRecord& r);

}  // namespace k3e::io
