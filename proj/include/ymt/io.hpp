#pragma once
// JSON and CSV emission. Doubles go through nlohmann's shortest round-trip
// printing; rationals are "p/q" strings.

#include <json.hpp>

#include <string>
#include <vector>

#include "ymt/category.hpp"
#include "ymt/scalar_poly.hpp"

namespace ymt::io {

using json = nlohmann::json;

inline constexpr const char* version = "0.4.0";

/// Rejects keys outside `allowed`.
void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what);

json to_json(const Mat& m);
Mat mat_from_json(const json& j);
json to_json(const CMat& m);  // [[re, im], ...] row-major with shape
CMat cmat_from_json(const json& j);

json to_json(const Lattice& lat);
LatticePtr lattice_from_json(const json& j);
/// Catalog name, or {"name", "dim", "c": [[i, j, k, value], ...]}.
AlgebraPtr algebra_from_json(const json& j);
json algebra_to_json(const AlgebraPtr& a);
GroupEmbedding embedding_from_name(const std::string& name);

/// {"kind": "killing"} or {"kind": "matrix", "algebra_form", "form2"?, "forms"?}.
/// Custom pairings carry code and cannot be serialized.
json to_json(const PairingSpec& p);
PairingSpec pairing_from_json(const json& j, LatticePtr lat, AlgebraPtr alg);
json to_json(const YMTTheory& t);
YMTTheory theory_from_json(const json& j);

json to_json(const LinkField& u);
LinkField links_from_json(const json& j, LatticePtr lat, AlgebraPtr alg);
json to_json(const AlgebraCochain1& d);
AlgebraCochain1 cochain1_from_json(const json& j, LatticePtr lat, AlgebraPtr alg);
json to_json(const AlgebraCochain2& w);
AlgebraCochain2 cochain2_from_json(const json& j, LatticePtr lat, AlgebraPtr alg);
json to_json(const VertexSection& s);
VertexSection section_from_json(const json& j, LatticePtr lat, AlgebraPtr alg);

json to_json(const SampledDomain& d);
SampledDomain domain_from_json(const json& j);

json to_json(const ExtensionReport& r);
json to_json(const Extension& e, bool with_report = true);
Extension extension_from_json(const json& j);

/// Source and target are stored as references (file names) chosen by the caller.
json to_json(const ExtMorphism& m, const std::string& source_ref, const std::string& target_ref);
json to_json(const MorphismReport& r);
json to_json(const Classification& c);
json to_json(const ProbeReport& p);
json to_json(const TerminalReport& r);

json to_json(const RankBound& b);
std::string low_rank_csv(const std::vector<LowRankPoint>& pts);

json to_json(const ScalarPolynomial& p);
json to_json(const RootSet& r);
json to_json(const GaugeReport& r);

/// Envelope {"tool", "version", "command", "seed", <key>: payload}.
json envelope(const std::string& command, std::uint64_t seed, const std::string& key, json payload);
/// Comment header for CSV files.
std::string csv_header(const std::string& command, std::uint64_t seed);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Accepts a bare extension object or an envelope with an "extension" key.
Extension read_extension(const std::string& path);

}  // namespace ymt::io
