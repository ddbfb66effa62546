#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sipp/cech.hpp"
#include "sipp/gset.hpp"
#include "sipp/kmodule.hpp"
#include "sipp/rep.hpp"
#include "sipp/sheaf.hpp"

namespace sipp {

using nlohmann::json;

// All parsers throw ParseError on malformed input.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

// {"degree": n, "generators": [[images...], ...]}
GroupPtr parse_group(const json& j);
json group_to_json(const PermGroup& g);
// {"generators": [[images...], ...]}
Subgroup parse_subgroup(const json& j, const GroupPtr& g);
json subgroup_to_json(const Subgroup& h);
// An element key: decimal element index, or cycle notation such as "(0 1)(2 3)".
Elem parse_element(const std::string& key, const PermGroup& g);

// {"size": m, "action_generators": [[images per generator]...]}
GSetPtr parse_gset(const json& j, const GroupPtr& g);
json gset_to_json(const GSet& x);
// {"points": [...]}
GMap parse_gmap(const json& j, const GSetPtr& source, const GSetPtr& target);

// {"invariant_factors": [...]}
AbelianGroupSpec parse_abelian_group(const json& j);
json abelian_group_to_json(const AbelianGroupSpec& a);

FpMatrix parse_matrix(const json& j, std::int64_t field);
json matrix_to_json(const FpMatrix& m);

// {"field": l, "dim": d, "matrices": {element: [[...]]}}. Matrices for every element of H,
// or for a generating set only.
KModule parse_kmodule(const json& j, const Subgroup& h);
json kmodule_to_json(const KModule& w);
// {"sigma": {element: [[...]]}} with one entry per element of G.
std::vector<FpMatrix> parse_sigma(const json& j, const PermGroup& g, std::int64_t field);
json sigma_to_json(const std::vector<FpMatrix>& sigma);

// {"field": l, "dims": [...], "transitions": {element: [[[...]] per point]}}, generators suffice.
Representation parse_representation(const json& j, const GSetPtr& x);
json representation_to_json(const Representation& v);

// {"degrees": [{"basis_size": k, "differential": [[...]]}]}
json complex_to_json(const CechComplex& c);

}  // namespace sipp
