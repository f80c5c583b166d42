#pragma once

// JSON file formats for languages, structures, families and prefixes.

#include "brd/limit.hpp"

#include <json.hpp>

#include <string>

namespace brd {

using Json = nlohmann::ordered_json;

Json language_to_json(const Language& lang);
Language language_from_json(const Json& j);

/// {"k", "flip", "n", "unary", "rel": [[a, b, v]...]} with a < b and v != 0;
/// "flip" defaults to the identity and "unary_types" to k.
Json structure_to_json(const Structure& a);
Structure structure_from_json(const Json& j);
/// Reads a structure in a known language; a "k"/"flip" given in the file must match.
Structure structure_from_json(const Json& j, const Language& lang);

Json family_to_json(const ForbFamily& family);
ForbFamily family_from_json(const Json& j);

Json prefix_to_json(const LimitPrefix& prefix);
LimitPrefix prefix_from_json(const ForbFamily& family, const Json& j);

Json tree_map_to_json(const TreeMap& f);

/// Reads a file; the raw bytes are appended to digest_input when given.
Json load_json_file(const std::string& path, std::string* digest_input = nullptr);

/// FNV-1a 64 as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

}  // namespace brd
