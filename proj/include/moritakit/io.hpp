#pragma once

#include <string>

#include "json.hpp"
#include "moritakit/algebra.hpp"
#include "moritakit/bar.hpp"
#include "moritakit/fincat.hpp"
#include "moritakit/operad.hpp"
#include "moritakit/simpset.hpp"
#include "moritakit/tree.hpp"

namespace moritakit {

using Json = nlohmann::json;

/// Throws Malformed when the file is missing or not JSON.
Json read_json_file(const std::string& path);

/// Which kind of object a document describes: "category", "functor",
/// "operad", "operad_map", "tree", "sset" or "" when unrecognised.
std::string detect_kind(const Json& j);

// Parsers throw Malformed on shape errors; validation errors come from the
// builders (make_category, make_operad, ...).

CategoryData category_from_json(const Json& j);
Json category_to_json(const FinCategory& c);

/// A category given inline, as a standard name (Idem, Split, ...) or as a path
/// relative to base_dir.
CatPtr category_ref(const Json& j, const std::string& base_dir);
OperadPtr operad_ref(const Json& j, const std::string& base_dir);

Functor functor_from_json(const Json& j, const std::string& base_dir);
Json functor_to_json(const Functor& f);

OperadData operad_from_json(const Json& j);
Json operad_to_json(const SymOperad& o);

OperadMap operad_map_from_json(const Json& j, const std::string& base_dir);
Json operad_map_to_json(const OperadMap& f);

Tree tree_from_json(const Json& j);
Json tree_to_json(const Tree& t);

/// {"carrier": {colour: size}, "act": {op: [values]}}
FiniteAlgebra algebra_from_json(const Json& j, const SymOperad& o);
Json algebra_to_json(const FiniteAlgebra& a, const SymOperad& o);

/// {"value": {object: size}, "action": {morphism: [values]}}
CModule module_from_json(const Json& j, const CatPtr& c);
Json module_to_json(const CModule& x);

TruncSSet sset_from_json(const Json& j);
Json sset_to_json(const TruncSSet& s);

}  // namespace moritakit
