#pragma once

// JSON <-> domain objects. Integers are accepted as JSON integers or decimal
// strings and always emitted as strings; rationals travel as "p/q" strings.

#include <json.hpp>

#include "cohomology.hpp"
#include "group_ring.hpp"
#include "toral_actions.hpp"

namespace gammadyn::io {

using json = nlohmann::json;

Int int_from(const json& j, const std::string& what);
Rat rat_from(const json& j, const std::string& what);
long small_int_from(const json& j, const std::string& what, long lo, long hi);
IntVector vector_from(const json& j, const std::string& what);
IntMatrix matrix_from(const json& j, const std::string& what);

GroupSpecPtr group_spec_from(const json& j);
/// [{"g": [...], "c": 3}, ...]
GroupRingElement ring_element_from(const json& j, const GroupSpecPtr& spec);
ToralActionSpec toral_spec_from(const json& j);
/// Either {"generators": g, "relators": [...]} or one of "z", "z2", "heisenberg".
GroupPresentation presentation_from(const json& j);
FiniteModuleAction action_from(const json& j);

json to_json(const Int& v);
json to_json(const Rat& v);
json to_json(const IntVector& v);
json to_json(const std::vector<IntVector>& v);
json to_json(const IntMatrix& m);
json to_json(const AbelianGroupStructure& s);
json to_json(const GroupSpec& s);

/// Member access that reports a missing key as a DomainError.
const json& require(const json& obj, const std::string& key);

}  // namespace gammadyn::io
