#pragma once

#include <json.hpp>

#include "matchfield/groups.hpp"
#include "matchfield/matching.hpp"
#include "matchfield/subspace.hpp"

// Wire formats. Coefficient lists are constant term first, matching the
// in-memory layout:
//   field       {"p": 2, "k": 4, "modulus": [1,1,0,0,1]}   (modulus optional)
//   subspace    [[1,0,0,0],[0,1,1,0]]                       (generators)
//   certificate {"kind":"match","source":[...],"target":[...]}
//               {"kind":"violation","J":[1,2],"vdim":1,"bound":0}  (J 1-based)

namespace matchfield {

nlohmann::json field_to_json(const ExtensionField& f);
ExtensionField field_from_json(const nlohmann::json& j);

nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const ExtensionField& f, const nlohmann::json& j);

nlohmann::json basis_to_json(const Basis& b);
Basis basis_from_json(const ExtensionField& f, const nlohmann::json& j);

nlohmann::json outcome_to_json(const MatchOutcome& o);

nlohmann::json group_counterexample_json(const groups::GroupDescriptor& g,
                                         const groups::GroupSubset& A,
                                         const groups::GroupSubset& B);

}  // namespace matchfield
