#pragma once

#include "nbox/model.hpp"

#include <string>
#include <string_view>

namespace nbox
{

// Model JSON:
//   {"worlds":["a","b"], "default":"empty"|"total"|"identity",
//    "relations":[{"formula":"<syntax>","pairs":[["a","b"],...]}, ...],
//    "valuation":{"a":["p","q"], ...}}
//
// The valuation lists the true variables per world. Output is deterministic:
// relations in structural formula order, pairs and variables sorted.
std::string model_to_json( const extensional_model& m, int indent = -1 );

// Accepts a bare model object or any object carrying it under "model" (such
// as the output of `nbox decide`). Throws input_error.
extensional_model model_from_json( std::string_view json );

// One digraph per tracked relation, the formula as edge label.
std::string model_to_dot( const extensional_model& m );

} // namespace nbox
