#pragma once

#include "nbox/formula.hpp"
#include "nbox/model.hpp"

#include <cstddef>

namespace nbox
{

// One world "a", every relation empty. Validates every []psi and is
// (m,n)-accessible whenever m >= 1.
extensional_model prop41_model();

// Worlds {a, b}; every relation is total except R_psi, which drops the pairs
// leaving a. For n >= 2 and psi not of the form []^{n-1}phi, the model
// validates []psi at a and is (0,n)-accessible.
// Throws precondition_error otherwise.
extensional_model prop43_model( formula psi, std::size_t n );

// Two-world model separating NA_{0,n} from N+A_{0,n} (n >= 2). Every variable
// is true everywhere; b sees every world under every formula; a never sees
// itself; a sees b under phi only when phi = []^{n-1}sigma and
//   sigma = #f          -> yes
//   sigma = p           -> no
//   sigma = ~s          -> iff not a R_{[]^{n-1}s} b
//   sigma = s1 | s2     -> iff a R_{[]^{n-1}s1} b and a R_{[]^{n-1}s2} b
//   sigma = []s         -> iff a R_s b
// Throws precondition_error for n < 2.
intensional_model fig1_model( std::size_t n );

} // namespace nbox
