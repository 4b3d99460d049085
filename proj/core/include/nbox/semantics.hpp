#pragma once

#include "nbox/formula.hpp"
#include "nbox/model.hpp"

#include <cstddef>
#include <optional>

namespace nbox
{

// Worlds where f holds, by structural recursion on f. A box formula []g holds
// at w iff every R_g-successor of w satisfies g.
world_set extension( const model& m, formula f );

// Throws unknown_world for an out-of-range w.
bool satisfies( const model& m, world_id w, formula f );
bool valid( const model& m, formula f );

// x R^k_f y: a chain x R_{[]^{k-1}f} w_{k-1} ... w_1 R_f y, with R^0 the identity.
relation path_relation( const model& m, formula f, std::size_t k );
bool path_rel( const model& m, formula f, std::size_t k, world_id x, world_id y );

// Every world has an f-successor.
bool is_serial( const model& m, formula f );
// x R_{[]f} y and y R_f z imply x R_f z.
bool is_transitive( const model& m, formula f );
// f-serial for every []f in gamma.
bool is_set_serial( const model& m, const formula_set& gamma );
// f-transitive for every [][]f in gamma.
bool is_set_transitive( const model& m, const formula_set& gamma );

struct accessibility_violation
{
    formula rho;
    world_id from;
    world_id to;
};

// A pair related by an m-path but not by an n-path, if any.
std::optional< accessibility_violation > find_accessibility_violation( const model& m, formula f, std::size_t m_len,
                                                                       std::size_t n_len );
bool is_accessible( const model& m, formula f, std::size_t m_len, std::size_t n_len );

// Checks every rho with []^m rho in gamma. For m = 0 that is every member.
std::optional< accessibility_violation > find_set_accessibility_violation( const model& m, const formula_set& gamma,
                                                                           std::size_t m_len, std::size_t n_len );
bool is_set_accessible( const model& m, const formula_set& gamma, std::size_t m_len, std::size_t n_len );

// Whether a uniform relation family (every R_f equal to the policy's
// relation on `world_count` worlds) is (m,n)-accessible.
bool default_tail_accessible( default_policy p, std::size_t m_len, std::size_t n_len, std::size_t world_count );

// Formulas rho whose f-paths of length < max(m,n) touch a table entry.
formula_set table_relevant_formulas( const extensional_model& m, std::size_t m_len, std::size_t n_len );

// (m,n)-accessibility for every formula: the table-relevant formulas are
// checked directly and all remaining formulas see only the default tail.
std::optional< accessibility_violation > find_full_accessibility_violation( const extensional_model& m,
                                                                            std::size_t m_len, std::size_t n_len );
bool is_fully_accessible( const extensional_model& m, std::size_t m_len, std::size_t n_len );

// w |= []^k f agrees with "f holds at every R^k_f-successor of w".
bool box_k_semantics_check( const model& m, world_id w, formula f, std::size_t k );

} // namespace nbox
