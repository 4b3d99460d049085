#pragma once

#include "nbox/formula.hpp"
#include "nbox/model.hpp"
#include "nbox/proof.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nbox
{

inline constexpr std::size_t default_max_generators = 4;
inline constexpr std::chrono::milliseconds default_budget{ 10'000 };

// World types are indexed by a bitmask, so 2^generators must fit in one.
inline constexpr std::size_t hard_max_generators = 6;

// The decision procedure was asked for a logic it does not cover.
class config_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Variables and box formulas of Sub(psi), in structural order. A truth
// assignment to these fixes the value of every member of NSub(psi).
std::vector< formula > generators( formula psi );

// A psi-maximal, propositionally coherent subset of NSub(psi): the members of
// NSub(psi) made true by one assignment to the generators.
struct world_type
{
    std::uint64_t assignment; // bit i = value of generators(psi)[i]
    formula_set members;

    [[nodiscard]] bool has( formula f ) const { return members.contains( f ); }
};

// One type per assignment, ordered by assignment. Throws resource_limit_error
// when the generator count exceeds the cap.
std::vector< world_type > world_types( formula psi, std::size_t max_generators = default_max_generators );

// Worlds are the given types, named "t<assignment>". For []phi in NSub(psi)
// the relation is X R_phi Y iff []phi is not in X or phi is in Y; every other
// relation is total (the default), and p holds at X iff p is in X.
// Throws precondition_error on an empty type list.
extensional_model canonical_model( std::span< const world_type > types, formula psi );

struct provable
{
};

struct unprovable
{
    extensional_model model;
    world_id world;
};

struct resource_limit
{
    std::uint64_t explored;
    std::string reason;
};

using decision_result = std::variant< provable, unprovable, resource_limit >;

struct decide_options
{
    std::size_t max_generators = default_max_generators;
    std::chrono::milliseconds budget = default_budget;
    // 0 means no cap beyond the wall-clock budget.
    std::uint64_t max_subsets = 0;
    // Evaluate candidates on the calling thread only.
    bool sequential = false;
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

// Decides N+A_{m,n} (equivalently NA_{m,n} when m >= 1 or n <= 1).
//
// Searches nonempty sets of world types, largest first, for a canonical model
// that is Sub(psi)-(m,n)-accessible and falsifies psi somewhere. Any such
// model is a finite countermodel; if psi is unprovable the set of consistent
// types is one of the candidates, so exhausting the search means provable.
// The certificate choice does not depend on the thread count.
//
// Throws config_error for logics with the Rosser rule and for plain
// NA_{0,n} with n >= 2.
decision_result decide( const logic_id& logic, formula psi, const decide_options& options = {} );

// Given a Sub(psi)-(m,n)-accessible model, builds a model on the same worlds
// that is (m,n)-accessible for every formula and agrees on the relations
// that psi can see:
//   []phi in Sub(psi)                    -> relation copied
//   phi in Sub(psi), []phi not, n > m    -> total
//   phi in Sub(psi), []phi not, m > n    -> empty
//   everything else                      -> identity (the default)
// Throws precondition_error naming the failing path pair.
extensional_model extend_frame( const extensional_model& m, formula psi, std::size_t m_len, std::size_t n_len );

// Every formula whose relation a Sub(psi)-(m,n)-accessibility check or the
// evaluation of psi can observe.
formula_set observable_relations( formula psi, std::size_t m_len, std::size_t n_len );

inline constexpr std::size_t brute_force_max_worlds = 2;
inline constexpr std::size_t brute_force_max_relations = 4;

// Exhaustive search over small models: 1..max_worlds worlds, every relation
// for the observable formulas (identity elsewhere), every valuation of the
// variables of psi. Returns the first Sub(psi)-accessible model falsifying
// psi. Throws resource_limit_error when the caps are exceeded.
std::optional< std::pair< extensional_model, world_id > > brute_force_countermodel( const logic_id& logic, formula psi,
                                                                                     std::size_t max_worlds );

// Builds the canonical model over the consistent types (those X for which
// decide reports ~/\X unprovable) and checks that membership and satisfaction
// agree on NSub(psi) at every world. Throws resource_limit_error if any
// decision runs out of budget.
bool truth_lemma_check( const logic_id& logic, formula psi, const decide_options& options = {} );

} // namespace nbox
