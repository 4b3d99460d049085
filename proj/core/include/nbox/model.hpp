#pragma once

#include "nbox/errors.hpp"
#include "nbox/formula.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nbox
{

using world_id = std::size_t;

// Worlds are indexed 0..size-1; a world set is a bitmask over those indices.
using world_set = std::uint64_t;
inline constexpr std::size_t max_worlds = 64;

constexpr world_set singleton( world_id w ) { return world_set{ 1 } << w; }
constexpr world_set all_of( std::size_t count )
{
    return count >= max_worlds ? ~world_set{ 0 } : ( world_set{ 1 } << count ) - 1;
}
constexpr bool contains( world_set s, world_id w ) { return ( s >> w ) & 1U; }
constexpr std::size_t cardinality( world_set s ) { return static_cast< std::size_t >( std::popcount( s ) ); }

// A binary relation on worlds, stored as one successor set per world.
class relation
{
    std::vector< world_set > _rows;

public:
    explicit relation( std::size_t world_count ) : _rows( world_count, 0 ) {}

    static relation empty( std::size_t world_count ) { return relation{ world_count }; }
    static relation total( std::size_t world_count );
    static relation identity( std::size_t world_count );

    [[nodiscard]] std::size_t world_count() const { return _rows.size(); }
    [[nodiscard]] world_set successors( world_id x ) const { return _rows[ x ]; }
    [[nodiscard]] bool holds( world_id x, world_id y ) const { return contains( _rows[ x ], y ); }

    void insert( world_id x, world_id y ) { _rows[ x ] |= singleton( y ); }
    void set_successors( world_id x, world_set ys ) { _rows[ x ] = ys; }

    // x (this ; other) z iff some y has x this y and y other z.
    [[nodiscard]] relation compose( const relation& other ) const;
    [[nodiscard]] bool subset_of( const relation& other ) const;

    [[nodiscard]] std::vector< std::pair< world_id, world_id > > pairs() const;

    friend bool operator==( const relation&, const relation& ) = default;
};

// Relation used for every formula without an explicit table entry.
enum class default_policy
{
    empty,
    total,
    identity,
};

std::string_view to_string( default_policy p );
std::optional< default_policy > policy_from_string( std::string_view s );

// A finite N-model: a world set, one relation per formula, and a valuation.
// Concrete models decide how the (infinite) relation family is represented.
class model
{
protected:
    std::vector< std::string > _worlds;

    explicit model( std::vector< std::string > worlds );
    model( const model& ) = default;
    model( model&& ) = default;
    model& operator=( const model& ) = default;
    model& operator=( model&& ) = default;

public:
    virtual ~model() = default;

    [[nodiscard]] std::size_t world_count() const { return _worlds.size(); }
    [[nodiscard]] const std::vector< std::string >& worlds() const { return _worlds; }
    [[nodiscard]] const std::string& world_name( world_id w ) const { return _worlds.at( w ); }
    [[nodiscard]] world_set all_worlds() const { return all_of( _worlds.size() ); }

    [[nodiscard]] std::optional< world_id > find_world( std::string_view name ) const;
    // Throws unknown_world.
    [[nodiscard]] world_id world( std::string_view name ) const;
    void check_world( world_id w ) const;

    // Worlds y with w R_f y.
    [[nodiscard]] virtual world_set successors( world_id w, formula f ) const = 0;
    // Worlds where the variable is true.
    [[nodiscard]] virtual world_set truth_set( const std::string& var ) const = 0;

    [[nodiscard]] relation relation_of( formula f ) const;
};

// Relations given by a finite table keyed by formula plus a uniform default
// for every other formula. Valuation lists the true variables per world;
// anything unlisted is false.
class extensional_model final : public model
{
    std::unordered_map< formula, relation > _table;
    default_policy _default;
    std::map< std::string, world_set > _valuation;

public:
    // Throws input_error on an empty or oversized world list or duplicate names.
    extensional_model( std::vector< std::string > worlds, default_policy policy );

    [[nodiscard]] default_policy policy() const { return _default; }
    [[nodiscard]] const std::unordered_map< formula, relation >& table() const { return _table; }
    [[nodiscard]] const std::map< std::string, world_set >& valuation() const { return _valuation; }

    // Table keys in structural order.
    [[nodiscard]] std::vector< formula > tracked_formulas() const;
    [[nodiscard]] bool tracks( formula f ) const { return _table.contains( f ); }

    [[nodiscard]] relation default_relation() const;

    void set_relation( formula f, relation r );
    void erase_relation( formula f ) { _table.erase( f ); }
    void set_policy( default_policy p ) { _default = p; }
    void set_true( world_id w, const std::string& var );
    void set_truth_set( const std::string& var, world_set ws );

    [[nodiscard]] world_set successors( world_id w, formula f ) const override;
    [[nodiscard]] world_set truth_set( const std::string& var ) const override;
};

// Relations and valuation given by decidable predicates. Both predicates must
// terminate on every input and be safe to call concurrently.
class intensional_model final : public model
{
public:
    using relation_fn = std::function< bool( world_id, formula, world_id ) >;
    using valuation_fn = std::function< bool( world_id, const std::string& ) >;

private:
    relation_fn _rel;
    valuation_fn _val;
    std::string _label;

public:
    intensional_model( std::vector< std::string > worlds, relation_fn rel, valuation_fn val, std::string label );

    [[nodiscard]] const std::string& label() const { return _label; }
    [[nodiscard]] bool related( world_id x, formula f, world_id y ) const { return _rel( x, f, y ); }

    [[nodiscard]] world_set successors( world_id w, formula f ) const override;
    [[nodiscard]] world_set truth_set( const std::string& var ) const override;

    // Materializes the relations of the given formulas. The default policy of
    // the result is meaningless outside those formulas.
    [[nodiscard]] extensional_model fragment( const formula_set& formulas, const std::set< std::string >& vars ) const;
};

} // namespace nbox
