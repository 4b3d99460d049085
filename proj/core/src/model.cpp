#include "nbox/model.hpp"

#include <algorithm>
#include <set>

namespace nbox
{

relation relation::total( std::size_t world_count )
{
    relation r{ world_count };
    for ( world_id x = 0; x < world_count; ++x )
        r._rows[ x ] = all_of( world_count );
    return r;
}

relation relation::identity( std::size_t world_count )
{
    relation r{ world_count };
    for ( world_id x = 0; x < world_count; ++x )
        r._rows[ x ] = singleton( x );
    return r;
}

relation relation::compose( const relation& other ) const
{
    relation out{ world_count() };
    for ( world_id x = 0; x < world_count(); ++x )
    {
        world_set acc = 0;
        for ( world_set mids = _rows[ x ]; mids != 0; mids &= mids - 1 )
            acc |= other._rows[ static_cast< world_id >( std::countr_zero( mids ) ) ];
        out._rows[ x ] = acc;
    }
    return out;
}

bool relation::subset_of( const relation& other ) const
{
    for ( world_id x = 0; x < world_count(); ++x )
        if ( ( _rows[ x ] & ~other._rows[ x ] ) != 0 )
            return false;
    return true;
}

std::vector< std::pair< world_id, world_id > > relation::pairs() const
{
    std::vector< std::pair< world_id, world_id > > out;
    for ( world_id x = 0; x < world_count(); ++x )
        for ( world_id y = 0; y < world_count(); ++y )
            if ( holds( x, y ) )
                out.emplace_back( x, y );
    return out;
}

std::string_view to_string( default_policy p )
{
    switch ( p )
    {
    case default_policy::empty: return "empty";
    case default_policy::total: return "total";
    case default_policy::identity: return "identity";
    }
    return "empty";
}

std::optional< default_policy > policy_from_string( std::string_view s )
{
    if ( s == "empty" )
        return default_policy::empty;
    if ( s == "total" )
        return default_policy::total;
    if ( s == "identity" )
        return default_policy::identity;
    return std::nullopt;
}

model::model( std::vector< std::string > worlds ) : _worlds{ std::move( worlds ) }
{
    if ( _worlds.empty() )
        throw input_error( "a model needs at least one world" );
    if ( _worlds.size() > max_worlds )
        throw input_error( "models are limited to " + std::to_string( max_worlds ) + " worlds" );
    std::set< std::string_view > seen;
    for ( const auto& w : _worlds )
    {
        if ( w.empty() )
            throw input_error( "world names must be nonempty" );
        if ( !seen.insert( w ).second )
            throw input_error( "duplicate world \"" + w + "\"" );
    }
}

std::optional< world_id > model::find_world( std::string_view name ) const
{
    auto it = std::find( _worlds.begin(), _worlds.end(), name );
    if ( it == _worlds.end() )
        return std::nullopt;
    return static_cast< world_id >( it - _worlds.begin() );
}

world_id model::world( std::string_view name ) const
{
    if ( auto w = find_world( name ) )
        return *w;
    throw unknown_world( "unknown world \"" + std::string{ name } + "\"" );
}

void model::check_world( world_id w ) const
{
    if ( w >= _worlds.size() )
        throw unknown_world( "unknown world index " + std::to_string( w ) );
}

relation model::relation_of( formula f ) const
{
    relation r{ world_count() };
    for ( world_id x = 0; x < world_count(); ++x )
        r.set_successors( x, successors( x, f ) );
    return r;
}

extensional_model::extensional_model( std::vector< std::string > worlds, default_policy policy )
        : model{ std::move( worlds ) }, _default{ policy }
{
}

std::vector< formula > extensional_model::tracked_formulas() const
{
    std::vector< formula > out;
    out.reserve( _table.size() );
    for ( const auto& [ f, _ ] : _table )
        out.push_back( f );
    std::sort( out.begin(), out.end() );
    return out;
}

relation extensional_model::default_relation() const
{
    switch ( _default )
    {
    case default_policy::empty: return relation::empty( world_count() );
    case default_policy::total: return relation::total( world_count() );
    case default_policy::identity: return relation::identity( world_count() );
    }
    return relation::empty( world_count() );
}

void extensional_model::set_relation( formula f, relation r )
{
    if ( r.world_count() != world_count() )
        throw precondition_error( "relation size does not match the model" );
    _table.insert_or_assign( f, std::move( r ) );
}

void extensional_model::set_true( world_id w, const std::string& var )
{
    check_world( w );
    _valuation[ var ] |= singleton( w );
}

void extensional_model::set_truth_set( const std::string& var, world_set ws )
{
    ws &= all_worlds();
    if ( ws == 0 )
        _valuation.erase( var );
    else
        _valuation[ var ] = ws;
}

world_set extensional_model::successors( world_id w, formula f ) const
{
    if ( auto it = _table.find( f ); it != _table.end() )
        return it->second.successors( w );
    switch ( _default )
    {
    case default_policy::empty: return 0;
    case default_policy::total: return all_worlds();
    case default_policy::identity: return singleton( w );
    }
    return 0;
}

world_set extensional_model::truth_set( const std::string& var ) const
{
    auto it = _valuation.find( var );
    return it == _valuation.end() ? 0 : it->second;
}

intensional_model::intensional_model( std::vector< std::string > worlds, relation_fn rel, valuation_fn val,
                                      std::string label )
        : model{ std::move( worlds ) }, _rel{ std::move( rel ) }, _val{ std::move( val ) }, _label{ std::move( label ) }
{
}

world_set intensional_model::successors( world_id w, formula f ) const
{
    world_set out = 0;
    for ( world_id y = 0; y < world_count(); ++y )
        if ( _rel( w, f, y ) )
            out |= singleton( y );
    return out;
}

world_set intensional_model::truth_set( const std::string& var ) const
{
    world_set out = 0;
    for ( world_id w = 0; w < world_count(); ++w )
        if ( _val( w, var ) )
            out |= singleton( w );
    return out;
}

extensional_model intensional_model::fragment( const formula_set& formulas, const std::set< std::string >& vars ) const
{
    extensional_model out{ _worlds, default_policy::empty };
    for ( auto f : formulas )
        out.set_relation( f, relation_of( f ) );
    for ( const auto& v : vars )
        out.set_truth_set( v, truth_set( v ) );
    return out;
}

} // namespace nbox
