#include "nbox/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace nbox
{

namespace
{

class evaluator
{
    const model& _m;
    std::unordered_map< formula, world_set > _memo;

public:
    explicit evaluator( const model& m ) : _m{ m } {}

    world_set operator()( formula f )
    {
        if ( auto it = _memo.find( f ); it != _memo.end() )
            return it->second;

        world_set out = 0;
        switch ( f.kind() )
        {
        case formula_kind::bottom:
            break;
        case formula_kind::var:
            out = _m.truth_set( f.name() ) & _m.all_worlds();
            break;
        case formula_kind::neg:
            out = _m.all_worlds() & ~( *this )( f.child() );
            break;
        case formula_kind::disj:
            out = ( *this )( f.left() ) | ( *this )( f.right() );
            break;
        case formula_kind::box:
        {
            const auto body = f.child();
            const auto holds = ( *this )( body );
            for ( world_id w = 0; w < _m.world_count(); ++w )
                if ( ( _m.successors( w, body ) & ~holds ) == 0 )
                    out |= singleton( w );
            break;
        }
        }
        _memo.emplace( f, out );
        return out;
    }
};

std::optional< world_id > first_member( world_set s )
{
    if ( s == 0 )
        return std::nullopt;
    return static_cast< world_id >( std::countr_zero( s ) );
}

} // namespace

world_set extension( const model& m, formula f ) { return evaluator{ m }( f ); }

bool satisfies( const model& m, world_id w, formula f )
{
    m.check_world( w );
    return contains( extension( m, f ), w );
}

bool valid( const model& m, formula f ) { return extension( m, f ) == m.all_worlds(); }

relation path_relation( const model& m, formula f, std::size_t k )
{
    auto acc = relation::identity( m.world_count() );
    auto step = f;
    for ( std::size_t j = 1; j <= k; ++j )
    {
        acc = m.relation_of( step ).compose( acc );
        step = formula::box( step );
    }
    return acc;
}

bool path_rel( const model& m, formula f, std::size_t k, world_id x, world_id y )
{
    m.check_world( x );
    m.check_world( y );
    return path_relation( m, f, k ).holds( x, y );
}

bool is_serial( const model& m, formula f )
{
    for ( world_id w = 0; w < m.world_count(); ++w )
        if ( m.successors( w, f ) == 0 )
            return false;
    return true;
}

bool is_transitive( const model& m, formula f )
{
    const auto boxed = formula::box( f );
    for ( world_id x = 0; x < m.world_count(); ++x )
    {
        const auto direct = m.successors( x, f );
        for ( world_set ys = m.successors( x, boxed ); ys != 0; ys &= ys - 1 )
        {
            const auto y = static_cast< world_id >( std::countr_zero( ys ) );
            if ( ( m.successors( y, f ) & ~direct ) != 0 )
                return false;
        }
    }
    return true;
}

bool is_set_serial( const model& m, const formula_set& gamma )
{
    return std::all_of( gamma.begin(), gamma.end(), [ & ]( formula g ) {
        return !g.is( formula_kind::box ) || is_serial( m, g.child() );
    } );
}

bool is_set_transitive( const model& m, const formula_set& gamma )
{
    return std::all_of( gamma.begin(), gamma.end(), [ & ]( formula g ) {
        return box_depth( g ) < 2 || is_transitive( m, g.child().child() );
    } );
}

std::optional< accessibility_violation > find_accessibility_violation( const model& m, formula f, std::size_t m_len,
                                                                       std::size_t n_len )
{
    const auto premise = path_relation( m, f, m_len );
    const auto conclusion = m_len == n_len ? premise : path_relation( m, f, n_len );
    for ( world_id x = 0; x < m.world_count(); ++x )
        if ( auto y = first_member( premise.successors( x ) & ~conclusion.successors( x ) ) )
            return accessibility_violation{ f, x, *y };
    return std::nullopt;
}

bool is_accessible( const model& m, formula f, std::size_t m_len, std::size_t n_len )
{
    return !find_accessibility_violation( m, f, m_len, n_len );
}

std::optional< accessibility_violation > find_set_accessibility_violation( const model& m, const formula_set& gamma,
                                                                           std::size_t m_len, std::size_t n_len )
{
    formula_set checked;
    for ( auto g : gamma )
    {
        if ( box_depth( g ) < m_len )
            continue;
        const auto rho = strip_boxes( m_len, g );
        if ( !checked.insert( rho ).second )
            continue;
        if ( auto v = find_accessibility_violation( m, rho, m_len, n_len ) )
            return v;
    }
    return std::nullopt;
}

bool is_set_accessible( const model& m, const formula_set& gamma, std::size_t m_len, std::size_t n_len )
{
    return !find_set_accessibility_violation( m, gamma, m_len, n_len );
}

bool default_tail_accessible( default_policy p, std::size_t m_len, std::size_t n_len, std::size_t world_count )
{
    switch ( p )
    {
    case default_policy::empty:
        // No m-paths at all once m >= 1; with m = 0 every x needs an n-loop.
        return m_len >= 1 || n_len == 0;
    case default_policy::total:
        // Every pair is joined by a path of positive length.
        return n_len >= 1 || m_len == 0 || world_count == 1;
    case default_policy::identity:
        return true;
    }
    return false;
}

formula_set table_relevant_formulas( const extensional_model& m, std::size_t m_len, std::size_t n_len )
{
    formula_set out;
    const auto reach = std::max( m_len, n_len );
    for ( auto key : m.tracked_formulas() )
        for ( std::size_t i = 0; i < reach && i <= box_depth( key ); ++i )
            out.insert( strip_boxes( i, key ) );
    return out;
}

std::optional< accessibility_violation > find_full_accessibility_violation( const extensional_model& m,
                                                                            std::size_t m_len, std::size_t n_len )
{
    for ( auto rho : table_relevant_formulas( m, m_len, n_len ) )
        if ( auto v = find_accessibility_violation( m, rho, m_len, n_len ) )
            return v;

    if ( default_tail_accessible( m.policy(), m_len, n_len, m.world_count() ) )
        return std::nullopt;

    // Witness the tail failure on a variable that no table entry mentions.
    std::set< std::string > used;
    for ( auto key : m.tracked_formulas() )
        used.merge( variables( key ) );
    std::string name = "fresh";
    for ( std::size_t i = 0; used.contains( name ); ++i )
        name = "fresh" + std::to_string( i );
    return find_accessibility_violation( m, formula::var( name ), m_len, n_len );
}

bool is_fully_accessible( const extensional_model& m, std::size_t m_len, std::size_t n_len )
{
    return !find_full_accessibility_violation( m, m_len, n_len );
}

bool box_k_semantics_check( const model& m, world_id w, formula f, std::size_t k )
{
    m.check_world( w );
    const bool boxed = satisfies( m, w, box_iter( k, f ) );
    const bool along_paths = ( path_relation( m, f, k ).successors( w ) & ~extension( m, f ) ) == 0;
    return boxed == along_paths;
}

} // namespace nbox
