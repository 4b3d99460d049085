#include "nbox/countermodels.hpp"

#include "nbox/errors.hpp"
#include "nbox/syntax.hpp"

namespace nbox
{

namespace
{

constexpr world_id world_a = 0;
constexpr world_id world_b = 1;

// a R_phi b in the two-world separation model. Each recursive call is on a
// strictly smaller formula, so the recursion terminates.
bool a_sees_b( formula phi, std::size_t n )
{
    if ( box_depth( phi ) < n - 1 )
        return false;
    const auto sigma = strip_boxes( n - 1, phi );
    switch ( sigma.kind() )
    {
    case formula_kind::bottom:
        return true;
    case formula_kind::var:
        return false;
    case formula_kind::neg:
        return !a_sees_b( box_iter( n - 1, sigma.child() ), n );
    case formula_kind::disj:
        return a_sees_b( box_iter( n - 1, sigma.left() ), n ) && a_sees_b( box_iter( n - 1, sigma.right() ), n );
    case formula_kind::box:
        return a_sees_b( sigma.child(), n );
    }
    return false;
}

} // namespace

extensional_model prop41_model() { return extensional_model{ { "a" }, default_policy::empty }; }

extensional_model prop43_model( formula psi, std::size_t n )
{
    if ( n < 2 )
        throw precondition_error( "prop43_model needs n >= 2" );
    if ( box_depth( psi ) >= n - 1 )
        throw precondition_error( print( psi ) + " is of the form []^" + std::to_string( n - 1 ) + "phi" );

    extensional_model m{ { "a", "b" }, default_policy::total };
    relation r{ 2 };
    r.insert( world_b, world_a );
    r.insert( world_b, world_b );
    m.set_relation( psi, std::move( r ) );
    return m;
}

intensional_model fig1_model( std::size_t n )
{
    if ( n < 2 )
        throw precondition_error( "fig1_model needs n >= 2" );

    auto rel = [ n ]( world_id x, formula phi, world_id y ) {
        if ( x == world_b )
            return true;
        if ( y == world_a )
            return false;
        return a_sees_b( phi, n );
    };
    auto val = []( world_id, const std::string& ) { return true; };
    return intensional_model{ { "a", "b" }, rel, val, "fig1(" + std::to_string( n ) + ")" };
}

} // namespace nbox
