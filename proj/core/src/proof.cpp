#include "nbox/proof.hpp"

#include "nbox/errors.hpp"
#include "nbox/syntax.hpp"

#include <json.hpp>

#include <unordered_map>

namespace nbox
{

std::string describe( const logic_id& logic )
{
    std::string out = logic.rosbox ? "N+A" : "NA";
    out += "_{" + std::to_string( logic.m ) + "," + std::to_string( logic.n ) + "}";
    if ( logic.ros )
        out += "+Ros";
    return out;
}

namespace
{

enum class tv : signed char
{
    f = 0,
    t = 1,
    unknown = -1,
};

class tautology_checker
{
    std::vector< formula > _atoms;
    std::unordered_map< formula, std::size_t > _index;
    std::vector< tv > _value;
    formula _target;

    void collect( formula f )
    {
        switch ( f.kind() )
        {
        case formula_kind::bottom:
            return;
        case formula_kind::var:
        case formula_kind::box:
            if ( _index.emplace( f, _atoms.size() ).second )
                _atoms.push_back( f );
            return;
        case formula_kind::neg:
            collect( f.child() );
            return;
        case formula_kind::disj:
            collect( f.left() );
            collect( f.right() );
            return;
        }
    }

    tv eval( formula f ) const
    {
        switch ( f.kind() )
        {
        case formula_kind::bottom:
            return tv::f;
        case formula_kind::var:
        case formula_kind::box:
            return _value[ _index.at( f ) ];
        case formula_kind::neg:
        {
            const auto v = eval( f.child() );
            return v == tv::unknown ? v : ( v == tv::t ? tv::f : tv::t );
        }
        case formula_kind::disj:
        {
            const auto l = eval( f.left() );
            if ( l == tv::t )
                return tv::t;
            const auto r = eval( f.right() );
            if ( r == tv::t )
                return tv::t;
            return l == tv::f && r == tv::f ? tv::f : tv::unknown;
        }
        }
        return tv::unknown;
    }

    // Splits on atoms in order of first occurrence, cutting a branch as soon
    // as the partial assignment fixes the value.
    bool holds_from( std::size_t next )
    {
        const auto v = eval( _target );
        if ( v != tv::unknown )
            return v == tv::t;
        for ( auto choice : { tv::t, tv::f } )
        {
            _value[ next ] = choice;
            const bool ok = holds_from( next + 1 );
            _value[ next ] = tv::unknown;
            if ( !ok )
                return false;
        }
        return true;
    }

public:
    explicit tautology_checker( formula f ) : _target{ f }
    {
        collect( f );
        _value.assign( _atoms.size(), tv::unknown );
    }

    bool run() { return holds_from( 0 ); }
};

std::optional< proof_error > check_line( const proof& p, std::size_t k, const logic_id& logic )
{
    const auto current = p.lines[ k - 1 ].statement;
    auto fail = [ k ]( std::string reason ) { return std::optional< proof_error >{ proof_error{ k, std::move( reason ) } }; };
    auto earlier = [ & ]( std::size_t i ) -> std::optional< formula > {
        if ( i < 1 || i >= k )
            return std::nullopt;
        return p.lines[ i - 1 ].statement;
    };
    auto bad_index = [ & ]( std::size_t i ) {
        return fail( "bad index: line " + std::to_string( i ) + " is not an earlier line" );
    };

    return std::visit(
            [ & ]( const auto& j ) -> std::optional< proof_error > {
                using J = std::decay_t< decltype( j ) >;
                if constexpr ( std::is_same_v< J, just::taut > )
                {
                    if ( !is_tautology( current ) )
                        return fail( "not a tautology" );
                }
                else if constexpr ( std::is_same_v< J, just::axiom > )
                {
                    if ( !axiom_instance_witness( current, logic.m, logic.n ) )
                        return fail( "not an instance of A_{" + std::to_string( logic.m ) + "," +
                                     std::to_string( logic.n ) + "}" );
                }
                else if constexpr ( std::is_same_v< J, just::mp > )
                {
                    auto minor = earlier( j.minor );
                    if ( !minor )
                        return bad_index( j.minor );
                    auto major = earlier( j.major );
                    if ( !major )
                        return bad_index( j.major );
                    if ( *major != formula::implies( *minor, current ) )
                        return fail( "shape mismatch: MP needs line " + std::to_string( j.major ) + " to be line " +
                                     std::to_string( j.minor ) + " -> current" );
                }
                else if constexpr ( std::is_same_v< J, just::nec > )
                {
                    auto premise = earlier( j.premise );
                    if ( !premise )
                        return bad_index( j.premise );
                    if ( current != formula::box( *premise ) )
                        return fail( "shape mismatch: Nec needs current = [](line " + std::to_string( j.premise ) +
                                     ")" );
                }
                else if constexpr ( std::is_same_v< J, just::rosbox > )
                {
                    if ( !logic.rosbox )
                        return fail( "rule disabled: RosBox is not part of " + describe( logic ) );
                    auto premise = earlier( j.premise );
                    if ( !premise )
                        return bad_index( j.premise );
                    const bool shape = premise->is( formula_kind::neg ) && premise->child().is( formula_kind::box ) &&
                                       current == formula::neg( formula::box( premise->child() ) );
                    if ( !shape )
                        return fail( "shape mismatch: RosBox needs ~[]phi / ~[][]phi" );
                }
                else if constexpr ( std::is_same_v< J, just::ros > )
                {
                    if ( !logic.ros )
                        return fail( "rule disabled: Ros is not part of " + describe( logic ) );
                    auto premise = earlier( j.premise );
                    if ( !premise )
                        return bad_index( j.premise );
                    const bool shape = premise->is( formula_kind::neg ) &&
                                       current == formula::neg( formula::box( premise->child() ) );
                    if ( !shape )
                        return fail( "shape mismatch: Ros needs ~phi / ~[]phi" );
                }
                return std::nullopt;
            },
            p.lines[ k - 1 ].why );
}

using nlohmann::json;

std::size_t index_of( const json& j )
{
    if ( !j.is_number_unsigned() )
        throw input_error( "line references must be nonnegative integers" );
    return j.get< std::size_t >();
}

justification justification_of( const json& j )
{
    if ( j.is_string() )
    {
        const auto s = j.get< std::string >();
        if ( s == "taut" )
            return just::taut{};
        if ( s == "axA" )
            return just::axiom{};
        throw input_error( "unknown justification \"" + s + "\"" );
    }
    if ( !j.is_object() || j.size() != 1 )
        throw input_error( "a justification is \"taut\", \"axA\" or a one-key object" );

    const auto& [ key, arg ] = *j.items().begin();
    if ( key == "mp" )
    {
        if ( !arg.is_array() || arg.size() != 2 )
            throw input_error( "\"mp\" takes two line numbers" );
        return just::mp{ index_of( arg[ 0 ] ), index_of( arg[ 1 ] ) };
    }
    if ( key == "nec" )
        return just::nec{ index_of( arg ) };
    if ( key == "rosbox" )
        return just::rosbox{ index_of( arg ) };
    if ( key == "ros" )
        return just::ros{ index_of( arg ) };
    throw input_error( "unknown justification \"" + key + "\"" );
}

json justification_json( const justification& why )
{
    return std::visit(
            []( const auto& j ) -> json {
                using J = std::decay_t< decltype( j ) >;
                if constexpr ( std::is_same_v< J, just::taut > )
                    return "taut";
                else if constexpr ( std::is_same_v< J, just::axiom > )
                    return "axA";
                else if constexpr ( std::is_same_v< J, just::mp > )
                    return { { "mp", { j.minor, j.major } } };
                else if constexpr ( std::is_same_v< J, just::nec > )
                    return { { "nec", j.premise } };
                else if constexpr ( std::is_same_v< J, just::rosbox > )
                    return { { "rosbox", j.premise } };
                else
                    return { { "ros", j.premise } };
            },
            why );
}

} // namespace

bool is_tautology( formula f ) { return tautology_checker{ f }.run(); }

std::optional< formula > axiom_instance_witness( formula f, std::size_t m, std::size_t n )
{
    // []^n rho -> []^m rho is stored as ~[]^n rho | []^m rho.
    if ( !f.is( formula_kind::disj ) || !f.left().is( formula_kind::neg ) )
        return std::nullopt;
    const auto antecedent = f.left().child();
    if ( box_depth( antecedent ) < n )
        return std::nullopt;
    const auto rho = strip_boxes( n, antecedent );
    if ( box_iter( m, rho ) != f.right() )
        return std::nullopt;
    return rho;
}

std::optional< proof_error > check_proof( const proof& p, const logic_id& logic )
{
    if ( p.lines.empty() )
        return proof_error{ 0, "empty proof" };
    for ( std::size_t k = 1; k <= p.lines.size(); ++k )
        if ( auto e = check_line( p, k, logic ) )
            return e;
    return std::nullopt;
}

proof_document proof_from_json( std::string_view text )
{
    json j;
    try
    {
        j = json::parse( text );
    }
    catch ( const json::parse_error& e )
    {
        throw input_error( std::string{ "invalid JSON: " } + e.what() );
    }
    if ( !j.is_object() || !j.contains( "logic" ) || !j.contains( "lines" ) )
        throw input_error( "proof JSON needs \"logic\" and \"lines\"" );

    proof_document doc;
    const auto& l = j.at( "logic" );
    if ( !l.is_object() )
        throw input_error( "\"logic\" must be an object" );
    for ( const char* key : { "m", "n" } )
        if ( !l.contains( key ) || !l.at( key ).is_number_unsigned() )
            throw input_error( std::string{ "\"logic\"." } + key + " must be a natural number" );
    try
    {
        doc.logic.m = l.at( "m" ).get< std::size_t >();
        doc.logic.n = l.at( "n" ).get< std::size_t >();
        doc.logic.rosbox = l.value( "rosbox", false );
        doc.logic.ros = l.value( "ros", false );
    }
    catch ( const json::exception& e )
    {
        throw input_error( std::string{ "bad \"logic\": " } + e.what() );
    }

    const auto& lines = j.at( "lines" );
    if ( !lines.is_array() )
        throw input_error( "\"lines\" must be an array" );
    for ( const auto& line : lines )
    {
        if ( !line.is_object() || !line.contains( "formula" ) || !line.contains( "just" ) ||
             !line.at( "formula" ).is_string() )
            throw input_error( "each line needs a string \"formula\" and a \"just\"" );
        doc.body.lines.push_back(
                { parse( line.at( "formula" ).get< std::string >() ), justification_of( line.at( "just" ) ) } );
    }
    return doc;
}

std::string proof_to_json( const proof_document& doc, int indent )
{
    json lines = json::array();
    for ( const auto& line : doc.body.lines )
        lines.push_back( { { "formula", print( line.statement ) }, { "just", justification_json( line.why ) } } );
    json out = { { "logic",
                   { { "m", doc.logic.m }, { "n", doc.logic.n }, { "rosbox", doc.logic.rosbox }, { "ros", doc.logic.ros } } },
                 { "lines", std::move( lines ) } };
    return out.dump( indent );
}

} // namespace nbox
