#include "nbox/model_io.hpp"

#include "nbox/syntax.hpp"

#include <json.hpp>

#include <sstream>

namespace nbox
{

namespace
{

using nlohmann::json;

json model_object( const extensional_model& m )
{
    json relations = json::array();
    for ( auto f : m.tracked_formulas() )
    {
        json pairs = json::array();
        for ( auto [ x, y ] : m.table().at( f ).pairs() )
            pairs.push_back( { m.world_name( x ), m.world_name( y ) } );
        relations.push_back( { { "formula", print( f ) }, { "pairs", std::move( pairs ) } } );
    }

    json valuation = json::object();
    for ( world_id w = 0; w < m.world_count(); ++w )
    {
        json vars = json::array();
        for ( const auto& [ var, ws ] : m.valuation() )
            if ( contains( ws, w ) )
                vars.push_back( var );
        valuation[ m.world_name( w ) ] = std::move( vars );
    }

    return { { "worlds", m.worlds() },
             { "default", std::string{ to_string( m.policy() ) } },
             { "relations", std::move( relations ) },
             { "valuation", std::move( valuation ) } };
}

const json& require( const json& j, const char* key )
{
    if ( !j.contains( key ) )
        throw input_error( std::string{ "model JSON is missing \"" } + key + "\"" );
    return j.at( key );
}

std::string as_string( const json& j, const char* what )
{
    if ( !j.is_string() )
        throw input_error( std::string{ what } + " must be a string" );
    return j.get< std::string >();
}

extensional_model model_of( const json& root )
{
    const json& j = root.contains( "model" ) && !root.contains( "worlds" ) ? root.at( "model" ) : root;
    if ( !j.is_object() )
        throw input_error( "model JSON must be an object" );

    const auto& worlds_json = require( j, "worlds" );
    if ( !worlds_json.is_array() )
        throw input_error( "\"worlds\" must be an array" );
    std::vector< std::string > worlds;
    for ( const auto& w : worlds_json )
        worlds.push_back( as_string( w, "world name" ) );

    auto policy = default_policy::empty;
    if ( j.contains( "default" ) )
    {
        const auto text = as_string( j.at( "default" ), "\"default\"" );
        auto p = policy_from_string( text );
        if ( !p )
            throw input_error( "unknown default policy \"" + text + "\"" );
        policy = *p;
    }

    extensional_model m{ std::move( worlds ), policy };

    if ( j.contains( "relations" ) )
    {
        const auto& rels = j.at( "relations" );
        if ( !rels.is_array() )
            throw input_error( "\"relations\" must be an array" );
        for ( const auto& entry : rels )
        {
            if ( !entry.is_object() )
                throw input_error( "relation entries must be objects" );
            const auto f = parse( as_string( require( entry, "formula" ), "relation formula" ) );
            if ( m.tracks( f ) )
                throw input_error( "duplicate relation for \"" + print( f ) + "\"" );
            relation r{ m.world_count() };
            const auto& pairs = require( entry, "pairs" );
            if ( !pairs.is_array() )
                throw input_error( "\"pairs\" must be an array" );
            for ( const auto& p : pairs )
            {
                if ( !p.is_array() || p.size() != 2 )
                    throw input_error( "each pair must be a two-element array" );
                r.insert( m.world( as_string( p[ 0 ], "pair member" ) ),
                          m.world( as_string( p[ 1 ], "pair member" ) ) );
            }
            m.set_relation( f, std::move( r ) );
        }
    }

    if ( j.contains( "valuation" ) )
    {
        const auto& val = j.at( "valuation" );
        if ( !val.is_object() )
            throw input_error( "\"valuation\" must be an object" );
        for ( const auto& [ world, vars ] : val.items() )
        {
            const auto w = m.world( world );
            if ( !vars.is_array() )
                throw input_error( "valuation entries must be arrays of variable names" );
            for ( const auto& v : vars )
            {
                const auto name = as_string( v, "variable name" );
                if ( !parse( name ).is( formula_kind::var ) )
                    throw input_error( "\"" + name + "\" is not a variable name" );
                m.set_true( w, name );
            }
        }
    }
    return m;
}

std::string dot_quote( const std::string& s )
{
    std::string out = "\"";
    for ( char c : s )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string model_to_json( const extensional_model& m, int indent ) { return model_object( m ).dump( indent ); }

extensional_model model_from_json( std::string_view text )
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
    return model_of( j );
}

std::string model_to_dot( const extensional_model& m )
{
    std::ostringstream out;
    out << "// default relation: " << to_string( m.policy() ) << '\n';
    std::size_t index = 0;
    for ( auto f : m.tracked_formulas() )
    {
        const auto label = print( f );
        out << "digraph R" << index++ << " {\n";
        out << "  label=" << dot_quote( "R_{" + label + "}" ) << ";\n";
        for ( world_id w = 0; w < m.world_count(); ++w )
        {
            std::string vars;
            for ( const auto& [ var, ws ] : m.valuation() )
                if ( contains( ws, w ) )
                    vars += ( vars.empty() ? "" : "," ) + var;
            out << "  " << dot_quote( m.world_name( w ) ) << " [label="
                << dot_quote( m.world_name( w ) + ( vars.empty() ? "" : " {" + vars + "}" ) ) << "];\n";
        }
        for ( auto [ x, y ] : m.table().at( f ).pairs() )
            out << "  " << dot_quote( m.world_name( x ) ) << " -> " << dot_quote( m.world_name( y ) )
                << " [label=" << dot_quote( label ) << "];\n";
        out << "}\n";
    }
    return out.str();
}

} // namespace nbox
