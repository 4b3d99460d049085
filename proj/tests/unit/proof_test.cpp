#include "nbox/proof.hpp"
#include "nbox/semantics.hpp"
#include "nbox/syntax.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <map>

using namespace nbox;

namespace
{

void collect_atoms( formula f, formula_set& out )
{
    switch ( f.kind() )
    {
    case formula_kind::var:
    case formula_kind::box: out.insert( f ); break;
    case formula_kind::neg: collect_atoms( f.child(), out ); break;
    case formula_kind::disj:
        collect_atoms( f.left(), out );
        collect_atoms( f.right(), out );
        break;
    case formula_kind::bottom: break;
    }
}

bool eval_prop( formula f, const std::map< formula, bool >& v )
{
    switch ( f.kind() )
    {
    case formula_kind::bottom: return false;
    case formula_kind::neg: return !eval_prop( f.child(), v );
    case formula_kind::disj: return eval_prop( f.left(), v ) || eval_prop( f.right(), v );
    default: return v.at( f );
    }
}

bool truth_table( formula f )
{
    formula_set atoms;
    collect_atoms( f, atoms );
    const std::vector< formula > list( atoms.begin(), atoms.end() );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << list.size() ); ++bits )
    {
        std::map< formula, bool > v;
        for ( std::size_t i = 0; i < list.size(); ++i )
            v[ list[ i ] ] = ( bits >> i ) & 1U;
        if ( !eval_prop( f, v ) )
            return false;
    }
    return true;
}

proof_line line( const char* text, justification why ) { return { parse( text ), why }; }

proof na02_proof()
{
    return { { line( "[][]#f -> #f", just::axiom{} ), line( "([][]#f -> #f) -> ~[][]#f", just::taut{} ),
               line( "~[][]#f", just::mp{ 1, 2 } ) } };
}

proof na02_plus_proof()
{
    auto p = na02_proof();
    p.lines.push_back( line( "~[][][]#f", just::rosbox{ 3 } ) );
    return p;
}

const logic_id n_logic{ 1, 1, false, false };
const logic_id na02{ 0, 2, false, false };
const logic_id na02_plus{ 0, 2, true, false };

std::string rejection( const proof& p, const logic_id& logic )
{
    const auto e = check_proof( p, logic );
    return e ? std::to_string( e->line ) + ":" + e->reason : "ok";
}

} // namespace

TEST_CASE( "describe" )
{
    CHECK( describe( n_logic ) == "NA_{1,1}" );
    CHECK( describe( na02_plus ) == "N+A_{0,2}" );
}

TEST_CASE( "is_tautology" )
{
    CHECK( is_tautology( parse( "[]p -> []p" ) ) );
    CHECK_FALSE( is_tautology( parse( "[]p -> [][]p" ) ) );
    CHECK( is_tautology( parse( "([][]#f -> #f) -> ~[][]#f" ) ) );
    CHECK( is_tautology( parse( "#t" ) ) );
    CHECK_FALSE( is_tautology( parse( "#f" ) ) );
    CHECK_FALSE( is_tautology( parse( "[](p | ~p)" ) ) );
}

TEST_CASE( "is_tautology agrees with truth tables" )
{
    testing::rng_t rng{ 51 };
    std::vector< formula > atoms = testing::leaves( { "p", "q", "r" } );
    atoms.push_back( parse( "[]p" ) );
    atoms.push_back( parse( "[]~q" ) );
    atoms.push_back( parse( "[][]p" ) );
    int tautologies = 0;
    for ( int i = 0; i < 3000; ++i )
    {
        auto f = testing::random_formula( rng, 6, atoms );
        // Bias toward tautologies: f | ~f style closures now and then.
        if ( testing::coin( rng, 0.3 ) )
            f = formula::disj( f, formula::neg( testing::coin( rng, 0.5 ) ? f : testing::random_formula( rng, 3, atoms ) ) );
        formula_set found;
        collect_atoms( f, found );
        REQUIRE( found.size() <= 10 );
        const bool expected = truth_table( f );
        tautologies += expected;
        REQUIRE( is_tautology( f ) == expected );
    }
    CHECK( tautologies > 100 );
}

TEST_CASE( "axiom_instance_witness" )
{
    CHECK( axiom_instance_witness( parse( "[][]#f -> #f" ), 0, 2 ) == parse( "#f" ) );
    CHECK( axiom_instance_witness( parse( "[]p -> [][]p" ), 2, 1 ) == parse( "p" ) );
    CHECK( axiom_instance_witness( parse( "[][][]p -> []p" ), 0, 2 ) == parse( "[]p" ) );
    CHECK_FALSE( axiom_instance_witness( parse( "[]p -> [][]p" ), 1, 2 ) );
    CHECK_FALSE( axiom_instance_witness( parse( "[]p -> []q" ), 1, 1 ) );
    CHECK( axiom_instance_witness( parse( "p -> p" ), 0, 0 ) == parse( "p" ) );
    CHECK_FALSE( axiom_instance_witness( parse( "p" ), 0, 0 ) );
}

TEST_CASE( "check_proof fixtures" )
{
    CHECK( rejection( na02_proof(), na02 ) == "ok" );
    CHECK( rejection( na02_plus_proof(), na02_plus ) == "ok" );
    CHECK( rejection( na02_plus_proof(), na02 ).starts_with( "4:rule disabled" ) );

    const proof nec{ { line( "p -> p", just::taut{} ), line( "[](p -> p)", just::nec{ 1 } ) } };
    CHECK( rejection( nec, n_logic ) == "ok" );

    const proof four{ { line( "[]p -> [][]p", just::axiom{} ) } };
    CHECK( rejection( four, logic_id{ 2, 1 } ) == "ok" );
    CHECK( rejection( four, n_logic ).starts_with( "1:not an instance" ) );

    const proof ros{ { line( "~#t", just::taut{} ) } };
    CHECK( rejection( ros, n_logic ).starts_with( "1:not a tautology" ) );
}

TEST_CASE( "check_proof error reasons" )
{
    CHECK( rejection( proof{}, n_logic ) == "0:empty proof" );
    CHECK( rejection( { { line( "p", just::mp{ 1, 2 } ) } }, n_logic ).starts_with( "1:bad index" ) );
    CHECK( rejection( { { line( "p -> p", just::taut{} ), line( "[]p", just::nec{ 0 } ) } }, n_logic )
               .starts_with( "2:bad index" ) );
    CHECK( rejection( { { line( "p -> p", just::taut{} ), line( "[]p", just::nec{ 1 } ) } }, n_logic )
               .starts_with( "2:shape mismatch" ) );
    CHECK( rejection( { { line( "p -> p", just::taut{} ), line( "p | ~p", just::taut{} ), line( "q", just::mp{ 1, 2 } ) } },
                      n_logic )
               .starts_with( "3:shape mismatch" ) );

    const proof ros{ { line( "~(p & ~p)", just::taut{} ), line( "~[](p & ~p)", just::ros{ 1 } ) } };
    CHECK( rejection( ros, n_logic ).starts_with( "2:rule disabled" ) );
    CHECK( rejection( ros, logic_id{ 1, 1, false, true } ) == "ok" );
    const proof ros_bad{ { line( "~(p & ~p)", just::taut{} ), line( "~[][](p & ~p)", just::ros{ 1 } ) } };
    CHECK( rejection( ros_bad, logic_id{ 1, 1, false, true } ).starts_with( "2:shape mismatch" ) );
    const proof rb_bad{ { line( "p | ~p", just::taut{} ), line( "~[][]p", just::rosbox{ 1 } ) } };
    CHECK( rejection( rb_bad, na02_plus ).starts_with( "2:shape mismatch" ) );
}

TEST_CASE( "acceptance is monotone in the rosbox flag" )
{
    testing::rng_t rng{ 52 };
    std::vector< proof_line > pool;
    for ( const auto& l : na02_plus_proof().lines )
        pool.push_back( l );
    for ( const char* text : { "p -> p", "[](p -> p)", "~[]#f", "~[][]#f", "[]#f -> #f", "~[][][]#f", "[][]p -> p" } )
        pool.push_back( line( text, just::taut{} ) );

    int accepted = 0;
    for ( int i = 0; i < 4000; ++i )
    {
        proof pr;
        const auto len = 1 + testing::pick( rng, 4 );
        for ( std::size_t k = 1; k <= len; ++k )
        {
            const auto stmt = pool[ testing::pick( rng, pool.size() ) ].statement;
            const auto prev = [ & ] { return 1 + testing::pick( rng, std::max< std::size_t >( k - 1, 1 ) ); };
            justification why;
            switch ( testing::pick( rng, 5 ) )
            {
            case 0: why = just::taut{}; break;
            case 1: why = just::axiom{}; break;
            case 2: why = just::mp{ prev(), prev() }; break;
            case 3: why = just::nec{ prev() }; break;
            default: why = just::rosbox{ prev() }; break;
            }
            pr.lines.push_back( { stmt, why } );
        }
        for ( std::size_t m = 0; m <= 2; ++m )
            for ( std::size_t n = 0; n <= 2; ++n )
                if ( !check_proof( pr, logic_id{ m, n, false, false } ) )
                {
                    ++accepted;
                    REQUIRE_FALSE( check_proof( pr, logic_id{ m, n, true, false } ) );
                }
    }
    CHECK( accepted > 50 );
}

TEST_CASE( "fixture theorems hold on accessible models" )
{
    struct fixture
    {
        proof pr;
        logic_id logic;
    };
    const fixture fixtures[] = {
        { na02_proof(), na02 },
        { na02_plus_proof(), na02_plus },
        { { { line( "p -> p", just::taut{} ), line( "[](p -> p)", just::nec{ 1 } ) } }, n_logic },
        { { { line( "[]p -> [][]p", just::axiom{} ) } }, logic_id{ 2, 1 } },
    };

    testing::rng_t rng{ 53 };
    for ( const auto& fx : fixtures )
    {
        REQUIRE_FALSE( check_proof( fx.pr, fx.logic ) );
        const auto theorem = fx.pr.lines.back().statement;
        int checked = 0;
        for ( int i = 0; i < 60000 && checked < 100; ++i )
        {
            const auto tracked = testing::interesting_formulas( theorem, 2 );
            const auto m = testing::random_model( rng, 3, tracked, { "p" }, 0.6 );
            if ( !is_fully_accessible( m, fx.logic.m, fx.logic.n ) )
                continue;
            ++checked;
            REQUIRE( valid( m, theorem ) );
        }
        CAPTURE( describe( fx.logic ) );
        CHECK( checked >= 100 );
    }
}

TEST_CASE( "proof json" )
{
    const auto doc = proof_from_json( R"({"logic":{"m":0,"n":2,"rosbox":true,"ros":false},"lines":[
        {"formula":"[][]#f -> #f","just":"axA"},
        {"formula":"([][]#f -> #f) -> ~[][]#f","just":"taut"},
        {"formula":"~[][]#f","just":{"mp":[1,2]}},
        {"formula":"~[][][]#f","just":{"rosbox":3}}]})" );
    CHECK( doc.logic == na02_plus );
    CHECK( doc.body.lines.size() == 4 );
    CHECK_FALSE( check_proof( doc.body, doc.logic ) );
    CHECK( proof_from_json( proof_to_json( doc ) ).body.lines.size() == 4 );
    CHECK( proof_to_json( proof_from_json( proof_to_json( doc ) ) ) == proof_to_json( doc ) );

    const char* bad[] = {
        "{",
        R"({"lines":[]})",
        R"({"logic":{"m":0,"n":2},"lines":[{"formula":"p |","just":"taut"}]})",
        R"({"logic":{"m":0,"n":2},"lines":[{"formula":"p","just":"magic"}]})",
        R"({"logic":{"m":0,"n":2},"lines":[{"formula":"p","just":{"mp":[1]}}]})",
        R"({"logic":{"m":-1,"n":2},"lines":[]})",
    };
    for ( const auto* text : bad )
    {
        CAPTURE( text );
        CHECK_THROWS_AS( (void)proof_from_json( text ), input_error );
    }
}
