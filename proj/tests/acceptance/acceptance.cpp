// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "nbox/countermodels.hpp"
#include "nbox/decide.hpp"
#include "nbox/model_io.hpp"
#include "nbox/proof.hpp"
#include "nbox/semantics.hpp"
#include "nbox/syntax.hpp"

#include "generators.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nbox;

namespace
{

struct verdict
{
    bool pass;
    std::string detail;
};

struct criterion
{
    const char* name;
    std::function< verdict() > run;
};

std::string status_of( const decision_result& r )
{
    if ( std::holds_alternative< provable >( r ) )
        return "provable";
    if ( std::holds_alternative< unprovable >( r ) )
        return "unprovable";
    return "resource_limit";
}

decide_options sequential()
{
    decide_options o;
    o.sequential = true;
    return o;
}

bool naive_sat( const model& m, world_id w, formula f )
{
    switch ( f.kind() )
    {
    case formula_kind::bottom: return false;
    case formula_kind::var: return contains( m.truth_set( f.name() ), w );
    case formula_kind::neg: return !naive_sat( m, w, f.child() );
    case formula_kind::disj: return naive_sat( m, w, f.left() ) || naive_sat( m, w, f.right() );
    case formula_kind::box:
        for ( world_id v = 0; v < m.world_count(); ++v )
            if ( contains( m.successors( w, f.child() ), v ) && !naive_sat( m, v, f.child() ) )
                return false;
        return true;
    }
    return false;
}

// Endpoints of f-paths of length k from x, by the recursive definition.
world_set naive_path_ends( const model& m, formula f, std::size_t k, world_id x )
{
    if ( k == 0 )
        return singleton( x );
    world_set out = 0;
    const auto step = m.successors( x, box_iter( k - 1, f ) );
    for ( world_id w = 0; w < m.world_count(); ++w )
        if ( contains( step, w ) )
            out |= naive_path_ends( m, f, k - 1, w );
    return out;
}

// Serializes, reloads, and re-checks an unprovable certificate.
bool certificate_checks( const unprovable& u, formula psi, const logic_id& logic )
{
    const auto back = model_from_json( model_to_json( u.model ) );
    const auto w = back.world( u.model.world_name( u.world ) );
    return !satisfies( back, w, psi ) && !naive_sat( back, w, psi ) &&
           is_set_accessible( back, sub( psi ), logic.m, logic.n );
}

verdict box_k_property()
{
    testing::rng_t rng{ 1001 };
    const auto atoms = testing::leaves( { "p", "q" } );
    std::size_t models = 0;
    std::size_t checks = 0;
    std::size_t disagreements = 0;
    for ( ; models < 1200; ++models )
    {
        const auto f = testing::random_formula( rng, 3, atoms );
        const std::size_t k = testing::pick( rng, 4 );
        const auto m = testing::random_model( rng, 4, testing::interesting_formulas( f, 3 ), { "p", "q" }, 0.45 );
        for ( world_id w = 0; w < m.world_count(); ++w )
        {
            ++checks;
            const bool lhs = satisfies( m, w, box_iter( k, f ) );
            bool rhs = true;
            const auto ends = naive_path_ends( m, f, k, w );
            for ( world_id v = 0; v < m.world_count(); ++v )
                if ( contains( ends, v ) && !naive_sat( m, v, f ) )
                    rhs = false;
            if ( lhs != rhs || !box_k_semantics_check( m, w, f, k ) )
                ++disagreements;
        }
    }
    std::ostringstream d;
    d << models << " models, " << checks << " world checks, " << disagreements << " disagreements";
    return { models >= 1000 && disagreements == 0, d.str() };
}

verdict restriction_invariance()
{
    testing::rng_t rng{ 1002 };
    const auto atoms = testing::leaves( { "p", "q" } );
    std::size_t perturbations = 0;
    std::size_t changed = 0;
    for ( ; perturbations < 600; ++perturbations )
    {
        const auto psi = testing::random_formula( rng, 3, atoms );
        const auto subs = sub( psi );
        auto m = testing::random_model( rng, 4, testing::interesting_formulas( psi, 1 ), { "p", "q" }, 0.5 );
        for ( auto g : subs )
            if ( g.is( formula_kind::box ) )
                m.set_relation( g.child(), m.relation_of( g.child() ) );

        auto perturbed = m;
        perturbed.set_policy( testing::random_policy( rng ) );
        formula_set irrelevant = testing::interesting_formulas( psi, 2 );
        for ( int i = 0; i < 3; ++i )
            irrelevant.insert( testing::random_formula( rng, 3, atoms ) );
        for ( auto f : irrelevant )
            if ( !subs.contains( formula::box( f ) ) && testing::coin( rng, 0.7 ) )
                perturbed.set_relation( f, testing::random_relation( rng, m.world_count(), 0.5 ) );

        for ( world_id w = 0; w < m.world_count(); ++w )
            if ( satisfies( m, w, psi ) != satisfies( perturbed, w, psi ) )
            {
                ++changed;
                break;
            }
    }
    std::ostringstream d;
    d << perturbations << " perturbations, " << changed << " changed a satisfaction value";
    return { perturbations >= 500 && changed == 0, d.str() };
}

verdict n_corpus()
{
    const logic_id n{ 1, 1 };
    const std::pair< const char*, const char* > corpus[] = {
        { "[](p -> p)", "provable" },     { "[][](p | ~p)", "provable" }, { "[]p -> p", "unprovable" },
        { "[]p -> [][]p", "unprovable" }, { "p -> []p", "unprovable" },
    };
    std::size_t ok = 0;
    std::ostringstream d;
    for ( const auto& [ text, expected ] : corpus )
    {
        const auto psi = parse( text );
        const auto r = decide( n, psi, sequential() );
        bool good = status_of( r ) == expected;
        if ( const auto* u = std::get_if< unprovable >( &r ) )
            good = good && certificate_checks( *u, psi, n );
        ok += good;
        if ( !good )
            d << "[" << text << " -> " << status_of( r ) << "] ";
    }
    d << ok << "/" << std::size( corpus ) << " verdicts with verified certificates";
    return { ok == std::size( corpus ), d.str() };
}

verdict n4_regime()
{
    const auto four = parse( "[]p -> [][]p" );
    const auto t = parse( "[]p -> p" );
    bool pass = true;
    std::ostringstream d;
    for ( bool rosbox : { false, true } )
    {
        const logic_id l{ 2, 1, rosbox };
        const auto a = decide( l, four, sequential() );
        const auto b = decide( l, t, sequential() );
        d << ( rosbox ? "; rosbox on: " : "rosbox off: " ) << status_of( a ) << "/" << status_of( b );
        pass = pass && status_of( a ) == "provable" && status_of( b ) == "unprovable";
        if ( const auto* u = std::get_if< unprovable >( &b ) )
            pass = pass && certificate_checks( *u, t, l );
    }
    return { pass, d.str() };
}

verdict na02_plus()
{
    const logic_id plus{ 0, 2, true };
    const bool d2 = status_of( decide( plus, parse( "~[][]#f" ) ) ) == "provable";
    const bool d3 = status_of( decide( plus, parse( "~[][][]#f" ) ) ) == "provable";

    const auto three = proof_from_json( R"({"logic":{"m":0,"n":2,"rosbox":false,"ros":false},"lines":[
        {"formula":"[][]#f -> #f","just":"axA"},
        {"formula":"([][]#f -> #f) -> ~[][]#f","just":"taut"},
        {"formula":"~[][]#f","just":{"mp":[1,2]}}]})" );
    auto four = three;
    four.logic = plus;
    four.body.lines.push_back( { parse( "~[][][]#f" ), just::rosbox{ 3 } } );

    const bool p3 = !check_proof( three.body, three.logic ) && three.body.lines.back().statement == parse( "~[][]#f" );
    const bool p4 = !check_proof( four.body, four.logic );
    const auto off = check_proof( four.body, logic_id{ 0, 2, false } );
    const bool rejected = off && off->line == 4 && off->reason.starts_with( "rule disabled" );

    std::ostringstream d;
    d << "decide ~[]^2#f " << ( d2 ? "provable" : "NOT provable" ) << ", ~[]^3#f " << ( d3 ? "provable" : "NOT provable" )
      << "; 3-line proof " << ( p3 ? "accepted" : "rejected" ) << "; 4-line proof " << ( p4 ? "accepted" : "rejected" )
      << "; without rosbox " << ( off ? "line " + std::to_string( off->line ) + ": " + off->reason : "accepted" );
    return { d2 && d3 && p3 && p4 && rejected, d.str() };
}

verdict separation()
{
    const auto m2 = fig1_model( 2 );
    const auto a = m2.world( "a" );
    const auto b = m2.world( "b" );
    const bool top = satisfies( m2, a, box_iter( 3, formula::bottom() ) );
    const bool not_valid = !valid( m2, formula::neg( box_iter( 3, formula::bottom() ) ) );

    auto corpus = testing::all_formulas( 2, testing::leaves( { "p" } ) );
    testing::rng_t rng{ 1006 };
    const auto atoms = testing::leaves( { "p", "q" } );
    for ( int i = 0; i < 400; ++i )
    {
        // Force depth 4 at least along one spine half of the time.
        auto f = testing::random_formula( rng, 4, atoms );
        if ( i % 2 == 0 && f.depth() < 4 )
            f = formula::box( formula::neg( formula::disj( testing::random_formula( rng, 1, atoms ), formula::box( f ) ) ) );
        corpus.push_back( f );
    }

    std::size_t failures = 0;
    std::size_t depth4 = 0;
    for ( std::size_t n = 2; n <= 3; ++n )
    {
        const auto m = fig1_model( n );
        for ( auto psi : corpus )
        {
            if ( psi.depth() > 4 )
                continue;
            depth4 += ( n == 2 && psi.depth() == 4 );
            if ( m.related( a, box_iter( n - 1, psi ), b ) != !satisfies( m, a, psi ) ||
                 !valid( m, formula::implies( box_iter( n, psi ), psi ) ) )
                ++failures;
        }
    }
    std::ostringstream d;
    d << "a |= []^3#f: " << ( top ? "yes" : "no" ) << "; ~[]^3#f valid: " << ( not_valid ? "no" : "yes" ) << "; "
      << corpus.size() << " formulas (" << depth4 << " of depth 4) x n in {2,3}, " << failures << " failures";
    return { top && not_valid && corpus.size() >= 200 && failures == 0, d.str() };
}

verdict truth_lemma()
{
    const char* formulas[] = { "p", "[]p", "[]p -> p", "[]p -> [][]p" };
    const logic_id logics[] = { { 1, 1 }, { 2, 1 }, { 0, 2, true } };
    std::size_t ok = 0;
    std::size_t total = 0;
    std::ostringstream d;
    for ( const auto& l : logics )
        for ( const auto* text : formulas )
        {
            ++total;
            bool good = false;
            try
            {
                good = truth_lemma_check( l, parse( text ) );
            }
            catch ( const resource_limit_error& e )
            {
                d << "[" << describe( l ) << " " << text << ": " << e.what() << "] ";
            }
            if ( !good )
                d << "[" << describe( l ) << " " << text << " failed] ";
            ok += good;
        }
    d << ok << "/" << total << " instances";
    return { ok == total, d.str() };
}

verdict frame_extension()
{
    testing::rng_t rng{ 1008 };
    const auto atoms = testing::leaves( { "p", "q" } );
    const std::pair< std::size_t, std::size_t > regimes[] = { { 2, 1 }, { 1, 2 }, { 0, 2 }, { 2, 2 } };
    std::size_t per_regime[ 4 ] = {};
    std::size_t failures = 0;
    for ( std::size_t i = 0; i < 100000; ++i )
    {
        const auto r = i % 4;
        if ( per_regime[ r ] >= 60 )
        {
            if ( std::all_of( std::begin( per_regime ), std::end( per_regime ), []( auto c ) { return c >= 60; } ) )
                break;
            continue;
        }
        const auto [ m, n ] = regimes[ r ];
        const auto psi = testing::random_formula( rng, 3, atoms );
        const auto rc = relevance_closure( psi, m, n );
        const auto mod = testing::random_model( rng, 3, rc, { "p", "q" }, 0.6 );
        if ( !is_set_accessible( mod, sub( psi ), m, n ) )
            continue;
        ++per_regime[ r ];
        const auto ext = extend_frame( mod, psi, m, n );
        const bool accessible = is_set_accessible( ext, rc, m, n ) && ext.policy() == default_policy::identity &&
                                default_tail_accessible( ext.policy(), m, n, ext.world_count() ) &&
                                is_fully_accessible( ext, m, n );
        if ( !accessible || valid( ext, psi ) != valid( mod, psi ) )
            ++failures;
    }
    std::size_t total = 0;
    std::ostringstream d;
    for ( std::size_t r = 0; r < 4; ++r )
    {
        total += per_regime[ r ];
        d << "(" << regimes[ r ].first << "," << regimes[ r ].second << "):" << per_regime[ r ] << " ";
    }
    d << "models, " << failures << " failures";
    return { total >= 200 && failures == 0, d.str() };
}

verdict oracle_agreement()
{
    testing::rng_t rng{ 1009 };
    const auto atoms = testing::leaves( { "p", "q" } );
    const logic_id logics[] = { { 1, 1 }, { 2, 1 }, { 0, 1 } };
    std::size_t checked = 0;
    std::size_t found = 0;
    std::size_t skipped = 0;
    std::size_t contradictions = 0;
    for ( std::size_t i = 0; checked < 240 && i < 20000; ++i )
    {
        const auto psi = testing::random_formula( rng, 3, atoms );
        const auto& logic = logics[ i % 3 ];
        if ( generators( psi ).size() > 3 )
            continue;
        if ( observable_relations( psi, logic.m, logic.n ).size() > brute_force_max_relations )
        {
            ++skipped;
            continue;
        }
        ++checked;
        const auto bf = brute_force_countermodel( logic, psi, brute_force_max_worlds );
        if ( !bf )
            continue;
        ++found;
        const auto r = decide( logic, psi, sequential() );
        if ( status_of( r ) != "unprovable" )
            ++contradictions;
        else if ( !certificate_checks( std::get< unprovable >( r ), psi, logic ) )
            ++contradictions;
    }
    std::ostringstream d;
    d << checked << " formulas (" << skipped << " skipped over the brute-force caps), " << found
      << " brute-force countermodels, " << contradictions << " contradictions";
    return { checked >= 200 && contradictions == 0, d.str() };
}

verdict regime_identities()
{
    std::vector< formula > corpus;
    for ( const auto* text :
          { "[](p -> p)", "[][](p | ~p)", "[]p -> p", "[]p -> [][]p", "p -> []p", "[]#f", "~[]#f", "[](p & q) -> []p" } )
        corpus.push_back( parse( text ) );
    testing::rng_t rng{ 1010 };
    const auto atoms = testing::leaves( { "p", "q" } );
    while ( corpus.size() < 80 )
    {
        const auto f = testing::random_formula( rng, 3, atoms );
        if ( generators( f ).size() <= 3 )
            corpus.push_back( f );
    }
    std::size_t mismatches = 0;
    for ( auto psi : corpus )
    {
        const auto a = status_of( decide( logic_id{ 0, 0 }, psi ) );
        const auto b = status_of( decide( logic_id{ 1, 1 }, psi ) );
        if ( a != b || a == "resource_limit" )
            ++mismatches;
    }
    const bool axiom = status_of( decide( logic_id{ 0, 1 }, parse( "[]p -> p" ) ) ) == "provable";
    std::ostringstream d;
    d << corpus.size() << " formulas, " << mismatches << " (0,0)/(1,1) mismatches; decide(0,1) []p -> p "
      << ( axiom ? "provable" : "NOT provable" );
    return { mismatches == 0 && axiom, d.str() };
}

} // namespace

int main()
{
    const criterion criteria[] = {
        { "box-k satisfaction", box_k_property },
        { "relation-restriction invariance", restriction_invariance },
        { "decision corpus for N", n_corpus },
        { "N4 regime", n4_regime },
        { "N+A_{0,2} decisions and proofs", na02_plus },
        { "NA_{0,2} / N+A_{0,2} separation", separation },
        { "truth lemma", truth_lemma },
        { "frame extension", frame_extension },
        { "brute-force oracle agreement", oracle_agreement },
        { "regime identities", regime_identities },
    };

    int failed = 0;
    int index = 0;
    for ( const auto& c : criteria )
    {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        verdict v;
        try
        {
            v = c.run();
        }
        catch ( const std::exception& e )
        {
            v = { false, std::string{ "exception: " } + e.what() };
        }
        const auto ms =
                std::chrono::duration_cast< std::chrono::milliseconds >( std::chrono::steady_clock::now() - start ).count();
        failed += !v.pass;
        std::cout << ( v.pass ? "PASS" : "FAIL" ) << " [" << index << "] " << c.name << ": " << v.detail << " (" << ms
                  << " ms)" << std::endl;
    }
    std::cout << ( failed == 0 ? "all criteria passed" : std::to_string( failed ) + " criteria failed" ) << std::endl;
    return failed == 0 ? 0 : 1;
}
