#include "nbox/countermodels.hpp"
#include "nbox/decide.hpp"
#include "nbox/semantics.hpp"
#include "nbox/syntax.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nbox;

namespace
{

const char* const corpus[] = {
    "[](p -> p)", "[]p -> p", "[]p -> [][]p", "[](p & q) -> []p", "<>p -> [][]<>p",
};

// A dense extensional model over the relations of psi.
extensional_model sample_model( formula psi, std::size_t worlds, std::uint64_t seed )
{
    std::mt19937_64 rng{ seed };
    std::vector< std::string > names;
    for ( std::size_t i = 0; i < worlds; ++i )
        names.push_back( "w" + std::to_string( i ) );
    extensional_model m{ names, default_policy::total };
    for ( auto g : sub( psi ) )
    {
        relation r{ worlds };
        for ( world_id x = 0; x < worlds; ++x )
            r.set_successors( x, rng() & all_of( worlds ) );
        m.set_relation( g, r );
    }
    for ( const auto& v : variables( psi ) )
        m.set_truth_set( v, rng() & all_of( worlds ) );
    return m;
}

} // namespace

static void BM_parse( benchmark::State& state )
{
    const std::string text = "[](p & q -> r) -> ([]p & []q -> <>[]r | ~[][]#f) -> [][](p | ~q)";
    for ( auto _ : state )
        benchmark::DoNotOptimize( parse( text ) );
}
BENCHMARK( BM_parse );

static void BM_extension( benchmark::State& state )
{
    const auto psi = parse( "[](p -> []q) -> ([]p -> [][]q) | <>~[]p" );
    const auto m = sample_model( psi, static_cast< std::size_t >( state.range( 0 ) ), 7 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( extension( m, psi ) );
}
BENCHMARK( BM_extension )->Arg( 4 )->Arg( 16 )->Arg( 64 );

static void BM_full_accessibility( benchmark::State& state )
{
    const auto psi = parse( "[][][]p -> [](q | []p)" );
    const auto m = sample_model( psi, static_cast< std::size_t >( state.range( 0 ) ), 11 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( is_fully_accessible( m, 2, 3 ) );
}
BENCHMARK( BM_full_accessibility )->Arg( 4 )->Arg( 16 )->Arg( 64 );

static void BM_decide_corpus( benchmark::State& state )
{
    std::vector< formula > formulas;
    for ( const auto* text : corpus )
        formulas.push_back( parse( text ) );
    decide_options options;
    options.sequential = state.range( 0 ) == 1;
    for ( auto _ : state )
        for ( auto psi : formulas )
            benchmark::DoNotOptimize( decide( logic_id{ 2, 1 }, psi, options ) );
}
BENCHMARK( BM_decide_corpus )->Arg( 1 )->Arg( 0 )->Unit( benchmark::kMillisecond );

static void BM_decide_provable_four_generators( benchmark::State& state )
{
    const auto psi = parse( "[](p -> p) | []q" );
    if ( !std::holds_alternative< provable >( decide( logic_id{ 1, 1 }, psi ) ) )
        state.SkipWithError( "expected a provable formula" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( decide( logic_id{ 1, 1 }, psi ) );
}
BENCHMARK( BM_decide_provable_four_generators )->Unit( benchmark::kMillisecond );

static void BM_brute_force( benchmark::State& state )
{
    const auto psi = parse( "[][]p -> []p" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( brute_force_countermodel( logic_id{ 1, 1 }, psi, 2 ) );
}
BENCHMARK( BM_brute_force );

static void BM_fig1_claim( benchmark::State& state )
{
    const auto m = fig1_model( 3 );
    const auto psi = parse( "[](~[]p | [][]#f) | ~[]([]p | ~p)" );
    for ( auto _ : state )
        benchmark::DoNotOptimize( m.related( 0, box_iter( 2, psi ), 1 ) );
}
BENCHMARK( BM_fig1_claim );

BENCHMARK_MAIN();
