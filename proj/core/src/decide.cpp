#include "nbox/decide.hpp"

#include "nbox/semantics.hpp"
#include "nbox/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace nbox
{

namespace
{

// Value of f when the generators are read as independent atoms.
bool propositional_value( formula f, const std::unordered_map< formula, bool >& atoms )
{
    switch ( f.kind() )
    {
    case formula_kind::bottom: return false;
    case formula_kind::var:
    case formula_kind::box: return atoms.at( f );
    case formula_kind::neg: return !propositional_value( f.child(), atoms );
    case formula_kind::disj: return propositional_value( f.left(), atoms ) || propositional_value( f.right(), atoms );
    }
    return false;
}

std::string type_name( const world_type& t ) { return "t" + std::to_string( t.assignment ); }

// Precomputed membership masks over a fixed list of types, so canonical
// models over any selection of them are cheap to build.
class canonical_builder
{
    struct boxed_entry
    {
        formula body;
        std::uint64_t box_member; // types containing []body
        std::uint64_t body_member; // types containing body
    };

    std::vector< std::string > _names;
    std::vector< boxed_entry > _boxed;
    std::vector< std::pair< std::string, std::uint64_t > > _vars;

public:
    canonical_builder( std::span< const world_type > types, formula psi )
    {
        if ( types.size() > max_worlds )
            throw precondition_error( "too many world types for one model" );
        for ( const auto& t : types )
            _names.push_back( type_name( t ) );

        auto members_of = [ & ]( formula f ) {
            std::uint64_t mask = 0;
            for ( std::size_t i = 0; i < types.size(); ++i )
                if ( types[ i ].has( f ) )
                    mask |= std::uint64_t{ 1 } << i;
            return mask;
        };

        for ( auto g : nsub( psi ) )
        {
            if ( g.is( formula_kind::box ) )
                _boxed.push_back( { g.child(), members_of( g ), members_of( g.child() ) } );
            else if ( g.is( formula_kind::var ) )
                _vars.emplace_back( g.name(), members_of( g ) );
        }
    }

    [[nodiscard]] std::size_t size() const { return _names.size(); }

    // picks: indices into the type list, in the order the worlds should take.
    [[nodiscard]] extensional_model build( std::span< const std::size_t > picks ) const
    {
        if ( picks.empty() )
            throw precondition_error( "a canonical model needs at least one world type" );

        std::vector< std::string > names;
        names.reserve( picks.size() );
        for ( auto i : picks )
            names.push_back( _names.at( i ) );
        extensional_model out{ std::move( names ), default_policy::total };

        auto restrict = [ & ]( std::uint64_t mask ) {
            world_set ws = 0;
            for ( std::size_t w = 0; w < picks.size(); ++w )
                if ( ( mask >> picks[ w ] ) & 1U )
                    ws |= singleton( w );
            return ws;
        };

        for ( const auto& e : _boxed )
        {
            const auto targets = restrict( e.body_member );
            relation r{ picks.size() };
            for ( std::size_t w = 0; w < picks.size(); ++w )
                r.set_successors( w, ( ( e.box_member >> picks[ w ] ) & 1U ) ? targets : out.all_worlds() );
            out.set_relation( e.body, std::move( r ) );
        }
        for ( const auto& [ var, mask ] : _vars )
            out.set_truth_set( var, restrict( mask ) );
        return out;
    }
};

void validate( const logic_id& logic )
{
    if ( logic.ros )
        throw config_error( "the decision procedure does not cover logics with the Rosser rule" );
    if ( logic.m == 0 && logic.n >= 2 && !logic.rosbox )
        throw config_error( "NA_{0," + std::to_string( logic.n ) +
                            "} is incomplete for its frames; only N+A_{0,n} (rosbox) is decided" );
}

// Lexicographic k-combinations of {0..count-1}.
class combinations
{
    std::vector< std::size_t > _idx;
    std::size_t _count;
    bool _done = false;

public:
    combinations( std::size_t count, std::size_t k ) : _idx( k ), _count{ count }
    {
        std::iota( _idx.begin(), _idx.end(), 0 );
        _done = k > count || k == 0;
    }

    [[nodiscard]] bool done() const { return _done; }
    [[nodiscard]] const std::vector< std::size_t >& current() const { return _idx; }

    void advance()
    {
        const auto k = _idx.size();
        std::size_t i = k;
        while ( i > 0 && _idx[ i - 1 ] == _count - k + ( i - 1 ) )
            --i;
        if ( i == 0 )
        {
            _done = true;
            return;
        }
        ++_idx[ i - 1 ];
        for ( auto j = i; j < k; ++j )
            _idx[ j ] = _idx[ j - 1 ] + 1;
    }
};

struct search_context
{
    const canonical_builder& builder;
    formula psi;
    formula_set gamma;
    std::size_t m;
    std::size_t n;

    [[nodiscard]] std::optional< unprovable > evaluate( std::span< const std::size_t > picks ) const
    {
        auto model = builder.build( picks );
        const auto falsified = model.all_worlds() & ~extension( model, psi );
        if ( falsified == 0 )
            return std::nullopt;
        if ( !is_set_accessible( model, gamma, m, n ) )
            return std::nullopt;
        const auto w = static_cast< world_id >( std::countr_zero( falsified ) );
        return unprovable{ std::move( model ), w };
    }
};

} // namespace

std::vector< formula > generators( formula psi )
{
    std::vector< formula > out;
    for ( auto g : sub( psi ) )
        if ( g.is( formula_kind::var ) || g.is( formula_kind::box ) )
            out.push_back( g );
    return out;
}

std::vector< world_type > world_types( formula psi, std::size_t max_generators )
{
    const auto gens = generators( psi );
    const auto cap = std::min( max_generators, hard_max_generators );
    if ( gens.size() > cap )
        throw resource_limit_error( std::to_string( gens.size() ) + " generators exceed the cap of " +
                                    std::to_string( cap ) );

    const auto universe = nsub( psi );
    std::vector< world_type > out;
    const std::uint64_t count = std::uint64_t{ 1 } << gens.size();
    out.reserve( count );
    std::unordered_map< formula, bool > atoms;
    for ( std::uint64_t a = 0; a < count; ++a )
    {
        for ( std::size_t i = 0; i < gens.size(); ++i )
            atoms[ gens[ i ] ] = ( ( a >> i ) & 1U ) != 0;
        world_type t{ a, {} };
        for ( auto rho : universe )
            if ( propositional_value( rho, atoms ) )
                t.members.insert( rho );
        out.push_back( std::move( t ) );
    }
    return out;
}

extensional_model canonical_model( std::span< const world_type > types, formula psi )
{
    canonical_builder builder{ types, psi };
    std::vector< std::size_t > picks( types.size() );
    std::iota( picks.begin(), picks.end(), 0 );
    return builder.build( picks );
}

decision_result decide( const logic_id& logic, formula psi, const decide_options& options )
{
    validate( logic );

    std::vector< world_type > types;
    try
    {
        types = world_types( psi, options.max_generators );
    }
    catch ( const resource_limit_error& e )
    {
        return resource_limit{ 0, e.what() };
    }

    const canonical_builder builder{ types, psi };
    const search_context ctx{ builder, psi, sub( psi ), logic.m, logic.n };

    const auto deadline = std::chrono::steady_clock::now() + options.budget;
    const unsigned threads = options.sequential ? 1U
                             : options.threads ? options.threads
                                               : std::max( 1U, std::thread::hardware_concurrency() );
    const std::size_t batch_size = threads == 1 ? 1 : 64 * threads;

    std::uint64_t explored = 0;
    std::vector< std::vector< std::size_t > > batch;
    std::vector< std::optional< unprovable > > hits;

    auto out_of_budget = [ & ]() -> std::optional< resource_limit > {
        if ( options.max_subsets != 0 && explored >= options.max_subsets )
            return resource_limit{ explored, "subset budget of " + std::to_string( options.max_subsets ) + " exhausted" };
        if ( std::chrono::steady_clock::now() >= deadline )
            return resource_limit{ explored, "time budget of " + std::to_string( options.budget.count() ) +
                                                     " ms exhausted" };
        return std::nullopt;
    };

    // Evaluates the batch; returns the first hit in batch order.
    auto flush = [ & ]() -> std::optional< unprovable > {
        hits.assign( batch.size(), std::nullopt );
        if ( threads == 1 || batch.size() == 1 )
        {
            for ( std::size_t i = 0; i < batch.size(); ++i )
                if ( ( hits[ i ] = ctx.evaluate( batch[ i ] ) ) )
                    break;
        }
        else
        {
            std::atomic< std::size_t > next{ 0 };
            std::vector< std::jthread > pool;
            for ( unsigned t = 0; t < threads; ++t )
                pool.emplace_back( [ & ] {
                    for ( auto i = next++; i < batch.size(); i = next++ )
                        hits[ i ] = ctx.evaluate( batch[ i ] );
                } );
        }
        explored += batch.size();
        batch.clear();
        for ( auto& h : hits )
            if ( h )
                return std::move( h );
        return std::nullopt;
    };

    for ( auto k = types.size(); k >= 1; --k )
    {
        for ( combinations c{ types.size(), k }; !c.done(); c.advance() )
        {
            if ( auto limit = out_of_budget() )
                return *limit;
            batch.push_back( c.current() );
            if ( batch.size() >= batch_size )
                if ( auto hit = flush() )
                    return std::move( *hit );
        }
    }
    if ( !batch.empty() )
        if ( auto hit = flush() )
            return std::move( *hit );
    return provable{};
}

extensional_model extend_frame( const extensional_model& m, formula psi, std::size_t m_len, std::size_t n_len )
{
    const auto subs = sub( psi );
    if ( auto v = find_set_accessibility_violation( m, subs, m_len, n_len ) )
        throw precondition_error( "model is not Sub(psi)-(" + std::to_string( m_len ) + "," + std::to_string( n_len ) +
                                  ")-accessible: " + print( v->rho ) + "-path of length " + std::to_string( m_len ) +
                                  " from " + m.world_name( v->from ) + " to " + m.world_name( v->to ) +
                                  " has no matching path of length " + std::to_string( n_len ) );

    extensional_model out{ m.worlds(), default_policy::identity };
    for ( const auto& [ var, ws ] : m.valuation() )
        out.set_truth_set( var, ws );

    for ( auto phi : subs )
    {
        if ( subs.contains( formula::box( phi ) ) )
            out.set_relation( phi, m.relation_of( phi ) );
        else if ( n_len > m_len )
            out.set_relation( phi, relation::total( m.world_count() ) );
        else if ( m_len > n_len )
            out.set_relation( phi, relation::empty( m.world_count() ) );
    }
    return out;
}

formula_set observable_relations( formula psi, std::size_t m_len, std::size_t n_len )
{
    formula_set out;
    const auto subs = sub( psi );
    for ( auto g : subs )
        if ( g.is( formula_kind::box ) )
            out.insert( g.child() );
    const auto reach = std::max( m_len, n_len );
    for ( auto g : subs )
    {
        if ( box_depth( g ) < m_len )
            continue;
        const auto rho = strip_boxes( m_len, g );
        for ( std::size_t i = 0; i < reach; ++i )
            out.insert( box_iter( i, rho ) );
    }
    return out;
}

std::optional< std::pair< extensional_model, world_id > > brute_force_countermodel( const logic_id& logic, formula psi,
                                                                                     std::size_t max_worlds )
{
    if ( max_worlds > brute_force_max_worlds )
        throw resource_limit_error( "brute force is capped at " + std::to_string( brute_force_max_worlds ) + " worlds" );
    const auto observed = observable_relations( psi, logic.m, logic.n );
    if ( observed.size() > brute_force_max_relations )
        throw resource_limit_error( std::to_string( observed.size() ) + " observable relations exceed the cap of " +
                                    std::to_string( brute_force_max_relations ) );

    const std::vector< formula > rels( observed.begin(), observed.end() );
    const auto vars_set = variables( psi );
    const std::vector< std::string > vars( vars_set.begin(), vars_set.end() );
    const auto gamma = sub( psi );

    for ( std::size_t size = 1; size <= max_worlds; ++size )
    {
        std::vector< std::string > names;
        for ( std::size_t i = 0; i < size; ++i )
            names.push_back( "w" + std::to_string( i ) );

        const std::size_t bits_per_rel = size * size;
        const std::uint64_t frames = std::uint64_t{ 1 } << ( bits_per_rel * rels.size() );
        const std::uint64_t valuations = std::uint64_t{ 1 } << ( size * vars.size() );

        for ( std::uint64_t code = 0; code < frames; ++code )
        {
            extensional_model m{ names, default_policy::identity };
            for ( std::size_t r = 0; r < rels.size(); ++r )
            {
                relation rel{ size };
                for ( std::size_t x = 0; x < size; ++x )
                    for ( std::size_t y = 0; y < size; ++y )
                        if ( ( code >> ( r * bits_per_rel + x * size + y ) ) & 1U )
                            rel.insert( x, y );
                m.set_relation( rels[ r ], std::move( rel ) );
            }
            if ( !is_set_accessible( m, gamma, logic.m, logic.n ) )
                continue;

            for ( std::uint64_t val = 0; val < valuations; ++val )
            {
                for ( std::size_t v = 0; v < vars.size(); ++v )
                    m.set_truth_set( vars[ v ], ( val >> ( v * size ) ) & all_of( size ) );
                const auto falsified = m.all_worlds() & ~extension( m, psi );
                if ( falsified != 0 )
                    return std::pair{ m, static_cast< world_id >( std::countr_zero( falsified ) ) };
            }
        }
    }
    return std::nullopt;
}

bool truth_lemma_check( const logic_id& logic, formula psi, const decide_options& options )
{
    const auto types = world_types( psi, options.max_generators );

    std::vector< world_type > consistent;
    for ( const auto& t : types )
    {
        const auto result = decide( logic, formula::neg( big_conj( t.members ) ), options );
        if ( const auto* limit = std::get_if< resource_limit >( &result ) )
            throw resource_limit_error( "consistency of " + type_name( t ) + ": " + limit->reason );
        if ( std::holds_alternative< unprovable >( result ) )
            consistent.push_back( t );
    }
    if ( consistent.empty() )
        return false;

    const auto model = canonical_model( consistent, psi );
    const auto universe = nsub( psi );
    for ( world_id w = 0; w < consistent.size(); ++w )
        for ( auto rho : universe )
            if ( satisfies( model, w, rho ) != consistent[ w ].has( rho ) )
                return false;
    return true;
}

} // namespace nbox
