#include "cli.hpp"

#include "nbox/countermodels.hpp"
#include "nbox/decide.hpp"
#include "nbox/model_io.hpp"
#include "nbox/proof.hpp"
#include "nbox/semantics.hpp"
#include "nbox/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#ifndef NBOX_VERSION
#define NBOX_VERSION "0.0.0"
#endif

namespace nbox::cli
{

namespace
{

using nlohmann::json;

std::string version_text()
{
    std::ostringstream out;
    out << "nbox " << NBOX_VERSION << '\n'
        << "decide: max generators " << default_max_generators << " (hard limit " << hard_max_generators
        << "), budget " << default_budget.count() << " ms\n"
        << "brute force: max worlds " << brute_force_max_worlds << ", max relations " << brute_force_max_relations;
    return out.str();
}

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw input_error( "cannot read \"" + path + "\"" );
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream out{ path, std::ios::binary };
    if ( !out )
        throw input_error( "cannot write \"" + path + "\"" );
    out << text << '\n';
}

json violation_json( const model& m, const accessibility_violation& v )
{
    return { { "formula", print( v.rho ) }, { "from", m.world_name( v.from ) }, { "to", m.world_name( v.to ) } };
}

struct options
{
    bool pretty = false;

    // parse
    std::string formula_text;

    // mc / frame
    std::string model_path;
    std::string world;
    bool dot = false;
    std::string property = "accessible";
    std::optional< std::string > scope_formula;
    std::optional< std::string > scope_sub;
    std::optional< std::string > scope_closure;
    bool scope_full = false;

    // proof
    std::string proof_path;

    // decide / frame
    std::size_t m = 1;
    std::size_t n = 1;
    bool rosbox = false;
    std::string emit;
    std::size_t max_generators = default_max_generators;
    long long budget_ms = default_budget.count();
    bool sequential = false;

    // countermodel
    std::string psi;
    std::optional< std::string > probe;
};

class runner
{
    const options& _opt;
    std::ostream& _out;
    std::ostream& _err;

    void emit_json( const json& j ) const { _out << j.dump( _opt.pretty ? 2 : -1 ) << '\n'; }

public:
    runner( const options& opt, std::ostream& out, std::ostream& err ) : _opt{ opt }, _out{ out }, _err{ err } {}

    int parse_cmd() const
    {
        const auto f = parse( _opt.formula_text );
        emit_json( { { "formula", print( f ) }, { "ast", json::parse( to_json_ast( f ) ) } } );
        return exit_ok;
    }

    int mc_cmd() const
    {
        const auto m = model_from_json( read_file( _opt.model_path ) );
        if ( _opt.dot )
        {
            _out << model_to_dot( m );
            return exit_ok;
        }
        const auto f = parse( _opt.formula_text );
        const auto ext = extension( m, f );
        if ( !_opt.world.empty() )
        {
            emit_json( { { "holds", contains( ext, m.world( _opt.world ) ) } } );
            return exit_ok;
        }
        json per_world = json::object();
        for ( world_id w = 0; w < m.world_count(); ++w )
            per_world[ m.world_name( w ) ] = contains( ext, w );
        emit_json( { { "valid", ext == m.all_worlds() }, { "worlds", per_world } } );
        return exit_ok;
    }

    int frame_cmd() const
    {
        const auto m = model_from_json( read_file( _opt.model_path ) );
        json result = { { "property", _opt.property } };

        formula_set gamma;
        if ( _opt.scope_formula )
        {
            result[ "scope" ] = "formula";
            result[ "formula" ] = print( parse( *_opt.scope_formula ) );
        }
        else if ( _opt.scope_sub )
        {
            gamma = sub( parse( *_opt.scope_sub ) );
            result[ "scope" ] = "sub";
            result[ "formula" ] = print( parse( *_opt.scope_sub ) );
        }
        else if ( _opt.scope_closure )
        {
            gamma = relevance_closure( parse( *_opt.scope_closure ), _opt.m, _opt.n );
            result[ "scope" ] = "closure";
            result[ "formula" ] = print( parse( *_opt.scope_closure ) );
        }
        else if ( _opt.scope_full )
        {
            if ( _opt.property != "accessible" )
                throw input_error( "--full applies to the accessible property only" );
            result[ "scope" ] = "full";
        }
        else
            throw input_error( "frame needs one of --formula, --sub, --closure, --full" );

        if ( _opt.property == "serial" )
        {
            result[ "holds" ] = _opt.scope_formula ? is_serial( m, parse( *_opt.scope_formula ) )
                                                   : is_set_serial( m, gamma );
        }
        else if ( _opt.property == "transitive" )
        {
            result[ "holds" ] = _opt.scope_formula ? is_transitive( m, parse( *_opt.scope_formula ) )
                                                   : is_set_transitive( m, gamma );
        }
        else if ( _opt.property == "accessible" )
        {
            result[ "m" ] = _opt.m;
            result[ "n" ] = _opt.n;
            std::optional< accessibility_violation > v;
            if ( _opt.scope_formula )
                v = find_accessibility_violation( m, parse( *_opt.scope_formula ), _opt.m, _opt.n );
            else if ( _opt.scope_full )
                v = find_full_accessibility_violation( m, _opt.m, _opt.n );
            else
                v = find_set_accessibility_violation( m, gamma, _opt.m, _opt.n );
            result[ "holds" ] = !v.has_value();
            if ( v )
                result[ "violation" ] = violation_json( m, *v );
        }
        else
            throw input_error( "unknown property \"" + _opt.property + "\"" );

        emit_json( result );
        return exit_ok;
    }

    int proof_cmd() const
    {
        const auto doc = proof_from_json( read_file( _opt.proof_path ) );
        if ( auto e = check_proof( doc.body, doc.logic ) )
        {
            emit_json( { { "status", "rejected" }, { "logic", describe( doc.logic ) }, { "line", e->line },
                         { "reason", e->reason } } );
            _err << "line " << e->line << ": " << e->reason << '\n';
            return exit_rejected;
        }
        emit_json( { { "status", "accepted" },
                     { "logic", describe( doc.logic ) },
                     { "theorem", print( doc.body.lines.back().statement ) } } );
        return exit_ok;
    }

    int decide_cmd() const
    {
        const auto psi = parse( _opt.formula_text );
        if ( _opt.budget_ms <= 0 )
            throw input_error( "--budget-ms must be positive" );
        decide_options d;
        d.max_generators = _opt.max_generators;
        d.budget = std::chrono::milliseconds{ _opt.budget_ms };
        d.sequential = _opt.sequential;

        const auto result = decide( logic_id{ _opt.m, _opt.n, _opt.rosbox, false }, psi, d );

        json j;
        int code = exit_ok;
        if ( std::holds_alternative< provable >( result ) )
            j = { { "status", "provable" } };
        else if ( const auto* u = std::get_if< unprovable >( &result ) )
        {
            j = { { "status", "unprovable" },
                  { "world", u->model.world_name( u->world ) },
                  { "model", json::parse( model_to_json( u->model ) ) } };
            code = exit_unprovable;
        }
        else
        {
            const auto& r = std::get< resource_limit >( result );
            j = { { "status", "resource_limit" }, { "explored", r.explored }, { "reason", r.reason } };
            code = exit_resource_limit;
        }

        if ( !_opt.emit.empty() )
            write_file( _opt.emit, j.dump( 2 ) );
        emit_json( j );
        return code;
    }

    int countermodel_cmd( const std::string& which ) const
    {
        std::optional< extensional_model > model;
        if ( which == "prop41" )
            model = prop41_model();
        else if ( which == "prop43" )
            model = prop43_model( parse( _opt.psi ), _opt.n );
        else
        {
            const auto fig = fig1_model( _opt.n );
            const auto probe = _opt.probe ? parse( *_opt.probe ) : formula::neg( box_iter( _opt.n + 1, formula::bottom() ) );
            model = fig.fragment( observable_relations( probe, 0, _opt.n ), variables( probe ) );
        }

        if ( _opt.dot )
        {
            _out << model_to_dot( *model );
            return exit_ok;
        }
        auto j = json::parse( model_to_json( *model ) );
        if ( which == "fig1" )
            j[ "fragment_of" ] = "fig1(" + std::to_string( _opt.n ) + ")";
        if ( !_opt.emit.empty() )
            write_file( _opt.emit, j.dump( 2 ) );
        emit_json( j );
        return exit_ok;
    }
};

void add_logic_flags( CLI::App* cmd, options& opt, bool with_rosbox )
{
    cmd->add_option( "--m", opt.m, "A_{m,n} premise path length" );
    cmd->add_option( "--n", opt.n, "A_{m,n} conclusion path length" );
    if ( with_rosbox )
        cmd->add_flag( "--rosbox", opt.rosbox, "Enable the rule ~[]phi / ~[][]phi (N+A_{m,n})" );
}

} // namespace

int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    options opt;
    CLI::App app{ "Pure logic of necessitation and its extensions NA_{m,n} / N+A_{m,n}", "nbox" };
    app.set_version_flag( "--version", version_text() );
    app.add_flag( "--pretty", opt.pretty, "Indent JSON output" );
    app.require_subcommand( 1 );

    auto* parse_cmd = app.add_subcommand( "parse", "Parse a formula and print its core AST" );
    parse_cmd->add_option( "formula", opt.formula_text )->required();

    auto* mc_cmd = app.add_subcommand( "mc", "Model-check a formula on a model file" );
    mc_cmd->add_option( "--model", opt.model_path, "Model JSON (or decide output)" )->required();
    mc_cmd->add_option( "--world", opt.world, "Check one world instead of validity" );
    mc_cmd->add_flag( "--dot", opt.dot, "Print the model as DOT instead" );
    mc_cmd->add_option( "formula", opt.formula_text );

    auto* frame_cmd = app.add_subcommand( "frame", "Check a frame property of a model file" );
    frame_cmd->add_option( "--model", opt.model_path, "Model JSON (or decide output)" )->required();
    frame_cmd->add_option( "--property", opt.property, "serial | transitive | accessible" )
            ->check( CLI::IsMember( { "serial", "transitive", "accessible" } ) );
    auto* scope_formula = frame_cmd->add_option( "--formula", opt.scope_formula, "Check one formula" );
    auto* scope_sub = frame_cmd->add_option( "--sub", opt.scope_sub, "Check Gamma = Sub(psi)" );
    auto* scope_closure =
            frame_cmd->add_option( "--closure", opt.scope_closure, "Check Gamma = relevance closure of psi" );
    auto* scope_full = frame_cmd->add_flag( "--full", opt.scope_full, "Check every formula (table plus default tail)" );
    scope_formula->excludes( scope_sub )->excludes( scope_closure )->excludes( scope_full );
    scope_sub->excludes( scope_closure )->excludes( scope_full );
    scope_closure->excludes( scope_full );
    add_logic_flags( frame_cmd, opt, false );

    auto* proof_cmd = app.add_subcommand( "proof", "Check a Hilbert-style proof file" );
    proof_cmd->add_option( "file", opt.proof_path )->required();

    auto* decide_cmd = app.add_subcommand( "decide", "Decide N+A_{m,n} with a countermodel certificate" );
    add_logic_flags( decide_cmd, opt, true );
    decide_cmd->add_option( "formula", opt.formula_text )->required();
    decide_cmd->add_option( "--emit", opt.emit, "Also write the result JSON to a file" );
    decide_cmd->add_option( "--max-generators", opt.max_generators, "Cap on variables + box subformulas" );
    decide_cmd->add_option( "--budget-ms", opt.budget_ms, "Wall-clock budget" );
    decide_cmd->add_flag( "--sequential", opt.sequential, "Evaluate candidates on one thread" );

    auto* cm_cmd = app.add_subcommand( "countermodel", "Emit one of the fixed separation models" );
    cm_cmd->require_subcommand( 1 );
    auto* prop41 = cm_cmd->add_subcommand( "prop41", "One world, every relation empty" );
    auto* prop43 = cm_cmd->add_subcommand( "prop43", "Two worlds, R_psi drops the pairs leaving a" );
    prop43->add_option( "--psi", opt.psi )->required();
    prop43->add_option( "--n", opt.n )->required();
    auto* fig1 = cm_cmd->add_subcommand( "fig1", "Two-world NA_{0,n} / N+A_{0,n} separation model (fragment)" );
    fig1->add_option( "--n", opt.n )->required();
    fig1->add_option( "--probe", opt.probe, "Formula whose relations to materialize (default ~[]^{n+1}#f)" );
    for ( auto* c : { prop41, prop43, fig1 } )
    {
        c->add_option( "--emit", opt.emit, "Also write the model JSON to a file" );
        c->add_flag( "--dot", opt.dot, "Print DOT instead of JSON" );
    }

    std::vector< const char* > argv;
    for ( const auto& a : args )
        argv.push_back( a.c_str() );

    try
    {
        app.parse( static_cast< int >( argv.size() ), argv.data() );
    }
    catch ( const CLI::Success& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, out, err );
        return exit_malformed;
    }

    const runner r{ opt, out, err };
    try
    {
        if ( *parse_cmd )
            return r.parse_cmd();
        if ( *mc_cmd )
        {
            if ( !opt.dot && opt.formula_text.empty() )
                throw input_error( "mc needs a formula" );
            return r.mc_cmd();
        }
        if ( *frame_cmd )
            return r.frame_cmd();
        if ( *proof_cmd )
            return r.proof_cmd();
        if ( *decide_cmd )
            return r.decide_cmd();
        if ( *prop41 )
            return r.countermodel_cmd( "prop41" );
        if ( *prop43 )
            return r.countermodel_cmd( "prop43" );
        if ( *fig1 )
            return r.countermodel_cmd( "fig1" );
    }
    catch ( const syntax_error& e )
    {
        err << json{ { "error", "syntax" }, { "offset", e.offset() }, { "expected", e.expected() },
                     { "message", e.what() } }
                        .dump()
            << '\n';
        return exit_malformed;
    }
    catch ( const input_error& e )
    {
        err << json{ { "error", "input" }, { "message", e.what() } }.dump() << '\n';
        return exit_malformed;
    }
    catch ( const config_error& e )
    {
        err << json{ { "error", "config" }, { "message", e.what() } }.dump() << '\n';
        return exit_malformed;
    }
    catch ( const precondition_error& e )
    {
        err << json{ { "error", "precondition" }, { "message", e.what() } }.dump() << '\n';
        return exit_malformed;
    }
    return exit_malformed;
}

} // namespace nbox::cli
