#include "nbox/syntax.hpp"

#include <json.hpp>

#include <cctype>
#include <optional>

namespace nbox
{

namespace
{

std::string join_expected( const std::vector< std::string >& expected )
{
    std::string out;
    for ( std::size_t i = 0; i < expected.size(); ++i )
    {
        if ( i > 0 )
            out += ", ";
        out += expected[ i ];
    }
    return out;
}

enum class tok
{
    ident,
    bot,
    top,
    neg,
    box,
    dia,
    conj,
    disj,
    imp,
    lparen,
    rparen,
    end,
};

struct token
{
    tok type;
    std::size_t offset;
    std::string_view text;
};

std::string describe( const token& t )
{
    if ( t.type == tok::end )
        return "end of input";
    if ( t.type == tok::ident )
        return "identifier '" + std::string{ t.text } + "'";
    return "'" + std::string{ t.text } + "'";
}

const std::vector< std::string >& operand_start()
{
    static const std::vector< std::string > v{ "'#f'", "'#t'", "'('", "'<>'", "'[]'", "'~'", "identifier" };
    return v;
}

bool ident_start( char c ) { return std::isalpha( static_cast< unsigned char >( c ) ) != 0; }
bool ident_rest( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) != 0 || c == '_'; }

class lexer
{
    std::string_view _text;
    std::size_t _pos = 0;

    [[noreturn]] void bad( std::size_t at, std::vector< std::string > expected )
    {
        std::string found = at < _text.size() ? "'" + std::string{ _text.substr( at, 1 ) } + "'" : "end of input";
        throw syntax_error( at, std::move( expected ), found );
    }

public:
    explicit lexer( std::string_view text ) : _text{ text } {}

    token next()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
        const auto start = _pos;
        if ( _pos >= _text.size() )
            return { tok::end, start, {} };

        auto two = [ & ]( char second, tok type, const char* spelling ) -> token {
            if ( _pos + 1 < _text.size() && _text[ _pos + 1 ] == second )
            {
                _pos += 2;
                return { type, start, _text.substr( start, 2 ) };
            }
            bad( _pos + 1, { std::string{ "'" } + spelling + "'" } );
        };

        const char c = _text[ _pos ];
        switch ( c )
        {
        case '~': ++_pos; return { tok::neg, start, _text.substr( start, 1 ) };
        case '&': ++_pos; return { tok::conj, start, _text.substr( start, 1 ) };
        case '|': ++_pos; return { tok::disj, start, _text.substr( start, 1 ) };
        case '(': ++_pos; return { tok::lparen, start, _text.substr( start, 1 ) };
        case ')': ++_pos; return { tok::rparen, start, _text.substr( start, 1 ) };
        case '[': return two( ']', tok::box, "[]" );
        case '<': return two( '>', tok::dia, "<>" );
        case '-': return two( '>', tok::imp, "->" );
        case '#':
            if ( _pos + 1 < _text.size() && ( _text[ _pos + 1 ] == 'f' || _text[ _pos + 1 ] == 't' ) )
            {
                const auto type = _text[ _pos + 1 ] == 'f' ? tok::bot : tok::top;
                _pos += 2;
                return { type, start, _text.substr( start, 2 ) };
            }
            bad( _pos + 1, { "'#f'", "'#t'" } );
        default:
            break;
        }

        if ( ident_start( c ) )
        {
            while ( _pos < _text.size() && ident_rest( _text[ _pos ] ) )
                ++_pos;
            return { tok::ident, start, _text.substr( start, _pos - start ) };
        }
        bad( start, operand_start() );
    }
};

class parser
{
    lexer _lex;
    token _cur;
    std::optional< token > _prev;

    void advance()
    {
        _prev = _cur;
        _cur = _lex.next();
    }

    [[noreturn]] void fail( std::vector< std::string > expected ) const
    {
        auto offset = _cur.offset;
        if ( _cur.type == tok::end && _prev )
            offset = _prev->offset;
        throw syntax_error( offset, std::move( expected ), describe( _cur ) );
    }

    // impl := or ( '->' impl )?
    formula implication()
    {
        auto lhs = disjunction();
        if ( _cur.type == tok::imp )
        {
            advance();
            return formula::implies( lhs, implication() );
        }
        return lhs;
    }

    formula disjunction()
    {
        auto acc = conjunction();
        while ( _cur.type == tok::disj )
        {
            advance();
            acc = formula::disj( acc, conjunction() );
        }
        return acc;
    }

    formula conjunction()
    {
        auto acc = unary();
        while ( _cur.type == tok::conj )
        {
            advance();
            acc = formula::conj( acc, unary() );
        }
        return acc;
    }

    formula unary()
    {
        switch ( _cur.type )
        {
        case tok::neg: advance(); return formula::neg( unary() );
        case tok::box: advance(); return formula::box( unary() );
        case tok::dia: advance(); return formula::diamond( unary() );
        case tok::bot: advance(); return formula::bottom();
        case tok::top: advance(); return formula::top();
        case tok::ident:
        {
            auto f = formula::var( _cur.text );
            advance();
            return f;
        }
        case tok::lparen:
        {
            advance();
            auto f = implication();
            if ( _cur.type != tok::rparen )
                fail( { "'&'", "'->'", "')'", "'|'" } );
            advance();
            return f;
        }
        default:
            fail( operand_start() );
        }
    }

public:
    explicit parser( std::string_view text ) : _lex{ text }, _cur{ _lex.next() } {}

    formula run()
    {
        auto f = implication();
        if ( _cur.type != tok::end )
            fail( { "'&'", "'->'", "'|'", "end of input" } );
        return f;
    }
};

enum class slot
{
    top,
    disj_left,
    disj_right,
    operand,
};

void print_into( formula f, slot where, std::string& out )
{
    switch ( f.kind() )
    {
    case formula_kind::bottom:
        out += "#f";
        return;
    case formula_kind::var:
        out += f.name();
        return;
    case formula_kind::neg:
        out += '~';
        print_into( f.child(), slot::operand, out );
        return;
    case formula_kind::box:
        out += "[]";
        print_into( f.child(), slot::operand, out );
        return;
    case formula_kind::disj:
    {
        const bool parens = where == slot::disj_right || where == slot::operand;
        if ( parens )
            out += '(';
        print_into( f.left(), slot::disj_left, out );
        out += " | ";
        print_into( f.right(), slot::disj_right, out );
        if ( parens )
            out += ')';
        return;
    }
    }
}

nlohmann::json ast_of( formula f )
{
    switch ( f.kind() )
    {
    case formula_kind::bottom: return { { "op", "bot" } };
    case formula_kind::var: return { { "op", "var" }, { "name", f.name() } };
    case formula_kind::neg: return { { "op", "neg" }, { "args", { ast_of( f.child() ) } } };
    case formula_kind::box: return { { "op", "box" }, { "args", { ast_of( f.child() ) } } };
    case formula_kind::disj: return { { "op", "or" }, { "args", { ast_of( f.left() ), ast_of( f.right() ) } } };
    }
    return {};
}

formula formula_of( const nlohmann::json& j )
{
    if ( !j.is_object() || !j.contains( "op" ) || !j[ "op" ].is_string() )
        throw input_error( "AST node must be an object with a string \"op\"" );
    const auto op = j[ "op" ].get< std::string >();

    auto args = [ & ]( std::size_t arity ) {
        if ( !j.contains( "args" ) || !j[ "args" ].is_array() || j[ "args" ].size() != arity )
            throw input_error( "AST node \"" + op + "\" needs " + std::to_string( arity ) + " args" );
        return j[ "args" ];
    };

    if ( op == "bot" )
        return formula::bottom();
    if ( op == "var" )
    {
        if ( !j.contains( "name" ) || !j[ "name" ].is_string() )
            throw input_error( "AST var node needs a string \"name\"" );
        const auto name = j[ "name" ].get< std::string >();
        bool ok = !name.empty() && ident_start( name[ 0 ] );
        for ( char c : name )
            ok = ok && ident_rest( c );
        if ( !ok )
            throw input_error( "invalid variable name \"" + name + "\"" );
        return formula::var( name );
    }
    if ( op == "neg" )
        return formula::neg( formula_of( args( 1 )[ 0 ] ) );
    if ( op == "box" )
        return formula::box( formula_of( args( 1 )[ 0 ] ) );
    if ( op == "or" )
    {
        auto a = args( 2 );
        return formula::disj( formula_of( a[ 0 ] ), formula_of( a[ 1 ] ) );
    }
    throw input_error( "unknown AST op \"" + op + "\"" );
}

} // namespace

syntax_error::syntax_error( std::size_t offset, std::vector< std::string > expected, const std::string& found )
        : input_error( "syntax error at offset " + std::to_string( offset ) + ": expected " +
                       join_expected( expected ) + ", found " + found ),
          _offset{ offset }, _expected{ std::move( expected ) }
{
}

formula parse( std::string_view text ) { return parser{ text }.run(); }

std::string print( formula f )
{
    std::string out;
    print_into( f, slot::top, out );
    return out;
}

std::string to_json_ast( formula f ) { return ast_of( f ).dump(); }

formula from_json_ast( std::string_view json )
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse( json );
    }
    catch ( const nlohmann::json::parse_error& e )
    {
        throw input_error( std::string{ "invalid JSON: " } + e.what() );
    }
    return formula_of( j );
}

} // namespace nbox
