#pragma once

#include "nbox/errors.hpp"
#include "nbox/formula.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nbox
{

// ASCII concrete syntax:
//
//   #f  bottom       ~   negation      []  box
//   #t  top          &   conjunction   <>  diamond
//   |   disjunction  ->  implication   ( ) grouping
//
// Precedence, tightest first: unary {~, [], <>}, &, |, -> (right-assoc).
// & and | associate to the left. Identifiers match [a-zA-Z][a-zA-Z0-9_]*.
// Sugar (#t, &, ->, <>) is expanded while parsing.

class syntax_error : public input_error
{
    std::size_t _offset;
    std::vector< std::string > _expected;

public:
    syntax_error( std::size_t offset, std::vector< std::string > expected, const std::string& found );

    // Byte offset into the input. At a premature end of input this is the
    // offset of the last token, i.e. the construct left incomplete.
    [[nodiscard]] std::size_t offset() const { return _offset; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _expected; }
};

formula parse( std::string_view text );

// Prints the core AST with minimal parentheses; parse(print(f)) == f.
std::string print( formula f );

// Canonical JSON AST: {"op":"bot"|"var"|"neg"|"or"|"box", "name"?, "args"?}.
std::string to_json_ast( formula f );
formula from_json_ast( std::string_view json );

} // namespace nbox
