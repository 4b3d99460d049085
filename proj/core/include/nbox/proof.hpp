#pragma once

#include "nbox/formula.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nbox
{

// The logic NA_{m,n} (axiom scheme []^n phi -> []^m phi), optionally with the
// rule ~[]phi / ~[][]phi (rosbox, giving N+A_{m,n}) and the Rosser rule
// ~phi / ~[]phi (ros; proof checking only). N itself is NA_{1,1} = NA_{0,0}.
struct logic_id
{
    std::size_t m = 1;
    std::size_t n = 1;
    bool rosbox = false;
    bool ros = false;

    friend bool operator==( const logic_id&, const logic_id& ) = default;
};

std::string describe( const logic_id& logic );

// Treats variables and box formulas as atoms.
bool is_tautology( formula f );

// rho with f == []^n rho -> []^m rho, if f is an instance of A_{m,n}.
std::optional< formula > axiom_instance_witness( formula f, std::size_t m, std::size_t n );

namespace just
{
struct taut
{
};
struct axiom
{
};
// Line `minor` is phi, line `major` is phi -> current.
struct mp
{
    std::size_t minor;
    std::size_t major;
};
struct nec
{
    std::size_t premise;
};
struct rosbox
{
    std::size_t premise;
};
struct ros
{
    std::size_t premise;
};
} // namespace just

using justification = std::variant< just::taut, just::axiom, just::mp, just::nec, just::rosbox, just::ros >;

// Line references are 1-based and must point strictly backwards.
struct proof_line
{
    formula statement;
    justification why;
};

struct proof
{
    std::vector< proof_line > lines;
};

struct proof_error
{
    std::size_t line; // 1-based; 0 for an empty proof
    std::string reason;
};

// nullopt when every line is justified in `logic`; otherwise the first
// failing line. The theorem proved is the last line.
std::optional< proof_error > check_proof( const proof& p, const logic_id& logic );

// {"logic":{"m":0,"n":2,"rosbox":true,"ros":false},
//  "lines":[{"formula":"<syntax>","just":"taut"|"axA"|{"mp":[i,j]}|{"nec":i}|{"rosbox":i}|{"ros":i}}]}
struct proof_document
{
    logic_id logic;
    proof body;
};

// Throws input_error.
proof_document proof_from_json( std::string_view json );
std::string proof_to_json( const proof_document& doc, int indent = -1 );

} // namespace nbox
