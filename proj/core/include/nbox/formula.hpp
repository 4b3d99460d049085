#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>

namespace nbox
{

enum class formula_kind : unsigned char
{
    bottom,
    var,
    neg,
    disj,
    box,
};

namespace detail
{
struct formula_node;
}

// Modal formula over the core connectives. Values are hash-consed: two
// formulas are structurally equal iff they share a node, so equality and
// hashing are O(1). Nodes are immutable and live for the whole process,
// which makes formula handles trivially copyable and safe to share across
// threads.
//
// Ordering (operator<=>) is structural rather than by address so that sets
// of formulas iterate in the same order on every run.
class formula
{
    const detail::formula_node* _node;

    explicit formula( const detail::formula_node* node ) : _node{ node } {}

public:
    static formula bottom();
    static formula var( std::string_view name );
    static formula neg( formula child );
    static formula disj( formula left, formula right );
    static formula box( formula child );

    // Abbreviations, expanded into the core connectives.
    static formula top() { return neg( bottom() ); }
    static formula conj( formula left, formula right ) { return neg( disj( neg( left ), neg( right ) ) ); }
    static formula implies( formula left, formula right ) { return disj( neg( left ), right ); }
    static formula diamond( formula child ) { return neg( box( neg( child ) ) ); }

    [[nodiscard]] formula_kind kind() const;
    [[nodiscard]] bool is( formula_kind k ) const { return kind() == k; }

    // Valid only for var.
    [[nodiscard]] const std::string& name() const;
    // Valid for neg and box.
    [[nodiscard]] formula child() const;
    // Valid for disj.
    [[nodiscard]] formula left() const;
    [[nodiscard]] formula right() const;

    // Number of constructor nodes in the tree (shared subtrees counted each time).
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::size_t depth() const;
    [[nodiscard]] std::size_t id() const;

    friend bool operator==( formula a, formula b ) { return a._node == b._node; }
    friend std::strong_ordering operator<=>( formula a, formula b );
};

using formula_set = std::set< formula >;

// Subformulas, including the formula itself.
formula_set sub( formula f );

// Strips exactly one leading negation, or adds one.
formula negg( formula f );

// sub(f) together with negg of each of its members.
formula_set nsub( formula f );

formula box_iter( std::size_t k, formula f );

// Number of leading boxes.
std::size_t box_depth( formula f );

// Removes k leading boxes. Precondition: box_depth(f) >= k.
formula strip_boxes( std::size_t k, formula f );

// Sub(psi) plus []^i rho for every rho with []^m rho in Sub(psi) and
// i < max(m, n): every formula whose relation a Sub(psi)-(m,n)-accessibility
// check can touch.
formula_set relevance_closure( formula psi, std::size_t m, std::size_t n );

// Propositional variables occurring in f.
std::set< std::string > variables( formula f );

// Conjunction of the members, folded left to right; top for the empty set.
formula big_conj( const formula_set& members );

} // namespace nbox

template<>
struct std::hash< nbox::formula >
{
    std::size_t operator()( nbox::formula f ) const noexcept { return std::hash< std::size_t >{}( f.id() ); }
};
