#include "nbox/formula.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

namespace nbox
{

namespace detail
{

struct formula_node
{
    formula_kind kind;
    std::string name;
    const formula_node* a = nullptr;
    const formula_node* b = nullptr;
    std::size_t id = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
    std::size_t hash = 0;
};

} // namespace detail

namespace
{

using detail::formula_node;

std::size_t combine( std::size_t seed, std::size_t value )
{
    return seed ^ ( value + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

std::size_t shallow_hash( formula_kind kind, std::string_view name, const formula_node* a, const formula_node* b )
{
    auto h = std::hash< unsigned >{}( static_cast< unsigned >( kind ) );
    h = combine( h, std::hash< std::string_view >{}( name ) );
    h = combine( h, a ? a->id : 0 );
    h = combine( h, b ? b->id : 0 );
    return h;
}

struct node_hash
{
    using is_transparent = void;
    std::size_t operator()( const formula_node* n ) const { return n->hash; }
};

struct node_eq
{
    using is_transparent = void;
    bool operator()( const formula_node* x, const formula_node* y ) const
    {
        return x->kind == y->kind && x->a == y->a && x->b == y->b && x->name == y->name;
    }
};

// Global hash-consing table. Children are interned before their parents, so
// comparing child pointers is enough to decide structural equality.
class interner
{
    std::shared_mutex _mutex;
    std::deque< formula_node > _storage;
    std::unordered_set< const formula_node*, node_hash, node_eq > _index;

public:
    const formula_node* intern( formula_kind kind, std::string_view name, const formula_node* a,
                                const formula_node* b )
    {
        formula_node probe{ kind, std::string{ name }, a, b };
        probe.hash = shallow_hash( kind, name, a, b );

        {
            std::shared_lock lock{ _mutex };
            if ( auto it = _index.find( &probe ); it != _index.end() )
                return *it;
        }

        std::unique_lock lock{ _mutex };
        if ( auto it = _index.find( &probe ); it != _index.end() )
            return *it;

        probe.id = _storage.size() + 1;
        probe.size = 1 + ( a ? a->size : 0 ) + ( b ? b->size : 0 );
        probe.depth = ( a || b ) ? 1 + std::max( a ? a->depth : 0, b ? b->depth : 0 ) : 0;
        const auto* node = &_storage.emplace_back( std::move( probe ) );
        _index.insert( node );
        return node;
    }
};

interner& table()
{
    static interner instance;
    return instance;
}

std::strong_ordering compare_nodes( const formula_node* x, const formula_node* y )
{
    if ( x == y )
        return std::strong_ordering::equal;
    if ( auto c = x->kind <=> y->kind; c != 0 )
        return c;

    switch ( x->kind )
    {
    case formula_kind::bottom:
        return std::strong_ordering::equal;
    case formula_kind::var:
        return x->name.compare( y->name ) <=> 0;
    case formula_kind::neg:
    case formula_kind::box:
        return compare_nodes( x->a, y->a );
    case formula_kind::disj:
        if ( auto c = compare_nodes( x->a, y->a ); c != 0 )
            return c;
        return compare_nodes( x->b, y->b );
    }
    return std::strong_ordering::equal;
}

} // namespace

formula formula::bottom()
{
    return formula{ table().intern( formula_kind::bottom, {}, nullptr, nullptr ) };
}

formula formula::var( std::string_view name )
{
    assert( !name.empty() );
    return formula{ table().intern( formula_kind::var, name, nullptr, nullptr ) };
}

formula formula::neg( formula child )
{
    return formula{ table().intern( formula_kind::neg, {}, child._node, nullptr ) };
}

formula formula::disj( formula left, formula right )
{
    return formula{ table().intern( formula_kind::disj, {}, left._node, right._node ) };
}

formula formula::box( formula child )
{
    return formula{ table().intern( formula_kind::box, {}, child._node, nullptr ) };
}

formula_kind formula::kind() const { return _node->kind; }

const std::string& formula::name() const
{
    assert( is( formula_kind::var ) );
    return _node->name;
}

formula formula::child() const
{
    assert( is( formula_kind::neg ) || is( formula_kind::box ) );
    return formula{ _node->a };
}

formula formula::left() const
{
    assert( is( formula_kind::disj ) );
    return formula{ _node->a };
}

formula formula::right() const
{
    assert( is( formula_kind::disj ) );
    return formula{ _node->b };
}

std::size_t formula::size() const { return _node->size; }
std::size_t formula::depth() const { return _node->depth; }
std::size_t formula::id() const { return _node->id; }

std::strong_ordering operator<=>( formula a, formula b ) { return compare_nodes( a._node, b._node ); }

namespace
{

void collect_sub( formula f, formula_set& out )
{
    if ( !out.insert( f ).second )
        return;
    switch ( f.kind() )
    {
    case formula_kind::bottom:
    case formula_kind::var:
        break;
    case formula_kind::neg:
    case formula_kind::box:
        collect_sub( f.child(), out );
        break;
    case formula_kind::disj:
        collect_sub( f.left(), out );
        collect_sub( f.right(), out );
        break;
    }
}

} // namespace

formula_set sub( formula f )
{
    formula_set out;
    collect_sub( f, out );
    return out;
}

formula negg( formula f ) { return f.is( formula_kind::neg ) ? f.child() : formula::neg( f ); }

formula_set nsub( formula f )
{
    auto out = sub( f );
    for ( auto rho : sub( f ) )
        out.insert( negg( rho ) );
    return out;
}

formula box_iter( std::size_t k, formula f )
{
    for ( std::size_t i = 0; i < k; ++i )
        f = formula::box( f );
    return f;
}

std::size_t box_depth( formula f )
{
    std::size_t k = 0;
    for ( ; f.is( formula_kind::box ); f = f.child() )
        ++k;
    return k;
}

formula strip_boxes( std::size_t k, formula f )
{
    assert( box_depth( f ) >= k );
    for ( std::size_t i = 0; i < k; ++i )
        f = f.child();
    return f;
}

formula_set relevance_closure( formula psi, std::size_t m, std::size_t n )
{
    auto out = sub( psi );
    const auto reach = std::max( m, n );
    for ( auto sigma : sub( psi ) )
    {
        if ( box_depth( sigma ) < m )
            continue;
        const auto rho = strip_boxes( m, sigma );
        for ( std::size_t i = 0; i < reach; ++i )
            out.insert( box_iter( i, rho ) );
    }
    return out;
}

std::set< std::string > variables( formula f )
{
    std::set< std::string > out;
    for ( auto g : sub( f ) )
        if ( g.is( formula_kind::var ) )
            out.insert( g.name() );
    return out;
}

formula big_conj( const formula_set& members )
{
    if ( members.empty() )
        return formula::top();
    auto it = members.begin();
    auto acc = *it;
    for ( ++it; it != members.end(); ++it )
        acc = formula::conj( acc, *it );
    return acc;
}

} // namespace nbox
