// Finite groups as explicit multiplication tables.

#ifndef MASSEYKIT_GROUPS_HPP
#define MASSEYKIT_GROUPS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "masseykit/parse_error.hpp"

namespace masseykit {

using elem_t = std::uint32_t;

/// Largest group order for which a multiplication table is materialized.
inline constexpr std::size_t kMaxTableOrder = 2048;

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

class GroupTable {
   public:
    /// `table` is row-major, table[a * order + b] = a*b. Identity and inverses are
    /// derived; throws if the table is not a Latin square with a two-sided
    /// identity. Associativity is not checked here (see `is_associative`).
    GroupTable(std::string name, std::size_t order, std::vector<elem_t> table, std::vector<std::string> labels = {});

    std::size_t order() const noexcept { return order_; }
    elem_t mul(elem_t a, elem_t b) const noexcept { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    elem_t inv(elem_t a) const noexcept { return inv_[a]; }
    elem_t identity() const noexcept { return identity_; }
    elem_t pow(elem_t a, std::int64_t e) const;
    std::size_t element_order(elem_t a) const;

    const std::string& name() const noexcept { return name_; }
    std::string label(elem_t a) const;
    const std::vector<elem_t>& table() const noexcept { return mul_; }

    bool is_associative() const;
    bool is_abelian() const;
    bool commutes(elem_t a, elem_t b) const noexcept { return mul(a, b) == mul(b, a); }

   private:
    std::string name_;
    std::size_t order_;
    std::vector<elem_t> mul_;
    std::vector<elem_t> inv_;
    elem_t identity_ = 0;
    std::vector<std::string> labels_;
};

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<elem_t> image;

    elem_t operator()(elem_t g) const { return image.at(g); }
    bool is_homomorphism() const;
    bool is_surjective() const;
    bool is_injective() const;
    std::vector<elem_t> kernel() const;
};

/// A subgroup given as its own table plus the inclusion into the parent.
struct Subgroup {
    GroupPtr table;
    GroupPtr parent;
    std::vector<elem_t> elements;  // elements[i] = image of table element i in parent

    std::size_t order() const noexcept { return elements.size(); }
    GroupHom inclusion() const { return {table, parent, elements}; }
};

GroupPtr cyclic(std::size_t n);
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h);
GroupPtr elementary_abelian(std::uint32_t p, unsigned rank);

/// Heisenberg group mod p in the normal form sigma_b^i sigma_a^j tau^k, stored
/// as (i, j, k) with (i,j,k)(r,s,t) = (i+r, j+s, k+t-rj).
GroupPtr heisenberg(std::uint32_t p);
elem_t heisenberg_index(std::uint32_t p, std::int64_t i, std::int64_t j, std::int64_t k);
std::array<std::uint32_t, 3> heisenberg_coords(std::uint32_t p, elem_t g);
/// pi_a : (i,j,k) -> j and pi_b : (i,j,k) -> i, both onto cyclic(p).
GroupHom heisenberg_projection_a(const GroupPtr& h, std::uint32_t p);
GroupHom heisenberg_projection_b(const GroupPtr& h, std::uint32_t p);

/// Upper unitriangular (n+1)x(n+1) matrices over F_p. Elements are encoded
/// by their above-diagonal entries in the order (1,2),(1,3),...,(1,n+1),(2,3),...
/// as base-p digits, least significant first. The bar variant drops the
/// (1,n+1) corner. Throws std::length_error if the order exceeds kMaxTableOrder.
GroupPtr unipotent(unsigned n, std::uint32_t p);
GroupPtr unipotent_bar(unsigned n, std::uint32_t p);
/// Positions (i,j), 1-based, of the coordinates used by unipotent(n,p) / unipotent_bar(n,p).
std::vector<std::pair<unsigned, unsigned>> unipotent_positions(unsigned n, bool bar);
/// Digits of an element of unipotent(n,p) or unipotent_bar(n,p) (one per position).
std::vector<std::uint32_t> unipotent_digits(std::size_t count, std::uint32_t p, elem_t g);
/// Projection U_{n+1} -> Ubar_{n+1} forgetting the corner.
GroupHom unipotent_corner_projection(unsigned n, std::uint32_t p, const GroupPtr& u, const GroupPtr& ubar);

Subgroup subgroup(const GroupPtr& g, const std::vector<elem_t>& generators);
/// Subgroup made of the given element set, which must be closed.
Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<elem_t> elements);
Subgroup center(const GroupPtr& g);
/// Quotient by <z> for a central z, with the projection.
std::pair<GroupPtr, GroupHom> quotient_by_central(const GroupPtr& g, elem_t z);
/// A small generating set, greedily chosen in index order.
std::vector<elem_t> generating_set(const GroupTable& g);
/// Exhaustive isomorphism search (order <= 64); returns the map G -> H.
std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h);
/// Commutator subgroup [G, G].
Subgroup derived_subgroup(const GroupPtr& g);

/// Error raised by the group specifier parser.
class SpecParseError : public ParseError {
   public:
    using ParseError::ParseError;
};

/// Parses "cyclic:6", "heisenberg:3", "u:4,2", "ubar:4,2", "elem:2,3",
/// "prod:heisenberg:3,cyclic:3" (left-associative product). For u/ubar the
/// first argument is the matrix size n+1.
GroupPtr parse_group_spec(std::string_view spec);
/// The natural coefficient prime of a specifier: the group prime for
/// heisenberg/u/ubar/elem, the smallest prime factor for cyclic.
std::uint32_t default_prime(std::string_view spec);

}  // namespace masseykit

#endif  // MASSEYKIT_GROUPS_HPP
