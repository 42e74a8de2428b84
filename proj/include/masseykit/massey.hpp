// Defining systems, Massey products and the unipotent-representation side.
//
// Conventions: a defining system for (c_1, ..., c_n) holds 1-cochains c_{i,j}
// for 1 <= i < j <= n+1, (i,j) != (1,n+1), with c_{i,i+1} = c_i and
//   d c_{i,j} = sum_{i<k<j} c_{i,k} u c_{k,j}.
// The matching unipotent map has entries -c_{i,j} above the diagonal; with
// M(gh) = M(g)M(h) the hom condition on entry (i,j) is exactly the equation
// above. The corner (1,n+1) is what a lift to U_{n+1} has to supply.

#ifndef MASSEYKIT_MASSEY_HPP
#define MASSEYKIT_MASSEY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "masseykit/cochains.hpp"

namespace masseykit {

using EntryIndex = std::pair<unsigned, unsigned>;  // 1-based (i, j)

struct DefiningSystem {
    unsigned n = 0;
    std::map<EntryIndex, Cochain> entries;

    const Cochain& at(unsigned i, unsigned j) const;
    const GroupPtr& group() const { return entries.begin()->second.group(); }
    fp_t modulus() const { return entries.begin()->second.modulus(); }
    /// Triple systems: phi_{a,b} = c_{1,3}, phi_{b,c} = c_{2,4}.
    const Cochain& phi_ab() const { return at(1, 3); }
    const Cochain& phi_bc() const { return at(2, 4); }
};

/// System for (chi_a, chi_b, chi_c) from given phi_{a,b}, phi_{b,c}; not validated.
DefiningSystem make_triple_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                  const Cochain& phi_ab, const Cochain& phi_bc);

/// Solves d phi_{a,b} = chi_a u chi_b and d phi_{b,c} = chi_b u chi_c; nullopt if
/// either cup class is nonzero (the product is undefined).
std::optional<DefiningSystem> find_defining_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c);
std::optional<DefiningSystem> find_defining_system(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                                   const CoboundarySolver& solver);

/// chi_a u phi_{b,c} + phi_{a,b} u chi_c. Throws std::invalid_argument if the
/// system is not valid.
Cochain massey_value(const DefiningSystem& phi);

struct MasseyCoset {
    Cochain base;
    std::vector<Cochain> left;   // chi_a u eta_i over a basis eta of Z^1
    std::vector<Cochain> right;  // eta_i u chi_c
    DefiningSystem system;
};

std::optional<MasseyCoset> massey_coset(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c);
std::optional<MasseyCoset> massey_coset(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                        const CoboundarySolver& solver, const std::vector<Cochain>& z1);
/// Whether base lies in span(left, right) + B^2.
bool contains_zero(const MasseyCoset& coset);
bool contains_zero(const MasseyCoset& coset, const CoboundarySolver& solver);

struct SystemCheck {
    bool valid = false;
    std::string failure;         // first violated condition, empty when valid
    std::optional<Cochain> value;  // sum_k c_{1,k} u c_{k,n+1}
    bool value_is_cocycle = false;
};

/// Checks both conditions of a defining system for (c_1..c_n), any n >= 2.
SystemCheck verify_defining_system_n(const std::vector<Cochain>& c, const DefiningSystem& system);

/// Homomorphism-candidate G -> U_{n+1}(F_p) given by its above-diagonal entry
/// functions. The corner (1,n+1) is present only for maps into U_{n+1}.
struct UnipotentHom {
    GroupPtr source;
    unsigned n = 0;
    fp_t p = 2;
    std::map<EntryIndex, std::vector<fp_t>> entries;

    bool has_corner() const { return entries.count({1, n + 1}) != 0; }
    /// (n+1)x(n+1) row-major matrix of g; a missing corner reads as 0.
    std::vector<fp_t> matrix(elem_t g) const;
    /// Exhaustive check of M(gh) = M(g)M(h) on the present entries.
    bool is_homomorphism() const;
};

UnipotentHom dwyer_from_system(const DefiningSystem& system);
/// Throws std::invalid_argument if the map is not a homomorphism.
DefiningSystem dwyer_to_system(const UnipotentHom& phi);

/// Corner f with M(gh) = M(g)M(h) on the full matrix, if any. Solves
/// d f = -(corner of Mbar(g) Mbar(h)) with the corner of Mbar set to 0.
std::optional<std::vector<fp_t>> lift_corner(const UnipotentHom& phi);
std::optional<std::vector<fp_t>> lift_corner(const UnipotentHom& phi, const CoboundarySolver& solver);
bool lift_exists(const UnipotentHom& phi);

/// Zero-membership through the unipotent side: some defining system for the
/// triple admits a lift. Enumerates phi_{a,b} + Z^1 and phi_{b,c} + Z^1.
/// nullopt when the product is undefined.
std::optional<bool> lift_decision(const Cochain& chi_a, const Cochain& chi_b, const Cochain& chi_c,
                                  const CoboundarySolver& solver, const std::vector<Cochain>& z1);

struct PsiCochains {
    Cochain chi_a, chi_b, psi1, psi2;
    bool psi1_identity = false;  // d psi1 = chi_a u chi_b + chi_b u chi_a
    bool psi2_identity = false;  // d psi2 = 2 chi_b u chi_b
};

/// psi1(s_a^i s_b^j) = -ij and psi2(s_a^i s_b^j) = -j^2 on a group that is
/// (Z/p)^2 with basis (s_a, s_b). Throws if the group has another shape.
PsiCochains psi_cochains(fp_t p, const GroupPtr& g, elem_t sigma_a, elem_t sigma_b);

struct RestrictionReport {
    bool on_ker_a = false;    // value = phi_{a,b} u chi_c on ker chi_a
    bool on_ker_c = false;    // value = chi_a u phi_{b,c} on ker chi_c
    bool on_ker_ac = false;   // value = 0 on ker chi_a n ker chi_c
    std::size_t pairs_checked = 0;

    bool all() const { return on_ker_a && on_ker_c && on_ker_ac; }
};

RestrictionReport restriction_identities(const DefiningSystem& phi);

/// Coefficient vectors over a basis of dimension dim: the zero vector, then one
/// representative per line (first nonzero coordinate 1), in lexicographic order.
std::vector<std::vector<fp_t>> projective_representatives(std::size_t dim, fp_t p);
/// sum_i coeffs[i] * basis[i]; basis must be nonempty when coeffs is.
Cochain combine(const GroupPtr& g, fp_t p, const std::vector<Cochain>& basis, const std::vector<fp_t>& coeffs);

/// Elements g with chi(g) = 0, as a subgroup.
Subgroup kernel_subgroup(const Cochain& chi);

}  // namespace masseykit

#endif  // MASSEYKIT_MASSEY_HPP
