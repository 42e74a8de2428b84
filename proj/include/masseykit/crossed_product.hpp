// Abelian crossed products (K/F, {sigma1, sigma2}, {b1, b2, u}) of degree p^2.
//
// Elements are sums k_ij z1^i z2^j, 0 <= i, j < p, with k_ij in K. Products are
// put in normal form with
//   z_i k = sigma_i(k) z_i,   z2^j z1^r = C(j, r) z1^r z2^j,
//   C(j, r) = prod_{n<j} sigma2^n( prod_{m<r} sigma1^m(u) ),
// then z1^p = b1 and z1^m z2^p = sigma1^m(b2) z1^m.

#ifndef MASSEYKIT_CROSSED_PRODUCT_HPP
#define MASSEYKIT_CROSSED_PRODUCT_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "masseykit/kummer.hpp"

namespace masseykit {

struct ACPDescriptor {
    Bicyclic k;
    TowerElement b1, b2, u;
};

struct ACPCReport {
    bool b1_fixed = false;  // sigma1(b1) = b1
    bool b2_fixed = false;  // sigma2(b2) = b2
    bool b1_norm = false;   // sigma2(b1) / b1 = N_{K/K^sigma1}(u)
    bool b2_norm = false;   // sigma1(b2) / b2 = N_{K/K^sigma2}(u)^-1
    bool all() const { return b1_fixed && b2_fixed && b1_norm && b2_norm; }
};

ACPCReport acp_check(const ACPDescriptor& d);

class CrossedProduct;
using CPPtr = std::shared_ptr<const CrossedProduct>;

class CPElement {
   public:
    explicit CPElement(CPPtr algebra);  // zero

    static CPElement from_k(const CPPtr& algebra, const TowerElement& k);
    /// k z1^i z2^j.
    static CPElement monomial(const CPPtr& algebra, const TowerElement& k, unsigned i, unsigned j);
    static CPElement z1(const CPPtr& algebra);
    static CPElement z2(const CPPtr& algebra);
    static CPElement one(const CPPtr& algebra);

    const CPPtr& algebra() const noexcept { return alg_; }
    const TowerElement& slot(unsigned i, unsigned j) const;
    const std::vector<TowerElement>& slots() const noexcept { return slots_; }
    /// Coordinates over F: slot-major, then the K basis; p^4 entries.
    std::vector<RatFunc> coordinates() const;

    bool is_zero() const;
    /// In F: only slot (0,0) is nonzero and it lies in F.
    std::optional<RatFunc> as_scalar() const;

    CPElement operator+(const CPElement& o) const;
    CPElement operator-(const CPElement& o) const;
    CPElement operator*(const CPElement& o) const;
    CPElement scaled(const RatFunc& c) const;
    CPElement pow(unsigned e) const;

    friend bool operator==(const CPElement& a, const CPElement& b) { return a.alg_ == b.alg_ && a.slots_ == b.slots_; }

   private:
    CPPtr alg_;
    std::vector<TowerElement> slots_;  // index i * p + j
    friend CPElement cp_mul(const CPElement& x, const CPElement& y);
};

/// Throws std::invalid_argument for elements of different algebras.
CPElement cp_mul(const CPElement& x, const CPElement& y);

class CrossedProduct {
   public:
    /// Precomputes the commutation factors; does not require the ACPC equations.
    static CPPtr make(ACPDescriptor d);

    const ACPDescriptor& descriptor() const noexcept { return d_; }
    fp_t p() const noexcept { return d_.k.field.p; }
    const AlgebraPtr& k() const noexcept { return d_.k.k; }
    /// sigma1^i sigma2^j.
    const GaloisAuto& conjugation(unsigned i, unsigned j) const { return autos_[i * p() + j]; }
    /// sigma1^i(C(j, r)); nullopt when it is 1.
    const std::optional<TowerElement>& twist(unsigned i, unsigned j, unsigned r) const {
        return twist_[(i * p() + j) * p() + r];
    }
    const TowerElement& b2_conjugate(unsigned m) const { return b2conj_[m]; }

   private:
    CrossedProduct(ACPDescriptor d);
    ACPDescriptor d_;
    std::vector<GaloisAuto> autos_;
    std::vector<std::optional<TowerElement>> twist_;
    std::vector<TowerElement> b2conj_;
};

/// A_{v1,v2}: u = v2/v1, b1 = prod sigma2^i(v2)^i, b2 = prod sigma1^i(v1)^i,
/// for v1 in F1 and v2 in F2 of equal norm (PreconditionError otherwise).
ACPDescriptor build_A(const Bicyclic& k, const TowerElement& v1, const TowerElement& v2);

struct ACPInstance {
    TowerElement v1, v2;  // in F1 and F2
    ACPDescriptor d;
    std::uint64_t seed = 0;
    unsigned attempts = 0;
};

/// a1 = N(v2) (p odd) or -N(v2) (p = 2), v1 = x1. Throws InstanceRejected if a1
/// fails the independence gate.
ACPInstance instance_acp(const PrimeFieldSpec& field, const RatFunc& a2, const TowerElement& v2);
/// Random v2 from `seed`, retried up to kRetryBudget times. PreconditionError
/// if a2 is a p-th power, RetryExhausted if no instance is found.
ACPInstance instance_acp(const PrimeFieldSpec& field, const RatFunc& a2, std::uint64_t seed);

struct StructureElements {
    CPElement x, y, z, w;
    TowerElement t;  // sigma1 sigma2 (t) = u t
};

/// X = x1^-1 x2, Y = x1, Z = z1 z2, W = t z2 with t from Hilbert 90.
StructureElements structure_elements(const CPPtr& a, Rng& rng);

struct RelationsReport {
    std::array<bool, 10> relations{};
    std::optional<RatFunc> wp, zp;  // W^p and Z^p when they lie in F
    unsigned passed() const;
    bool all() const { return passed() == 10; }
};

RelationsReport verify_relations(const CPPtr& a, const StructureElements& s);

struct DecompositionReport {
    RelationsReport relations;
    bool scalars = false;     // W^p, Z^p in F
    bool symbol_a1 = false;   // X^p = a2/a1, W^p in F, WX = rho XW
    bool symbol_a2 = false;   // Y^p = a1, Z^p in F, ZY = rho YZ
    bool commute = false;     // X^i W^j commutes with Y^k Z^l for all i,j,k,l
    std::size_t rank = 0;     // certified lower bound for the rank of X^i W^j Y^k Z^l
    bool rank_p4 = false;
    std::optional<RatFunc> wp, zp;
    bool all() const { return scalars && symbol_a1 && symbol_a2 && commute && rank_p4; }
};

DecompositionReport verify_decomposition(const CPPtr& a, const StructureElements& s);

/// (xy)z = x(yz).
bool associative_on(const CPElement& x, const CPElement& y, const CPElement& z);
/// Random element with `slots` nonzero slots (all p^2 when 0).
CPElement random_cp_element(const CPPtr& a, Rng& rng, unsigned slots = 0, int max_degree = 1);

struct CenterReport {
    std::size_t rank = 0;      // rank lower bound of x -> [x, generators]
    bool one_central = false;  // 1 lies in the kernel
    bool center_is_f = false;  // rank = p^4 - 1 together with one_central
};

/// Elements commuting with z1, z2, x1, x2 form F.
CenterReport center_check(const CPPtr& a);

}  // namespace masseykit

#endif  // MASSEYKIT_CROSSED_PRODUCT_HPP
