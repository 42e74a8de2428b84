// Kummer algebras over F = F_l(t), their automorphisms, norms, the
// w-element, constructive Hilbert 90 and the degree p^3 Heisenberg tower.
//
// An algebra is a chain F = A_0 < A_1 < ... < A_m with A_i = A_{i-1}[x_i] and
// x_i^p = c_i for some c_i in A_{i-1}. Basis monomials x^e are indexed in mixed
// radix, x_1 least significant, so A_{i-1} sits inside A_i as the first
// p^(i-1) coordinates. Elements keep polynomial numerators over one monic
// common denominator, reduced so that the representation is canonical.

#ifndef MASSEYKIT_KUMMER_HPP
#define MASSEYKIT_KUMMER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "masseykit/function_field.hpp"
#include "masseykit/groups.hpp"

namespace masseykit {

class KummerAlgebra;
using AlgebraPtr = std::shared_ptr<const KummerAlgebra>;

class TowerElement {
   public:
    explicit TowerElement(AlgebraPtr algebra);  // zero
    TowerElement(AlgebraPtr algebra, std::vector<Poly> numerators, Poly denominator);

    static TowerElement scalar(const AlgebraPtr& algebra, const RatFunc& c);
    static TowerElement one(const AlgebraPtr& algebra);
    /// The generator x_i, 0-based.
    static TowerElement generator(const AlgebraPtr& algebra, std::size_t i);
    static TowerElement from_coefficients(const AlgebraPtr& algebra, const std::vector<RatFunc>& c);

    const AlgebraPtr& algebra() const noexcept { return alg_; }
    const std::vector<Poly>& numerators() const noexcept { return num_; }
    const Poly& denominator() const noexcept { return den_; }
    RatFunc coefficient(std::size_t index) const;
    std::vector<RatFunc> coefficients() const;

    bool is_zero() const;
    /// In F: only the trivial monomial may be nonzero.
    bool is_scalar() const;
    std::optional<RatFunc> as_scalar() const;

    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator-() const;
    TowerElement operator*(const TowerElement& o) const;
    /// Multiplies by invert(o); throws NonUnitError.
    TowerElement operator/(const TowerElement& o) const;
    TowerElement scaled(const RatFunc& c) const;
    TowerElement pow(std::uint64_t e) const;

    /// Same algebra object and equal coefficients.
    friend bool operator==(const TowerElement& a, const TowerElement& b);

    /// "t+1 + 2*xb^2*xa"; monomials in index order.
    std::string to_string() const;

   private:
    void normalize();
    AlgebraPtr alg_;
    std::vector<Poly> num_;
    Poly den_;
};

/// Raised by `invert` on a zero divisor; carries a nonzero y with e*y = 0.
class NonUnitError : public std::domain_error {
   public:
    NonUnitError(const std::string& what, TowerElement witness)
        : std::domain_error(what), witness_(std::move(witness)) {}
    const TowerElement& witness() const noexcept { return witness_; }

   private:
    TowerElement witness_;
};

/// Raised when an operation's hypothesis fails on the given input.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the randomized constructions when the retry budget runs out.
class RetryExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a generated instance fails a field-ness gate.
class InstanceRejected : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned kRetryBudget = 32;

/// Solves e*x = 1 over F; throws NonUnitError.
TowerElement invert(const TowerElement& e);
std::optional<TowerElement> try_invert(const TowerElement& e);

class KummerAlgebra : public std::enable_shared_from_this<KummerAlgebra> {
   public:
    struct Term {
        std::uint32_t index;
        Poly coeff;
    };

    /// F itself (rank 1). Only p and l are fixed here; rho needs p | l - 1.
    static AlgebraPtr base(const PrimeFieldSpec& field);
    /// parent[x]/(x^p - c) with c in parent.
    static AlgebraPtr extend(const AlgebraPtr& parent, std::string name, const TowerElement& c);
    /// F[x_1..x_m]/(x_i^p - a_i).
    static AlgebraPtr kummer(const PrimeFieldSpec& field, const std::vector<std::pair<std::string, RatFunc>>& gens);

    const PrimeFieldSpec& field() const noexcept { return field_; }
    fp_t ell() const noexcept { return field_.ell; }
    fp_t p() const noexcept { return field_.p; }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t num_generators() const noexcept { return names_.size(); }
    const std::string& generator_name(std::size_t i) const { return names_.at(i); }
    /// The algebra without the last generator (null for F).
    const AlgebraPtr& parent() const noexcept { return parent_; }
    /// c_i as an element of this algebra.
    TowerElement relation(std::size_t i) const;

    std::vector<unsigned> exponents(std::size_t index) const;
    std::size_t index(const std::vector<unsigned>& exponents) const;

    /// x^e x^f = sum_g (coeff / structure_denominator) x^g.
    const std::vector<Term>& product(std::size_t e, std::size_t f) const { return table_[e * rank_ + f]; }
    const Poly& structure_denominator() const noexcept { return table_den_; }

    /// Embeds an element of an algebra below this one in the chain.
    TowerElement embed(const TowerElement& e) const;
    /// Parses an expression in t and the generator names (a single generator
    /// may also be written "x"). Throws ParseError.
    TowerElement parse(std::string_view text) const;

   private:
    KummerAlgebra() = default;
    PrimeFieldSpec field_;
    std::size_t rank_ = 1;
    AlgebraPtr parent_;
    std::vector<std::string> names_;
    // relation constants, padded to this algebra's rank
    std::vector<std::pair<std::vector<Poly>, Poly>> relations_;
    std::vector<std::vector<Term>> table_;
    Poly table_den_{2};
};

/// Ring map out of `e`'s algebra sending generator i to images[i].
TowerElement substitute(const TowerElement& e, const AlgebraPtr& target, const std::vector<TowerElement>& images);

/// F-automorphism given by generator images.
class GaloisAuto {
   public:
    /// Checks image(x_i)^p = sigma(c_i) and bijectivity; throws std::invalid_argument.
    GaloisAuto(AlgebraPtr algebra, std::vector<TowerElement> images);
    static GaloisAuto identity(const AlgebraPtr& algebra);
    /// x_i -> rho^k_i x_i.
    static GaloisAuto diagonal(const AlgebraPtr& algebra, const std::vector<unsigned>& k);

    const AlgebraPtr& algebra() const noexcept { return alg_; }
    const std::vector<TowerElement>& images() const noexcept { return images_; }
    TowerElement apply(const TowerElement& e) const;
    TowerElement operator()(const TowerElement& e) const { return apply(e); }
    bool is_identity() const;

    friend bool operator==(const GaloisAuto& a, const GaloisAuto& b) { return a.images_ == b.images_; }

   private:
    struct Unchecked {};
    GaloisAuto(AlgebraPtr algebra, std::vector<TowerElement> images, Unchecked);
    void build_table();
    AlgebraPtr alg_;
    std::vector<TowerElement> images_;
    // sigma(x^e) = sum (coeff / table_den_) x^g
    std::vector<std::vector<KummerAlgebra::Term>> table_;
    Poly table_den_{2};
    friend GaloisAuto compose(const GaloisAuto& s, const GaloisAuto& t);
};

/// (s o t)(x) = s(t(x)).
GaloisAuto compose(const GaloisAuto& s, const GaloisAuto& t);
GaloisAuto power(const GaloisAuto& s, unsigned k);
/// All automorphisms generated by `gens` (bounded by `limit` elements).
std::vector<GaloisAuto> closure(const std::vector<GaloisAuto>& gens, std::size_t limit = 4096);

/// Product of sigma(e) over the subgroup generated by h; checked to be
/// fixed by h (std::logic_error otherwise).
TowerElement norm(const TowerElement& e, const std::vector<GaloisAuto>& h);
/// prod_i sigma^i(v)^i.
TowerElement w_element(const TowerElement& v, const GaloisAuto& sigma);
/// sigma(w) * N(v) = v^p * w with N the norm over <sigma>.
bool w_identity_holds(const TowerElement& v, const GaloisAuto& sigma, const TowerElement& w);

TowerElement random_element(const AlgebraPtr& algebra, Rng& rng, int max_degree = 2);
TowerElement random_unit(const AlgebraPtr& algebra, Rng& rng, int max_degree = 2);

/// t with g(t) = u t, for u of norm 1 under <g>, g of order p. Twisted
/// resolvent on u^-1 with random c from `rng`; up to kRetryBudget attempts.
/// Throws PreconditionError or RetryExhausted.
TowerElement hilbert90(const TowerElement& u, const GaloisAuto& g, Rng& rng);

// ------------------------------------------------------- bicyclic fields

/// K = F1 F2 with F_i = F[x_i]/(x_i^p - a_i) and sigma_i(x_i) = rho x_i.
struct Bicyclic {
    PrimeFieldSpec field;
    RatFunc a1, a2;
    AlgebraPtr f1, f2, k;
    GaloisAuto sigma1, sigma2;

    TowerElement from_f1(const TowerElement& e) const;
    TowerElement from_f2(const TowerElement& e) const;
};

Bicyclic make_bicyclic(const PrimeFieldSpec& field, const RatFunc& a1, const RatFunc& a2);

struct NormIdentityReport {
    bool precondition = false;  // N_{F1/F}(v1) = N_{F2/F}(v2)
    bool identity1 = false;     // N_{K/F2}(u) = sigma2(w1) / w1
    bool identity2 = false;     // N_{K/F1}(u)^-1 = sigma1(w2) / w2
    bool all() const { return precondition && identity1 && identity2; }
};

/// v1 in F1, v2 in F2. The identities are only evaluated when the
/// precondition holds.
NormIdentityReport verify_norm_identities(const Bicyclic& k, const TowerElement& v1, const TowerElement& v2);

// ------------------------------------------------------- the p^3 tower

struct TowerDescription {
    PrimeFieldSpec field;
    RatFunc b, a;
    AlgebraPtr fb;       // F[x_b]
    AlgebraPtr k;        // F[x_b, x_a, x_w]
    TowerElement v, w;   // in fb
    GaloisAuto sigma_a, sigma_b, tau;
    std::uint64_t seed = 0;
};

/// F_b = F[x_b]/(x_b^p - b) with generator "xb".
AlgebraPtr make_fb(const PrimeFieldSpec& field, const RatFunc& b);
/// a = N(v), w = prod sigma_b^i(v)^i, K = F_b[x_a, x_w] and its automorphisms.
/// Throws InstanceRejected if b or a is a p-th power or they are dependent.
TowerDescription build_tower(const PrimeFieldSpec& field, const RatFunc& b, const TowerElement& v, std::uint64_t seed);
/// Random unit v (retried up to kRetryBudget times on rejection).
TowerDescription random_tower(const PrimeFieldSpec& field, const RatFunc& b, std::uint64_t seed);

struct TowerGalois {
    GroupPtr group;                  // the automorphisms under composition
    std::vector<GaloisAuto> elements;  // elements[heisenberg_index(i,j,k)] = sigma_b^i sigma_a^j tau^k
    GroupHom to_heisenberg;
    bool closed_order = false;  // exactly p^3 distinct elements, closed
    bool isomorphism = false;
    bool commutator_relation = false;  // sigma_b sigma_a = tau sigma_a sigma_b
    bool tau_central = false;
    bool all() const { return closed_order && isomorphism && commutator_relation && tau_central; }
};

/// Throws std::logic_error if the closure is not a group of order p^3.
TowerGalois galois_group_of_tower(const TowerDescription& t);

struct PhiReport {
    bool phi_coboundary = false;  // d phi_ab = chi_a u chi_b on all pairs
    bool res_chi_w = false;       // phi_ab on <sigma_a, tau> equals chi_w
    bool phi_identity_zero = false;
    std::size_t pairs_checked = 0;
    bool all() const { return phi_coboundary && res_chi_w && phi_identity_zero; }
};

/// Kummer characters are read off the action on x_a, x_b, x_w.
PhiReport chi_w_and_phi_check(const TowerDescription& t, const TowerGalois& g);
/// Independence of a and b, plus the norm test on w where it decides (p = 2).
bool w_not_pth_power_check(const TowerDescription& t);

struct TowerChecks {
    bool independence = false;
    bool w_identity = false;
    bool galois_order = false;
    bool phi_coboundary = false;
    bool res_chi_w = false;
    bool all() const { return independence && w_identity && galois_order && phi_coboundary && res_chi_w; }
};

TowerChecks check_tower(const TowerDescription& t);

/// Kummer character value k with g(x) = rho^k x, or nullopt.
std::optional<unsigned> kummer_exponent(const GaloisAuto& g, const TowerElement& x);

}  // namespace masseykit

#endif  // MASSEYKIT_KUMMER_HPP
