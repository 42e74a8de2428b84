// Inhomogeneous cochains C^k(G, F_p) with trivial action, k <= 3.

#ifndef MASSEYKIT_COCHAINS_HPP
#define MASSEYKIT_COCHAINS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "masseykit/fp_linalg.hpp"
#include "masseykit/groups.hpp"

namespace masseykit {

/// Largest group order for which degree-2 cohomology is computed.
inline constexpr std::size_t kMaxH2Order = 64;

class Cochain {
   public:
    /// Zero cochain of the given degree.
    Cochain(GroupPtr group, unsigned degree, fp_t p);
    Cochain(GroupPtr group, unsigned degree, fp_t p, std::vector<fp_t> values);

    static Cochain from_function(GroupPtr group, fp_t p, const std::function<std::int64_t(elem_t)>& f);
    static Cochain from_function2(GroupPtr group, fp_t p, const std::function<std::int64_t(elem_t, elem_t)>& f);
    static Cochain random(GroupPtr group, unsigned degree, fp_t p, std::mt19937_64& rng);

    const GroupPtr& group() const noexcept { return group_; }
    unsigned degree() const noexcept { return degree_; }
    fp_t modulus() const noexcept { return p_; }
    std::size_t order() const noexcept { return n_; }
    const std::vector<fp_t>& values() const noexcept { return values_; }
    std::vector<fp_t>& values() noexcept { return values_; }

    fp_t operator()() const { return values_[0]; }
    fp_t operator()(elem_t g) const { return values_[g]; }
    fp_t operator()(elem_t g, elem_t h) const { return values_[static_cast<std::size_t>(g) * n_ + h]; }
    fp_t operator()(elem_t g, elem_t h, elem_t k) const {
        return values_[(static_cast<std::size_t>(g) * n_ + h) * n_ + k];
    }

    bool is_zero() const;
    /// Same group table (by identity), degree and modulus.
    bool compatible(const Cochain& o) const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(fp_t c) const;
    friend bool operator==(const Cochain& a, const Cochain& b);

   private:
    GroupPtr group_;
    unsigned degree_;
    fp_t p_;
    std::size_t n_;
    std::vector<fp_t> values_;
};

/// Throws std::domain_error for degree 3.
Cochain differential(const Cochain& c);
/// (f u h)(g_1..g_{k+l}) = f(g_1..g_k) h(g_{k+1}..g_{k+l}); total degree <= 3.
Cochain cup(const Cochain& f, const Cochain& h);
bool is_cocycle(const Cochain& c);

/// Characters G -> F_p (the 1-cocycles), as a basis of ker d_1.
std::vector<Cochain> cocycles_degree1(const GroupPtr& g, fp_t p);

struct CohomologyBasis {
    unsigned degree = 0;
    std::vector<Cochain> representatives;
    std::size_t cocycle_dim = 0;
    std::size_t coboundary_dim = 0;

    std::size_t dimension() const noexcept { return representatives.size(); }
};

/// Degree 1 or 2. Degree 2 is limited to |G| <= kMaxH2Order.
CohomologyBasis cohomology(const GroupPtr& g, unsigned degree, fp_t p);

/// Solver for d f = b with f in C^1, b in C^2; also a B^2 membership oracle.
class CoboundarySolver {
   public:
    CoboundarySolver(GroupPtr g, fp_t p);

    std::optional<Cochain> solve(const Cochain& target) const;
    bool is_coboundary(const Cochain& c) const;
    std::size_t coboundary_dim() const noexcept { return space_.dimension(); }
    const FpSubspace& space() const noexcept { return space_; }
    const GroupPtr& group() const noexcept { return group_; }

   private:
    GroupPtr group_;
    fp_t p_;
    FpSubspace space_;  // generator g is d(delta_g)
};

/// Pullback along the inclusion of a subgroup.
Cochain restrict(const Cochain& c, const Subgroup& h);
/// Pullback along a surjection pi : G -> Q of a cochain on Q.
Cochain inflate(const Cochain& c, const GroupHom& pi);

}  // namespace masseykit

#endif  // MASSEYKIT_COCHAINS_HPP
