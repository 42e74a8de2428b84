// Polynomials over F_l, the rational function field F_l(t), factorization
// and p-th power tests.

#ifndef MASSEYKIT_FUNCTION_FIELD_HPP
#define MASSEYKIT_FUNCTION_FIELD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "masseykit/fp_linalg.hpp"

namespace masseykit {

/// The single random stream of a run: mt19937_64 reduced by plain modulo, so
/// values do not depend on the standard library's distribution code.
class Rng {
   public:
    static constexpr const char* kName = "mt19937_64-mod/1";

    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}
    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
    std::uint64_t seed() const noexcept { return seed_; }
    /// Independent stream for a numbered sub-task.
    Rng derive(std::uint64_t stream) const { return Rng(seed_ * 0x9E3779B97F4A7C15ull + stream + 1); }

   private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/// Dense polynomial over F_l, coefficients ascending, no trailing zeros.
class Poly {
   public:
    explicit Poly(fp_t ell);
    Poly(fp_t ell, std::vector<fp_t> coeffs);

    static Poly constant(fp_t ell, std::int64_t c);
    static Poly t(fp_t ell);
    static Poly monomial(fp_t ell, std::int64_t c, std::size_t k);

    fp_t ell() const noexcept { return ell_; }
    const std::vector<fp_t>& coeffs() const noexcept { return c_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    fp_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    fp_t coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }
    fp_t eval(fp_t x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(fp_t c) const;
    Poly monic() const;
    Poly derivative() const;
    Poly pow(std::uint64_t e) const;
    /// Throws std::domain_error on division by zero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly powmod(std::uint64_t e, const Poly& m) const;

    friend bool operator==(const Poly&, const Poly&) = default;
    /// Degree, then coefficients from the top; a total order for canonical output.
    friend bool operator<(const Poly& a, const Poly& b);

    /// "t^3+2t+1"; "0" for zero.
    std::string to_string() const;

   private:
    void trim();
    fp_t ell_;
    std::vector<fp_t> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Inverse of a modulo m, or nullopt when they share a factor.
std::optional<Poly> inverse_mod(const Poly& a, const Poly& m);

struct Factorization {
    fp_t unit = 1;
    std::vector<std::pair<Poly, unsigned>> factors;  // monic irreducibles, sorted

    Poly expand(fp_t ell) const;
};

/// Square-free decomposition, distinct-degree and equal-degree splitting.
/// The random choices of the splitting step come from `rng`; the result is
/// sorted and does not depend on them. Throws std::domain_error on zero.
Factorization factor(const Poly& f, Rng& rng);
Factorization factor(const Poly& f);
bool is_irreducible(const Poly& f);

/// Element of F_l(t): monic denominator, gcd(num, den) = 1.
class RatFunc {
   public:
    explicit RatFunc(fp_t ell);  // zero
    RatFunc(Poly num);
    /// Throws std::domain_error for a zero denominator.
    RatFunc(Poly num, Poly den);

    static RatFunc constant(fp_t ell, std::int64_t c) { return RatFunc(Poly::constant(ell, c)); }
    static RatFunc t(fp_t ell) { return RatFunc(Poly::t(ell)); }

    fp_t ell() const noexcept { return num_.ell(); }
    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
    bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    /// Throws std::domain_error on zero.
    RatFunc inverse() const;
    RatFunc pow(std::int64_t e) const;
    RatFunc scaled(fp_t c) const;

    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    std::string to_string() const;

   private:
    Poly num_, den_;
};

/// Element of exact multiplicative order p in F_l (the smallest one).
/// Throws std::invalid_argument unless p | l - 1.
FpScalar primitive_root(fp_t ell, fp_t p);

/// F_l together with p | l - 1 and the fixed primitive p-th root of unity rho.
struct PrimeFieldSpec {
    fp_t ell = 0;
    fp_t p = 0;
    fp_t rho = 0;

    /// Throws std::invalid_argument unless both are prime and p | l - 1.
    static PrimeFieldSpec make(fp_t ell, fp_t p);
};

/// A p-th root of f in F_l(t), or nullopt. f must be nonzero.
std::optional<RatFunc> pth_root(const RatFunc& f, fp_t p);
bool is_pth_power(const RatFunc& f, fp_t p);
/// a^i b^j is a p-th power only for i = j = 0 mod p (checked for all p^2 pairs).
bool kummer_independent(const RatFunc& a, const RatFunc& b, fp_t p);

/// "1+2t+t^3", "(t+1)/(t^2-3)", or the coefficient list "c0,c1,c2" with an
/// optional "/d0,d1" denominator. Throws ParseError.
RatFunc parse_ratfunc(std::string_view text, fp_t ell);
Poly parse_poly(std::string_view text, fp_t ell);

}  // namespace masseykit

#endif  // MASSEYKIT_FUNCTION_FIELD_HPP
