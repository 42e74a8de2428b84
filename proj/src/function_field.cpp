#include "masseykit/function_field.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "masseykit/expr_parser.hpp"

namespace masseykit {

namespace {

fp_t reduce_mod(std::int64_t c, fp_t ell) {
    std::int64_t r = c % static_cast<std::int64_t>(ell);
    return static_cast<fp_t>(r < 0 ? r + ell : r);
}

fp_t mulmod(fp_t a, fp_t b, fp_t ell) {
    return static_cast<fp_t>(static_cast<std::uint64_t>(a) * b % ell);
}

void require_same_field(const Poly& a, const Poly& b) {
    if (a.ell() != b.ell()) throw std::invalid_argument("polynomials over different fields");
}

}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(fp_t ell) : ell_(ell) {
    if (!is_prime(ell)) throw std::invalid_argument("field size must be prime");
}

Poly::Poly(fp_t ell, std::vector<fp_t> coeffs) : Poly(ell) {
    c_ = std::move(coeffs);
    for (auto& c : c_) c %= ell_;
    trim();
}

Poly Poly::constant(fp_t ell, std::int64_t c) { return Poly(ell, {reduce_mod(c, ell)}); }

Poly Poly::t(fp_t ell) { return Poly(ell, {0, 1}); }

Poly Poly::monomial(fp_t ell, std::int64_t c, std::size_t k) {
    std::vector<fp_t> v(k + 1, 0);
    v[k] = reduce_mod(c, ell);
    return Poly(ell, std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

fp_t Poly::eval(fp_t x) const {
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % ell_;
    return static_cast<fp_t>(acc);
}

Poly Poly::operator+(const Poly& o) const {
    require_same_field(*this, o);
    Poly r(ell_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        fp_t s = coeff(i) + o.coeff(i);
        r.c_[i] = s >= ell_ ? s - ell_ : s;
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = c ? ell_ - c : 0;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_field(*this, o);
    Poly r(ell_);
    if (is_zero() || o.is_zero()) return r;
    std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
    // Products are below 2^62 for ell < 2^31; reduce each term to stay exact.
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(c_[i]) * o.c_[j]) % ell_;
    }
    r.c_.assign(acc.begin(), acc.end());
    r.trim();
    return r;
}

Poly Poly::scaled(fp_t c) const {
    Poly r(ell_);
    c %= ell_;
    if (c == 0) return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = mulmod(c_[i], c, ell_);
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(PrimeField(ell_).inv(lead()));
}

Poly Poly::derivative() const {
    Poly r(ell_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = mulmod(c_[i], static_cast<fp_t>(i % ell_), ell_);
    r.trim();
    return r;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly result = constant(ell_, 1), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    require_same_field(*this, d);
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q(ell_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    fp_t inv = PrimeField(ell_).inv(d.lead());
    std::size_t dd = d.c_.size() - 1;
    q.c_.assign(r.c_.size() - dd, 0);
    for (std::size_t k = r.c_.size(); k-- > dd;) {
        fp_t c = mulmod(r.c_[k], inv, ell_);
        if (!c) continue;
        q.c_[k - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) {
            fp_t sub = mulmod(c, d.c_[j], ell_);
            fp_t& x = r.c_[k - dd + j];
            x = x >= sub ? x - sub : x + ell_ - sub;
        }
    }
    q.trim();
    r.trim();
    return {q, r};
}

Poly Poly::powmod(std::uint64_t e, const Poly& m) const {
    Poly result = constant(ell_, 1) % m, base = *this % m;
    while (e) {
        if (e & 1) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        fp_t c = c_[k];
        if (!c) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c);
        out += 't';
        if (k > 1) out += '^' + std::to_string(k);
    }
    return out;
}

Poly gcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::optional<Poly> inverse_mod(const Poly& a, const Poly& m) {
    require_same_field(a, m);
    fp_t ell = a.ell();
    // Extended Euclid tracking only the coefficient of a.
    Poly r0 = m, r1 = a % m, s0(ell), s1 = Poly::constant(ell, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Poly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) return std::nullopt;
    return (s0.scaled(PrimeField(ell).inv(r0.lead()))) % m;
}

// ---------------------------------------------------------------- factor

Poly Factorization::expand(fp_t ell) const {
    Poly r = Poly::constant(ell, unit);
    for (const auto& [f, e] : factors) r = r * f.pow(e);
    return r;
}

namespace {

using FactorList = std::vector<std::pair<Poly, unsigned>>;

// f monic with all exponents divisible by ell; the ell-th root over F_ell.
Poly ell_root(const Poly& f) {
    fp_t ell = f.ell();
    std::vector<fp_t> c;
    for (std::size_t k = 0; k < f.coeffs().size(); k += ell) c.push_back(f.coeffs()[k]);
    return Poly(ell, std::move(c));
}

// Square-free parts of a monic f as (part, multiplicity).
FactorList square_free(const Poly& f) {
    FactorList out;
    if (f.degree() <= 0) return out;
    fp_t ell = f.ell();
    Poly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, e] : square_free(ell_root(f))) out.emplace_back(g, e * ell);
        return out;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        ++i;
        w = y;
        c = c / y;
    }
    if (!c.is_one()) {
        for (auto& [g, e] : square_free(ell_root(c.monic()))) out.emplace_back(g, e * ell);
    }
    return out;
}

// Products of all irreducible factors of each degree, for square-free monic f.
std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly f) {
    std::vector<std::pair<Poly, unsigned>> out;
    fp_t ell = f.ell();
    Poly x = Poly::t(ell);
    Poly h = x % f;
    for (unsigned i = 1; f.degree() >= 2 * static_cast<int>(i); ++i) {
        h = h.powmod(ell, f);
        Poly g = gcd(h - x, f);
        if (!g.is_one()) {
            out.emplace_back(g, i);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
    return out;
}

// Splits f (square-free, monic, all factors of degree d) into irreducibles.
void equal_degree(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    fp_t ell = f.ell();
    int n = f.degree();
    while (true) {
        std::vector<fp_t> c(static_cast<std::size_t>(n));
        for (auto& x : c) x = static_cast<fp_t>(rng.below(ell));
        Poly a(ell, std::move(c));
        if (a.degree() <= 0) continue;
        Poly b(ell);
        if (ell == 2) {
            // Trace to F_2: a + a^2 + ... + a^(2^(d-1)).
            Poly term = a % f;
            b = term;
            for (unsigned i = 1; i < d; ++i) {
                term = (term * term) % f;
                b = b + term;
            }
        } else {
            // Norm to F_ell raised to (ell-1)/2 equals a^((ell^d - 1)/2).
            Poly term = a % f, norm = term;
            for (unsigned i = 1; i < d; ++i) {
                term = term.powmod(ell, f);
                norm = (norm * term) % f;
            }
            b = norm.powmod((ell - 1) / 2, f) - Poly::constant(ell, 1);
        }
        Poly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

Factorization factor(const Poly& f, Rng& rng) {
    if (f.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    Factorization result;
    result.unit = f.lead();
    for (const auto& [part, mult] : square_free(f.monic())) {
        for (const auto& [block, d] : distinct_degree(part)) {
            std::vector<Poly> irreducibles;
            equal_degree(block, d, rng, irreducibles);
            for (auto& q : irreducibles) result.factors.emplace_back(std::move(q), mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& x, const auto& y) { return x.first < y.first || (x.first == y.first && x.second < y.second); });
    return result;
}

Factorization factor(const Poly& f) {
    Rng rng(0x5eed);
    return factor(f, rng);
}

bool is_irreducible(const Poly& f) {
    if (f.degree() <= 0) return false;
    auto fac = factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(fp_t ell) : num_(ell), den_(Poly::constant(ell, 1)) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.ell(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    require_same_field(num_, den_);
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.ell(), 1);
        return;
    }
    if (den_.degree() > 0) {
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
    fp_t inv = PrimeField(num_.ell()).inv(den_.lead());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_);
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(num_.pow(static_cast<std::uint64_t>(e)));
    if (den_.is_one()) return r;
    // Powers of coprime polynomials stay coprime.
    r.den_ = den_.pow(static_cast<std::uint64_t>(e));
    return r;
}

RatFunc RatFunc::scaled(fp_t c) const {
    RatFunc r = *this;
    r.num_ = num_.scaled(c);
    if (r.num_.is_zero()) r.den_ = Poly::constant(ell(), 1);
    return r;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- p-th powers

FpScalar primitive_root(fp_t ell, fp_t p) {
    if (!is_prime(ell)) throw std::invalid_argument("ell must be prime");
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if ((ell - 1) % p != 0)
        throw std::invalid_argument(std::to_string(p) + " does not divide " + std::to_string(ell - 1));
    PrimeField f(ell);
    for (fp_t g = 2; g < ell; ++g) {
        fp_t r = f.pow(g, (ell - 1) / p);
        if (r == 1) continue;
        // r has order p; its powers are all the roots, take the smallest.
        fp_t best = r, x = r;
        for (fp_t k = 2; k < p; ++k) {
            x = f.mul(x, r);
            best = std::min(best, x);
        }
        return FpScalar(best, ell);
    }
    // ell = 2, p would have to divide 1.
    throw std::invalid_argument("no primitive root");
}

PrimeFieldSpec PrimeFieldSpec::make(fp_t ell, fp_t p) {
    return PrimeFieldSpec{ell, p, primitive_root(ell, p).value};
}

namespace {

// The smallest root of x^p = c in F_ell, from the linear factors of x^p - c.
std::optional<fp_t> scalar_root(fp_t c, fp_t p, fp_t ell) {
    if (c == 0) return fp_t{0};
    PrimeField f(ell);
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(ell - 1));
    if (f.pow(c, (ell - 1) / g) != 1) return std::nullopt;
    Poly x_p = Poly::monomial(ell, 1, p) - Poly::constant(ell, c);
    std::optional<fp_t> best;
    for (const auto& [q, e] : factor(x_p).factors) {
        if (q.degree() == 1 && (!best || f.neg(q.coeff(0)) < *best)) best = f.neg(q.coeff(0));
    }
    return best;
}

std::optional<Poly> poly_root(const Poly& f, fp_t p, bool scalar) {
    fp_t ell = f.ell();
    Factorization fac = factor(f);
    Poly r = Poly::constant(ell, 1);
    for (const auto& [q, e] : fac.factors) {
        if (e % p != 0) return std::nullopt;
        r = r * q.pow(e / p);
    }
    if (!scalar) return r;
    auto c = scalar_root(fac.unit, p, ell);
    if (!c) return std::nullopt;
    return r.scaled(*c);
}

}  // namespace

std::optional<RatFunc> pth_root(const RatFunc& f, fp_t p) {
    if (f.is_zero()) throw std::invalid_argument("p-th power test of zero");
    auto num = poly_root(f.num(), p, true);
    if (!num) return std::nullopt;
    auto den = poly_root(f.den(), p, false);
    if (!den) return std::nullopt;
    RatFunc root(*num, *den);
    if (!(root.pow(p) == f)) throw std::logic_error("p-th root witness failed verification");
    return root;
}

bool is_pth_power(const RatFunc& f, fp_t p) { return pth_root(f, p).has_value(); }

bool kummer_independent(const RatFunc& a, const RatFunc& b, fp_t p) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("Kummer independence of zero");
    RatFunc ai = RatFunc::constant(a.ell(), 1);
    for (fp_t i = 0; i < p; ++i) {
        RatFunc x = ai;
        for (fp_t j = 0; j < p; ++j) {
            if ((i || j) && is_pth_power(x, p)) return false;
            x = x * b;
        }
        ai = ai * a;
    }
    return true;
}

// ---------------------------------------------------------------- parsing

namespace {

struct RatFuncDomain {
    using value_type = RatFunc;
    fp_t ell;

    value_type constant(std::int64_t c) const { return RatFunc::constant(ell, c); }
    std::optional<value_type> variable(std::string_view name) const {
        if (name == "t") return RatFunc::t(ell);
        return std::nullopt;
    }
    value_type pow(const value_type& x, std::int64_t e) const { return x.pow(e); }
};

Poly parse_coefficient_list(std::string_view text, std::size_t offset, fp_t ell) {
    std::vector<fp_t> c;
    std::size_t i = 0;
    while (true) {
        while (i < text.size() && text[i] == ' ') ++i;
        bool negative = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError(offset + i, "expected coefficient");
        std::int64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = (v * 10 + (text[i] - '0')) % static_cast<std::int64_t>(ell);
            ++i;
        }
        c.push_back(reduce_mod(negative ? -v : v, ell));
        while (i < text.size() && text[i] == ' ') ++i;
        if (i == text.size()) break;
        if (text[i] != ',') throw ParseError(offset + i, "expected ','");
        ++i;
    }
    return Poly(ell, std::move(c));
}

}  // namespace

RatFunc parse_ratfunc(std::string_view text, fp_t ell) {
    if (!is_prime(ell)) throw std::invalid_argument("field size must be prime");
    if (text.find(',') != std::string_view::npos) {
        auto slash = text.find('/');
        Poly num = parse_coefficient_list(text.substr(0, slash), 0, ell);
        if (slash == std::string_view::npos) return RatFunc(num);
        Poly den = parse_coefficient_list(text.substr(slash + 1), slash + 1, ell);
        if (den.is_zero()) throw ParseError(slash, "zero denominator");
        return RatFunc(num, den);
    }
    RatFuncDomain d{ell};
    return parse_expression(text, d);
}

Poly parse_poly(std::string_view text, fp_t ell) {
    RatFunc f = parse_ratfunc(text, ell);
    if (!f.den().is_one()) throw ParseError(0, "not a polynomial");
    return f.num();
}

}  // namespace masseykit
