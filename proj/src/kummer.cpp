#include "masseykit/kummer.hpp"

#include <algorithm>
#include <stdexcept>

#include "masseykit/expr_parser.hpp"
#include "masseykit/ratfunc_linalg.hpp"

namespace masseykit {

namespace {

Poly one_poly(fp_t ell) { return Poly::constant(ell, 1); }

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return (a * (b / gcd(a, b))).monic();
}

// x * c for c a constant or a polynomial.
Poly times(const Poly& x, const Poly& c) { return c.degree() == 0 ? x.scaled(c.coeff(0)) : x * c; }

void require_same_algebra(const TowerElement& a, const TowerElement& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("elements of different algebras");
}

}  // namespace

// ---------------------------------------------------------------- TowerElement

TowerElement::TowerElement(AlgebraPtr algebra)
    : alg_(std::move(algebra)), num_(alg_->rank(), Poly(alg_->ell())), den_(one_poly(alg_->ell())) {}

TowerElement::TowerElement(AlgebraPtr algebra, std::vector<Poly> numerators, Poly denominator)
    : alg_(std::move(algebra)), num_(std::move(numerators)), den_(std::move(denominator)) {
    if (num_.size() != alg_->rank()) throw std::invalid_argument("coefficient count does not match the rank");
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void TowerElement::normalize() {
    fp_t ell = alg_->ell();
    bool zero = std::all_of(num_.begin(), num_.end(), [](const Poly& x) { return x.is_zero(); });
    if (zero) {
        den_ = one_poly(ell);
        return;
    }
    if (den_.degree() > 0) {
        Poly g = den_;
        for (const auto& x : num_) {
            if (x.is_zero()) continue;
            g = gcd(g, x);
            if (g.is_one()) break;
        }
        if (!g.is_one()) {
            for (auto& x : num_)
                if (!x.is_zero()) x = x / g;
            den_ = den_ / g;
        }
    }
    if (den_.lead() != 1) {
        fp_t inv = PrimeField(ell).inv(den_.lead());
        for (auto& x : num_) x = x.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

TowerElement TowerElement::scalar(const AlgebraPtr& algebra, const RatFunc& c) {
    std::vector<Poly> num(algebra->rank(), Poly(algebra->ell()));
    num[0] = c.num();
    return TowerElement(algebra, std::move(num), c.den());
}

TowerElement TowerElement::one(const AlgebraPtr& algebra) { return scalar(algebra, RatFunc::constant(algebra->ell(), 1)); }

TowerElement TowerElement::generator(const AlgebraPtr& algebra, std::size_t i) {
    if (i >= algebra->num_generators()) throw std::out_of_range("no such generator");
    std::vector<unsigned> e(algebra->num_generators(), 0);
    e[i] = 1;
    std::vector<Poly> num(algebra->rank(), Poly(algebra->ell()));
    num[algebra->index(e)] = one_poly(algebra->ell());
    return TowerElement(algebra, std::move(num), one_poly(algebra->ell()));
}

TowerElement TowerElement::from_coefficients(const AlgebraPtr& algebra, const std::vector<RatFunc>& c) {
    if (c.size() != algebra->rank()) throw std::invalid_argument("coefficient count does not match the rank");
    Poly den = one_poly(algebra->ell());
    for (const auto& x : c) den = lcm(den, x.den());
    std::vector<Poly> num;
    num.reserve(c.size());
    for (const auto& x : c) num.push_back(x.num() * (den / x.den()));
    return TowerElement(algebra, std::move(num), std::move(den));
}

RatFunc TowerElement::coefficient(std::size_t index) const { return RatFunc(num_.at(index), den_); }

std::vector<RatFunc> TowerElement::coefficients() const {
    std::vector<RatFunc> out;
    out.reserve(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coefficient(i));
    return out;
}

bool TowerElement::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Poly& x) { return x.is_zero(); });
}

bool TowerElement::is_scalar() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const Poly& x) { return x.is_zero(); });
}

std::optional<RatFunc> TowerElement::as_scalar() const {
    if (!is_scalar()) return std::nullopt;
    return coefficient(0);
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    require_same_algebra(*this, o);
    if (den_ == o.den_) {
        std::vector<Poly> num(num_.size(), Poly(alg_->ell()));
        for (std::size_t i = 0; i < num_.size(); ++i) num[i] = num_[i] + o.num_[i];
        return TowerElement(alg_, std::move(num), den_);
    }
    Poly g = gcd(den_, o.den_);
    Poly ma = o.den_ / g, mb = den_ / g;
    std::vector<Poly> num(num_.size(), Poly(alg_->ell()));
    for (std::size_t i = 0; i < num_.size(); ++i) num[i] = times(num_[i], ma) + times(o.num_[i], mb);
    return TowerElement(alg_, std::move(num), den_ * ma);
}

TowerElement TowerElement::operator-() const {
    TowerElement r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement TowerElement::operator*(const TowerElement& o) const {
    require_same_algebra(*this, o);
    const auto& alg = *alg_;
    std::size_t n = alg.rank();
    std::vector<Poly> out(n, Poly(alg.ell()));
    for (std::size_t e = 0; e < n; ++e) {
        if (num_[e].is_zero()) continue;
        for (std::size_t f = 0; f < n; ++f) {
            if (o.num_[f].is_zero()) continue;
            Poly nm = num_[e] * o.num_[f];
            for (const auto& term : alg.product(e, f)) out[term.index] = out[term.index] + times(nm, term.coeff);
        }
    }
    Poly den = den_ * o.den_;
    if (!alg.structure_denominator().is_one()) den = den * alg.structure_denominator();
    return TowerElement(alg_, std::move(out), std::move(den));
}

TowerElement TowerElement::operator/(const TowerElement& o) const { return *this * invert(o); }

TowerElement TowerElement::scaled(const RatFunc& c) const {
    if (c.is_zero()) return TowerElement(alg_);
    std::vector<Poly> num(num_.size(), Poly(alg_->ell()));
    for (std::size_t i = 0; i < num_.size(); ++i) num[i] = times(num_[i], c.num());
    return TowerElement(alg_, std::move(num), den_ * c.den());
}

TowerElement TowerElement::pow(std::uint64_t e) const {
    TowerElement result = one(alg_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const TowerElement& a, const TowerElement& b) {
    return a.alg_ == b.alg_ && a.den_ == b.den_ && a.num_ == b.num_;
}

std::string TowerElement::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i].is_zero()) continue;
        RatFunc c = coefficient(i);
        std::string cs = c.to_string();
        std::string mono;
        auto e = alg_->exponents(i);
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (!e[g]) continue;
            if (!mono.empty()) mono += '*';
            mono += alg_->generator_name(g);
            if (e[g] > 1) mono += '^' + std::to_string(e[g]);
        }
        if (!out.empty()) out += " + ";
        if (mono.empty()) {
            out += cs;
        } else if (c.is_one()) {
            out += mono;
        } else {
            bool compound = cs.find_first_of("+/") != std::string::npos;
            out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------- inverses

namespace {

// Columns are the coefficient vectors of e * x^f.
RatMatrix multiplication_matrix(const TowerElement& e) {
    const auto& alg = e.algebra();
    std::size_t n = alg->rank();
    RatMatrix m(n, std::vector<RatFunc>(n, RatFunc(alg->ell())));
    for (std::size_t f = 0; f < n; ++f) {
        std::vector<Poly> mono(n, Poly(alg->ell()));
        mono[f] = one_poly(alg->ell());
        TowerElement col = e * TowerElement(alg, std::move(mono), one_poly(alg->ell()));
        for (std::size_t g = 0; g < n; ++g) m[g][f] = col.coefficient(g);
    }
    return m;
}

}  // namespace

std::optional<TowerElement> try_invert(const TowerElement& e) {
    if (e.is_zero()) return std::nullopt;
    const auto& alg = e.algebra();
    if (auto c = e.as_scalar()) return TowerElement::scalar(alg, c->inverse());
    std::vector<RatFunc> rhs(alg->rank(), RatFunc(alg->ell()));
    rhs[0] = RatFunc::constant(alg->ell(), 1);
    auto x = solve(multiplication_matrix(e), rhs);
    if (!x) return std::nullopt;
    return TowerElement::from_coefficients(alg, *x);
}

TowerElement invert(const TowerElement& e) {
    if (auto x = try_invert(e)) return *x;
    const auto& alg = e.algebra();
    if (e.is_zero()) throw NonUnitError("zero is not a unit", TowerElement::one(alg));
    auto kernel = kernel_basis(multiplication_matrix(e), alg->rank());
    if (kernel.empty()) throw std::logic_error("singular multiplication without kernel");
    throw NonUnitError("element is a zero divisor", TowerElement::from_coefficients(alg, kernel[0]));
}

// ---------------------------------------------------------------- KummerAlgebra

AlgebraPtr KummerAlgebra::base(const PrimeFieldSpec& field) {
    std::shared_ptr<KummerAlgebra> a(new KummerAlgebra());
    a->field_ = field;
    a->rank_ = 1;
    a->table_den_ = one_poly(field.ell);
    a->table_ = {{Term{0, one_poly(field.ell)}}};
    return a;
}

AlgebraPtr KummerAlgebra::extend(const AlgebraPtr& parent, std::string name, const TowerElement& c) {
    if (c.algebra() != parent) throw std::invalid_argument("relation constant must lie in the parent algebra");
    if (c.is_zero()) throw std::invalid_argument("relation constant must be nonzero");
    for (const auto& existing : parent->names_)
        if (existing == name) throw std::invalid_argument("duplicate generator name " + name);
    fp_t ell = parent->ell(), p = parent->p();
    std::size_t r = parent->rank();
    std::shared_ptr<KummerAlgebra> a(new KummerAlgebra());
    a->field_ = parent->field_;
    a->rank_ = r * p;
    a->parent_ = parent;
    a->names_ = parent->names_;
    a->names_.push_back(std::move(name));
    auto pad = [&](const std::vector<Poly>& v) {
        std::vector<Poly> out = v;
        out.resize(a->rank_, Poly(ell));
        return out;
    };
    for (const auto& [num, den] : parent->relations_) a->relations_.emplace_back(pad(num), den);
    a->relations_.emplace_back(pad(c.numerators()), c.denominator());

    // Parent products alpha*beta and alpha*beta*c, as parent elements.
    std::vector<TowerElement> plain, carried;
    plain.reserve(r * r);
    carried.reserve(r * r);
    for (std::size_t e = 0; e < r; ++e) {
        for (std::size_t f = 0; f < r; ++f) {
            std::vector<Poly> num(r, Poly(ell));
            for (const auto& t : parent->product(e, f)) num[t.index] = t.coeff;
            TowerElement x(parent, std::move(num), parent->table_den_);
            carried.push_back(x * c);
            plain.push_back(std::move(x));
        }
    }
    Poly den = one_poly(ell);
    for (const auto& x : plain) den = lcm(den, x.denominator());
    for (const auto& x : carried) den = lcm(den, x.denominator());
    a->table_den_ = den;
    a->table_.assign(a->rank_ * a->rank_, {});
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            bool carry = i + j >= p;
            std::size_t top = (i + j) % p;
            for (std::size_t e = 0; e < r; ++e) {
                for (std::size_t f = 0; f < r; ++f) {
                    const TowerElement& x = carry ? carried[e * r + f] : plain[e * r + f];
                    Poly scale = den / x.denominator();
                    auto& terms = a->table_[(i * r + e) * a->rank_ + (j * r + f)];
                    for (std::size_t g = 0; g < r; ++g) {
                        if (x.numerators()[g].is_zero()) continue;
                        terms.push_back(Term{static_cast<std::uint32_t>(top * r + g), times(x.numerators()[g], scale)});
                    }
                }
            }
        }
    }
    return a;
}

AlgebraPtr KummerAlgebra::kummer(const PrimeFieldSpec& field, const std::vector<std::pair<std::string, RatFunc>>& gens) {
    AlgebraPtr a = base(field);
    for (const auto& [name, c] : gens) {
        if (c.ell() != field.ell) throw std::invalid_argument("constant over the wrong field");
        a = extend(a, name, TowerElement::scalar(a, c));
    }
    return a;
}

TowerElement KummerAlgebra::relation(std::size_t i) const {
    const auto& [num, den] = relations_.at(i);
    return TowerElement(shared_from_this(), num, den);
}

std::vector<unsigned> KummerAlgebra::exponents(std::size_t index) const {
    std::vector<unsigned> e(names_.size());
    for (auto& x : e) {
        x = static_cast<unsigned>(index % p());
        index /= p();
    }
    return e;
}

std::size_t KummerAlgebra::index(const std::vector<unsigned>& exponents) const {
    if (exponents.size() != names_.size()) throw std::invalid_argument("wrong number of exponents");
    std::size_t idx = 0;
    for (std::size_t g = exponents.size(); g-- > 0;) {
        if (exponents[g] >= p()) throw std::invalid_argument("exponent not reduced");
        idx = idx * p() + exponents[g];
    }
    return idx;
}

TowerElement KummerAlgebra::embed(const TowerElement& e) const {
    const KummerAlgebra* a = this;
    while (a && a != e.algebra().get()) a = a->parent_.get();
    if (!a) throw std::invalid_argument("element does not lie in a subalgebra of the chain");
    std::vector<Poly> num = e.numerators();
    num.resize(rank_, Poly(ell()));
    return TowerElement(shared_from_this(), std::move(num), e.denominator());
}

namespace {

struct TowerDomain {
    using value_type = TowerElement;
    AlgebraPtr alg;

    value_type constant(std::int64_t c) const { return TowerElement::scalar(alg, RatFunc::constant(alg->ell(), c)); }
    std::optional<value_type> variable(std::string_view name) const {
        if (name == "t") return TowerElement::scalar(alg, RatFunc::t(alg->ell()));
        for (std::size_t i = 0; i < alg->num_generators(); ++i)
            if (alg->generator_name(i) == name) return TowerElement::generator(alg, i);
        if (name == "x" && alg->num_generators() == 1) return TowerElement::generator(alg, 0);
        return std::nullopt;
    }
    value_type pow(const value_type& x, std::int64_t e) const {
        if (e < 0) return invert(x).pow(static_cast<std::uint64_t>(-e));
        return x.pow(static_cast<std::uint64_t>(e));
    }
};

}  // namespace

TowerElement KummerAlgebra::parse(std::string_view text) const {
    TowerDomain d{shared_from_this()};
    return parse_expression(text, d);
}

TowerElement substitute(const TowerElement& e, const AlgebraPtr& target, const std::vector<TowerElement>& images) {
    const auto& src = *e.algebra();
    if (images.size() != src.num_generators()) throw std::invalid_argument("one image per generator required");
    for (const auto& x : images)
        if (x.algebra() != target) throw std::invalid_argument("images must lie in the target algebra");
    std::size_t n = src.rank();
    fp_t p = src.p();
    TowerElement acc(target);
    std::vector<TowerElement> mono;
    mono.reserve(n);
    mono.push_back(TowerElement::one(target));
    for (std::size_t idx = 1; idx < n; ++idx) {
        std::size_t g = 0, stride = 1;
        while ((idx / stride) % p == 0) {
            ++g;
            stride *= p;
        }
        mono.push_back(mono[idx - stride] * images[g]);
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (e.numerators()[idx].is_zero()) continue;
        acc = acc + mono[idx].scaled(RatFunc(e.numerators()[idx]));
    }
    return acc.scaled(RatFunc(one_poly(src.ell()), e.denominator()));
}

// ---------------------------------------------------------------- GaloisAuto

GaloisAuto::GaloisAuto(AlgebraPtr algebra, std::vector<TowerElement> images, Unchecked)
    : alg_(std::move(algebra)), images_(std::move(images)) {
    if (images_.size() != alg_->num_generators()) throw std::invalid_argument("one image per generator required");
    for (const auto& x : images_)
        if (x.algebra() != alg_) throw std::invalid_argument("images must lie in the same algebra");
    build_table();
}

GaloisAuto::GaloisAuto(AlgebraPtr algebra, std::vector<TowerElement> images)
    : GaloisAuto(std::move(algebra), std::move(images), Unchecked{}) {
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!(images_[i].pow(alg_->p()) == apply(alg_->relation(i))))
            throw std::invalid_argument("image of " + alg_->generator_name(i) + " violates its defining relation");
    }
    std::size_t n = alg_->rank();
    RatMatrix m(n, std::vector<RatFunc>(n, RatFunc(alg_->ell())));
    for (std::size_t e = 0; e < n; ++e)
        for (const auto& t : table_[e]) m[e][t.index] = RatFunc(t.coeff, table_den_);
    if (rank_lower_bound(m, alg_->ell(), n).rank < n && rank(m) < n)
        throw std::invalid_argument("generator images do not define a bijection");
}

void GaloisAuto::build_table() {
    std::size_t n = alg_->rank();
    fp_t p = alg_->p(), ell = alg_->ell();
    std::vector<TowerElement> mono;
    mono.reserve(n);
    mono.push_back(TowerElement::one(alg_));
    for (std::size_t idx = 1; idx < n; ++idx) {
        std::size_t g = 0, stride = 1;
        while ((idx / stride) % p == 0) {
            ++g;
            stride *= p;
        }
        mono.push_back(mono[idx - stride] * images_[g]);
    }
    table_den_ = one_poly(ell);
    for (const auto& x : mono) table_den_ = lcm(table_den_, x.denominator());
    table_.assign(n, {});
    for (std::size_t e = 0; e < n; ++e) {
        Poly scale = table_den_ / mono[e].denominator();
        for (std::size_t g = 0; g < n; ++g) {
            const Poly& c = mono[e].numerators()[g];
            if (!c.is_zero()) table_[e].push_back({static_cast<std::uint32_t>(g), times(c, scale)});
        }
    }
}

GaloisAuto GaloisAuto::identity(const AlgebraPtr& algebra) {
    std::vector<TowerElement> images;
    for (std::size_t i = 0; i < algebra->num_generators(); ++i) images.push_back(TowerElement::generator(algebra, i));
    return GaloisAuto(algebra, std::move(images), Unchecked{});
}

GaloisAuto GaloisAuto::diagonal(const AlgebraPtr& algebra, const std::vector<unsigned>& k) {
    if (k.size() != algebra->num_generators()) throw std::invalid_argument("one exponent per generator required");
    PrimeField f(algebra->ell());
    std::vector<TowerElement> images;
    for (std::size_t i = 0; i < k.size(); ++i) {
        fp_t r = f.pow(algebra->field().rho, k[i]);
        images.push_back(TowerElement::generator(algebra, i).scaled(RatFunc::constant(algebra->ell(), r)));
    }
    return GaloisAuto(algebra, std::move(images));
}

TowerElement GaloisAuto::apply(const TowerElement& e) const {
    if (e.algebra() != alg_) throw std::invalid_argument("automorphism applied to a foreign element");
    std::size_t n = alg_->rank();
    std::vector<Poly> out(n, Poly(alg_->ell()));
    for (std::size_t idx = 0; idx < n; ++idx) {
        const Poly& c = e.numerators()[idx];
        if (c.is_zero()) continue;
        for (const auto& t : table_[idx]) out[t.index] = out[t.index] + times(c, t.coeff);
    }
    Poly den = e.denominator();
    if (!table_den_.is_one()) den = den * table_den_;
    return TowerElement(alg_, std::move(out), std::move(den));
}

bool GaloisAuto::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (!(images_[i] == TowerElement::generator(alg_, i))) return false;
    return true;
}

GaloisAuto compose(const GaloisAuto& s, const GaloisAuto& t) {
    if (s.algebra() != t.algebra()) throw std::invalid_argument("automorphisms of different algebras");
    std::vector<TowerElement> images;
    for (const auto& x : t.images()) images.push_back(s.apply(x));
    return GaloisAuto(s.algebra(), std::move(images), GaloisAuto::Unchecked{});
}

GaloisAuto power(const GaloisAuto& s, unsigned k) {
    GaloisAuto r = GaloisAuto::identity(s.algebra());
    for (unsigned i = 0; i < k; ++i) r = compose(s, r);
    return r;
}

std::vector<GaloisAuto> closure(const std::vector<GaloisAuto>& gens, std::size_t limit) {
    if (gens.empty()) throw std::invalid_argument("closure of an empty set");
    std::vector<GaloisAuto> out{GaloisAuto::identity(gens[0].algebra())};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            GaloisAuto y = compose(g, out[i]);
            if (std::find(out.begin(), out.end(), y) != out.end()) continue;
            if (out.size() >= limit) throw std::length_error("automorphism closure exceeds the limit");
            out.push_back(std::move(y));
        }
    }
    return out;
}

TowerElement norm(const TowerElement& e, const std::vector<GaloisAuto>& h) {
    TowerElement prod = TowerElement::one(e.algebra());
    for (const auto& s : closure(h)) prod = prod * s.apply(e);
    for (const auto& s : h)
        if (!(s.apply(prod) == prod)) throw std::logic_error("norm is not invariant under the subgroup");
    return prod;
}

TowerElement w_element(const TowerElement& v, const GaloisAuto& sigma) {
    TowerElement w = TowerElement::one(v.algebra()), conj = v;
    for (unsigned i = 1; i < v.algebra()->p(); ++i) {
        conj = sigma.apply(conj);
        w = w * conj.pow(i);
    }
    return w;
}

bool w_identity_holds(const TowerElement& v, const GaloisAuto& sigma, const TowerElement& w) {
    TowerElement n = norm(v, {sigma});
    return sigma.apply(w) * n == v.pow(v.algebra()->p()) * w;
}

TowerElement random_element(const AlgebraPtr& algebra, Rng& rng, int max_degree) {
    fp_t ell = algebra->ell();
    std::vector<Poly> num;
    num.reserve(algebra->rank());
    for (std::size_t i = 0; i < algebra->rank(); ++i) {
        std::vector<fp_t> c(static_cast<std::size_t>(max_degree) + 1);
        for (auto& x : c) x = static_cast<fp_t>(rng.below(ell));
        num.emplace_back(ell, std::move(c));
    }
    return TowerElement(algebra, std::move(num), one_poly(ell));
}

TowerElement random_unit(const AlgebraPtr& algebra, Rng& rng, int max_degree) {
    for (unsigned attempt = 0; attempt < kRetryBudget; ++attempt) {
        TowerElement x = random_element(algebra, rng, max_degree);
        if (try_invert(x)) return x;
    }
    throw RetryExhausted("no unit found within the retry budget");
}

TowerElement hilbert90(const TowerElement& u, const GaloisAuto& g, Rng& rng) {
    const auto& alg = u.algebra();
    fp_t p = alg->p();
    if (g.is_identity() || !power(g, p).is_identity()) throw std::invalid_argument("g must have order p");
    // conj[i] = g^i(u); their product is the norm.
    std::vector<TowerElement> conj{u};
    for (unsigned i = 1; i < p; ++i) conj.push_back(g.apply(conj.back()));
    TowerElement n = TowerElement::one(alg);
    for (const auto& x : conj) n = n * x;
    TowerElement one = TowerElement::one(alg);
    if (!(n == one)) throw PreconditionError("norm of u under <g> is not 1");
    if (u == one) return one;
    // u^-1 = g(u) ... g^(p-1)(u) because the norm is 1.
    TowerElement uinv = one;
    for (unsigned i = 1; i < p; ++i) uinv = uinv * conj[i];
    for (unsigned attempt = 0; attempt < kRetryBudget; ++attempt) {
        TowerElement c = random_element(alg, rng);
        TowerElement t(alg), partial = one, gc = c, gu = uinv;
        for (unsigned i = 0; i < p; ++i) {
            t = t + partial * gc;
            partial = partial * gu;
            gu = g.apply(gu);
            gc = g.apply(gc);
        }
        if (t.is_zero() || !try_invert(t)) continue;
        if (!(g.apply(t) == u * t)) throw std::logic_error("resolvent does not satisfy g(t) = u t");
        return t;
    }
    throw RetryExhausted("Hilbert 90 resolvent degenerate for every attempted c");
}

// ---------------------------------------------------------------- bicyclic

Bicyclic make_bicyclic(const PrimeFieldSpec& field, const RatFunc& a1, const RatFunc& a2) {
    AlgebraPtr k = KummerAlgebra::kummer(field, {{"x1", a1}, {"x2", a2}});
    AlgebraPtr f2 = KummerAlgebra::kummer(field, {{"x2", a2}});
    return Bicyclic{field,
                    a1,
                    a2,
                    k->parent(),
                    f2,
                    k,
                    GaloisAuto::diagonal(k, {1, 0}),
                    GaloisAuto::diagonal(k, {0, 1})};
}

TowerElement Bicyclic::from_f1(const TowerElement& e) const { return k->embed(e); }

TowerElement Bicyclic::from_f2(const TowerElement& e) const {
    if (e.algebra() != f2) throw std::invalid_argument("element is not in F2");
    return substitute(e, k, {TowerElement::generator(k, 1)});
}

NormIdentityReport verify_norm_identities(const Bicyclic& k, const TowerElement& v1, const TowerElement& v2) {
    NormIdentityReport r;
    TowerElement x1 = k.from_f1(v1), x2 = k.from_f2(v2);
    TowerElement n1 = norm(x1, {k.sigma1}), n2 = norm(x2, {k.sigma2});
    r.precondition = n1.is_scalar() && n1 == n2 && !n1.is_zero();
    if (!r.precondition) return r;
    TowerElement u = x2 * invert(x1);
    TowerElement w1 = w_element(x2, k.sigma2), w2 = w_element(x1, k.sigma1);
    // N_{K/F2} is the norm over <sigma1>, N_{K/F1} the norm over <sigma2>.
    r.identity1 = norm(u, {k.sigma1}) * w1 == k.sigma2.apply(w1);
    r.identity2 = k.sigma1.apply(w2) * norm(u, {k.sigma2}) == w2;
    return r;
}

// ---------------------------------------------------------------- tower

AlgebraPtr make_fb(const PrimeFieldSpec& field, const RatFunc& b) { return KummerAlgebra::kummer(field, {{"xb", b}}); }

TowerDescription build_tower(const PrimeFieldSpec& field, const RatFunc& b, const TowerElement& v, std::uint64_t seed) {
    const AlgebraPtr& fb = v.algebra();
    if (fb->num_generators() != 1 || fb->ell() != field.ell || fb->p() != field.p ||
        !(fb->relation(0) == TowerElement::scalar(fb, b)))
        throw std::invalid_argument("v must lie in F[x]/(x^p - b)");
    fp_t p = field.p;
    if (b.is_zero() || is_pth_power(b, p)) throw InstanceRejected("b is a p-th power");
    GaloisAuto sb_fb = GaloisAuto::diagonal(fb, {1});
    auto a = norm(v, {sb_fb}).as_scalar();
    if (!a || a->is_zero()) throw InstanceRejected("v is not a unit");
    if (is_pth_power(*a, p)) throw InstanceRejected("a = N(v) is a p-th power");
    if (!kummer_independent(*a, b, p)) throw InstanceRejected("Kummer characters of a and b are dependent");
    TowerElement w = w_element(v, sb_fb);

    AlgebraPtr la = KummerAlgebra::extend(fb, "xa", TowerElement::scalar(fb, *a));
    AlgebraPtr k = KummerAlgebra::extend(la, "xw", la->embed(w));
    TowerElement xb = TowerElement::generator(k, 0), xa = TowerElement::generator(k, 1),
                 xw = TowerElement::generator(k, 2);
    RatFunc rho = RatFunc::constant(field.ell, field.rho);
    TowerElement xa_inv = xa.pow(p - 1).scaled(a->inverse());
    GaloisAuto sigma_b(k, {xb.scaled(rho), xa, k->embed(v) * xa_inv * xw});
    return TowerDescription{field,
                            b,
                            *a,
                            fb,
                            k,
                            v,
                            w,
                            GaloisAuto::diagonal(k, {0, 1, 0}),
                            std::move(sigma_b),
                            GaloisAuto::diagonal(k, {0, 0, 1}),
                            seed};
}

TowerDescription random_tower(const PrimeFieldSpec& field, const RatFunc& b, std::uint64_t seed) {
    AlgebraPtr fb = make_fb(field, b);
    Rng rng(seed);
    for (unsigned attempt = 0; attempt < kRetryBudget; ++attempt) {
        TowerElement v = random_element(fb, rng, 1);
        try {
            return build_tower(field, b, v, seed);
        } catch (const InstanceRejected&) {
        }
    }
    throw RetryExhausted("no independent tower instance within the retry budget");
}

namespace {

std::vector<TowerElement> composed_images(const GaloisAuto& s, const GaloisAuto& t) {
    std::vector<TowerElement> out;
    for (const auto& x : t.images()) out.push_back(s.apply(x));
    return out;
}

}  // namespace

TowerGalois galois_group_of_tower(const TowerDescription& t) {
    fp_t p = t.field.p;
    std::size_t n = static_cast<std::size_t>(p) * p * p;
    TowerGalois out;
    std::vector<GaloisAuto> pa, pb, pt;
    for (unsigned i = 0; i < p; ++i) {
        pa.push_back(power(t.sigma_a, i));
        pb.push_back(power(t.sigma_b, i));
        pt.push_back(power(t.tau, i));
    }
    out.elements.reserve(n);
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j)
            for (unsigned k = 0; k < p; ++k) out.elements.push_back(compose(pb[i], compose(pa[j], pt[k])));

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (out.elements[x] == out.elements[y]) throw std::logic_error("tower automorphisms are not distinct");

    std::vector<elem_t> table(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            auto img = composed_images(out.elements[x], out.elements[y]);
            auto it = std::find_if(out.elements.begin(), out.elements.end(),
                                   [&](const GaloisAuto& g) { return g.images() == img; });
            if (it == out.elements.end()) throw std::logic_error("composition leaves the p^3 candidate set");
            table[x * n + y] = static_cast<elem_t>(it - out.elements.begin());
        }
    }
    out.closed_order = true;
    std::vector<std::string> labels;
    for (elem_t g = 0; g < n; ++g) {
        auto c = heisenberg_coords(p, g);
        labels.push_back("sb^" + std::to_string(c[0]) + " sa^" + std::to_string(c[1]) + " tau^" + std::to_string(c[2]));
    }
    out.group = std::make_shared<GroupTable>("gal(K/F)", n, std::move(table), std::move(labels));
    std::vector<elem_t> id(n);
    for (elem_t g = 0; g < n; ++g) id[g] = g;
    out.to_heisenberg = GroupHom{out.group, heisenberg(p), std::move(id)};
    out.isomorphism = out.to_heisenberg.is_homomorphism() && out.to_heisenberg.is_injective() &&
                      out.to_heisenberg.is_surjective();
    out.commutator_relation =
        composed_images(t.sigma_b, t.sigma_a) == composed_images(t.tau, compose(t.sigma_a, t.sigma_b));
    out.tau_central = composed_images(t.tau, t.sigma_a) == composed_images(t.sigma_a, t.tau) &&
                      composed_images(t.tau, t.sigma_b) == composed_images(t.sigma_b, t.tau);
    return out;
}

std::optional<unsigned> kummer_exponent(const GaloisAuto& g, const TowerElement& x) {
    TowerElement y = g.apply(x);
    PrimeField f(x.algebra()->ell());
    fp_t r = 1;
    for (unsigned k = 0; k < x.algebra()->p(); ++k) {
        if (y == x.scaled(RatFunc::constant(x.algebra()->ell(), r))) return k;
        r = f.mul(r, x.algebra()->field().rho);
    }
    return std::nullopt;
}

PhiReport chi_w_and_phi_check(const TowerDescription& t, const TowerGalois& g) {
    PhiReport r;
    fp_t p = t.field.p;
    std::size_t n = g.elements.size();
    TowerElement xb = TowerElement::generator(t.k, 0), xa = TowerElement::generator(t.k, 1),
                 xw = TowerElement::generator(t.k, 2);
    std::vector<unsigned> chi_a(n), chi_b(n), phi(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto ca = kummer_exponent(g.elements[x], xa), cb = kummer_exponent(g.elements[x], xb);
        if (!ca || !cb) return r;
        chi_a[x] = *ca;
        chi_b[x] = *cb;
        phi[x] = heisenberg_coords(p, g.to_heisenberg(static_cast<elem_t>(x)))[2];
    }
    r.phi_identity_zero = phi[g.group->identity()] == 0;
    r.phi_coboundary = true;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            elem_t xy = g.group->mul(static_cast<elem_t>(x), static_cast<elem_t>(y));
            unsigned d = (phi[x] + phi[y] + p - phi[xy]) % p;
            if (d != chi_a[x] * chi_b[y] % p) r.phi_coboundary = false;
            ++r.pairs_checked;
        }
    }
    r.res_chi_w = true;
    for (std::size_t x = 0; x < n; ++x) {
        if (chi_b[x] != 0) continue;
        auto cw = kummer_exponent(g.elements[x], xw);
        if (!cw || *cw != phi[x]) r.res_chi_w = false;
    }
    return r;
}

bool w_not_pth_power_check(const TowerDescription& t) {
    fp_t p = t.field.p;
    if (is_pth_power(t.a, p) || is_pth_power(t.b, p) || !kummer_independent(t.a, t.b, p)) return false;
    if (p != 2) return true;
    // At p = 2 a square w would have a square norm; N(w) = a here.
    auto nw = norm(t.w, {GaloisAuto::diagonal(t.fb, {1})}).as_scalar();
    return nw && !is_pth_power(*nw, 2);
}

TowerChecks check_tower(const TowerDescription& t) {
    TowerChecks c;
    fp_t p = t.field.p;
    c.independence = !is_pth_power(t.a, p) && !is_pth_power(t.b, p) && kummer_independent(t.a, t.b, p) &&
                     w_not_pth_power_check(t);
    GaloisAuto sb_fb = GaloisAuto::diagonal(t.fb, {1});
    TowerElement wk = t.k->embed(t.w);
    c.w_identity = w_identity_holds(t.v, sb_fb, t.w) && t.sigma_a.apply(wk) == wk;
    try {
        TowerGalois g = galois_group_of_tower(t);
        c.galois_order = g.all();
        PhiReport r = chi_w_and_phi_check(t, g);
        c.phi_coboundary = r.phi_coboundary && r.phi_identity_zero;
        c.res_chi_w = r.res_chi_w;
    } catch (const std::logic_error&) {
        c.galois_order = false;
    }
    return c;
}

}  // namespace masseykit
