#include "masseykit/crossed_product.hpp"

#include <algorithm>
#include <stdexcept>

#include "masseykit/ratfunc_linalg.hpp"

namespace masseykit {

ACPCReport acp_check(const ACPDescriptor& d) {
    const Bicyclic& k = d.k;
    ACPCReport r;
    r.b1_fixed = k.sigma1.apply(d.b1) == d.b1;
    r.b2_fixed = k.sigma2.apply(d.b2) == d.b2;
    r.b1_norm = k.sigma2.apply(d.b1) == norm(d.u, {k.sigma1}) * d.b1;
    r.b2_norm = k.sigma1.apply(d.b2) * norm(d.u, {k.sigma2}) == d.b2;
    return r;
}

// ---------------------------------------------------------------- algebra

CrossedProduct::CrossedProduct(ACPDescriptor d) : d_(std::move(d)) {}

CPPtr CrossedProduct::make(ACPDescriptor d) {
    AlgebraPtr k = d.k.k;
    for (const auto* e : {&d.b1, &d.b2, &d.u})
        if (e->algebra() != k) throw std::invalid_argument("b1, b2 and u must lie in K");
    if (!try_invert(d.b1) || !try_invert(d.b2) || !try_invert(d.u))
        throw PreconditionError("b1, b2 and u must be units");
    std::shared_ptr<CrossedProduct> a(new CrossedProduct(std::move(d)));
    const Bicyclic& kk = a->d_.k;
    unsigned p = kk.field.p;

    std::vector<GaloisAuto> s1{GaloisAuto::identity(k)}, s2{GaloisAuto::identity(k)};
    for (unsigned i = 1; i < p; ++i) {
        s1.push_back(compose(kk.sigma1, s1.back()));
        s2.push_back(compose(kk.sigma2, s2.back()));
    }
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) a->autos_.push_back(compose(s1[i], s2[j]));

    // ur[r] = prod_{m<r} sigma1^m(u); c[j][r] = prod_{n<j} sigma2^n(ur[r]).
    TowerElement one = TowerElement::one(k);
    std::vector<TowerElement> ur{one};
    for (unsigned r = 1; r < p; ++r) ur.push_back(ur.back() * s1[r - 1].apply(a->d_.u));
    std::vector<std::vector<TowerElement>> c(p, std::vector<TowerElement>(p, one));
    for (unsigned j = 1; j < p; ++j)
        for (unsigned r = 0; r < p; ++r) c[j][r] = c[j - 1][r] * s2[j - 1].apply(ur[r]);
    a->twist_.resize(static_cast<std::size_t>(p) * p * p);
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j)
            for (unsigned r = 0; r < p; ++r) {
                TowerElement x = s1[i].apply(c[j][r]);
                if (!(x == one)) a->twist_[(i * p + j) * p + r] = std::move(x);
            }
    for (unsigned m = 0; m < p; ++m) a->b2conj_.push_back(s1[m].apply(a->d_.b2));
    return a;
}

// ---------------------------------------------------------------- elements

CPElement::CPElement(CPPtr algebra) : alg_(std::move(algebra)) {
    if (!alg_) throw std::invalid_argument("null crossed product");
    fp_t p = alg_->p();
    slots_.assign(static_cast<std::size_t>(p) * p, TowerElement(alg_->k()));
}

CPElement CPElement::monomial(const CPPtr& algebra, const TowerElement& k, unsigned i, unsigned j) {
    CPElement e(algebra);
    fp_t p = algebra->p();
    if (i >= p || j >= p) throw std::out_of_range("monomial exponent out of range");
    if (k.algebra() != algebra->k()) throw std::invalid_argument("coefficient is not in K");
    e.slots_[i * p + j] = k;
    return e;
}

CPElement CPElement::from_k(const CPPtr& algebra, const TowerElement& k) { return monomial(algebra, k, 0, 0); }
CPElement CPElement::one(const CPPtr& algebra) { return from_k(algebra, TowerElement::one(algebra->k())); }
CPElement CPElement::z1(const CPPtr& algebra) { return monomial(algebra, TowerElement::one(algebra->k()), 1, 0); }
CPElement CPElement::z2(const CPPtr& algebra) { return monomial(algebra, TowerElement::one(algebra->k()), 0, 1); }

const TowerElement& CPElement::slot(unsigned i, unsigned j) const {
    fp_t p = alg_->p();
    if (i >= p || j >= p) throw std::out_of_range("slot out of range");
    return slots_[i * p + j];
}

std::vector<RatFunc> CPElement::coordinates() const {
    std::vector<RatFunc> out;
    for (const auto& s : slots_) {
        auto c = s.coefficients();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

bool CPElement::is_zero() const {
    return std::all_of(slots_.begin(), slots_.end(), [](const TowerElement& s) { return s.is_zero(); });
}

std::optional<RatFunc> CPElement::as_scalar() const {
    for (std::size_t i = 1; i < slots_.size(); ++i)
        if (!slots_[i].is_zero()) return std::nullopt;
    return slots_[0].as_scalar();
}

namespace {

void same_algebra(const CPElement& a, const CPElement& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("elements of different crossed products");
}

}  // namespace

CPElement CPElement::operator+(const CPElement& o) const {
    same_algebra(*this, o);
    CPElement r = *this;
    for (std::size_t i = 0; i < slots_.size(); ++i) r.slots_[i] = r.slots_[i] + o.slots_[i];
    return r;
}

CPElement CPElement::operator-(const CPElement& o) const {
    same_algebra(*this, o);
    CPElement r = *this;
    for (std::size_t i = 0; i < slots_.size(); ++i) r.slots_[i] = r.slots_[i] - o.slots_[i];
    return r;
}

CPElement CPElement::operator*(const CPElement& o) const { return cp_mul(*this, o); }

CPElement CPElement::scaled(const RatFunc& c) const {
    CPElement r = *this;
    for (auto& s : r.slots_) s = s.scaled(c);
    return r;
}

CPElement CPElement::pow(unsigned e) const {
    CPElement r = one(alg_);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

CPElement cp_mul(const CPElement& x, const CPElement& y) {
    same_algebra(x, y);
    const CrossedProduct& a = *x.algebra();
    unsigned p = a.p();
    const TowerElement& b1 = a.descriptor().b1;
    CPElement out(x.algebra());
    std::vector<TowerElement> acc(static_cast<std::size_t>(p) * p, TowerElement(a.k()));
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) {
            const TowerElement& xs = x.slots()[i * p + j];
            if (xs.is_zero()) continue;
            const GaloisAuto& conj = a.conjugation(i, j);
            for (unsigned r = 0; r < p; ++r)
                for (unsigned s = 0; s < p; ++s) {
                    const TowerElement& ys = y.slots()[r * p + s];
                    if (ys.is_zero()) continue;
                    TowerElement term = xs * conj.apply(ys);
                    if (const auto& tw = a.twist(i, j, r)) term = term * *tw;
                    unsigned m = i + r, n = j + s;
                    if (m >= p) {
                        term = term * b1;
                        m -= p;
                    }
                    if (n >= p) {
                        term = term * a.b2_conjugate(m);
                        n -= p;
                    }
                    acc[m * p + n] = acc[m * p + n] + term;
                }
        }
    out.slots_ = std::move(acc);
    return out;
}

// ---------------------------------------------------------------- instances

ACPDescriptor build_A(const Bicyclic& k, const TowerElement& v1, const TowerElement& v2) {
    if (v1.algebra() != k.f1 || v2.algebra() != k.f2) throw std::invalid_argument("v1 must lie in F1 and v2 in F2");
    TowerElement n1 = norm(v1, {GaloisAuto::diagonal(k.f1, {1})});
    TowerElement n2 = norm(v2, {GaloisAuto::diagonal(k.f2, {1})});
    auto c1 = n1.as_scalar(), c2 = n2.as_scalar();
    if (!c1 || !c2 || c1->is_zero() || !(*c1 == *c2)) throw PreconditionError("v1 and v2 must have equal nonzero norms");
    TowerElement x1 = k.from_f1(v1), x2 = k.from_f2(v2);
    return ACPDescriptor{k, w_element(x2, k.sigma2), w_element(x1, k.sigma1), x2 * invert(x1)};
}

ACPInstance instance_acp(const PrimeFieldSpec& field, const RatFunc& a2, const TowerElement& v2) {
    const AlgebraPtr& f2 = v2.algebra();
    if (f2->num_generators() != 1 || !(f2->relation(0) == TowerElement::scalar(f2, a2)))
        throw std::invalid_argument("v2 must lie in F[x]/(x^p - a2)");
    if (is_pth_power(a2, field.p)) throw PreconditionError("a2 is a p-th power");
    auto m = norm(v2, {GaloisAuto::diagonal(f2, {1})}).as_scalar();
    if (!m || m->is_zero()) throw InstanceRejected("v2 has zero norm");
    // N(x1) = (-1)^(p-1) a1.
    RatFunc a1 = field.p == 2 ? -*m : *m;
    if (is_pth_power(a1, field.p) || !kummer_independent(a1, a2, field.p))
        throw InstanceRejected("a1 and a2 do not give a field of degree p^2");
    Bicyclic k = make_bicyclic(field, a1, a2);
    TowerElement v2k = substitute(v2, k.f2, {TowerElement::generator(k.f2, 0)});
    TowerElement v1 = TowerElement::generator(k.f1, 0);
    ACPDescriptor d = build_A(k, v1, v2k);
    return ACPInstance{v1, v2k, std::move(d), 0, 1};
}

ACPInstance instance_acp(const PrimeFieldSpec& field, const RatFunc& a2, std::uint64_t seed) {
    if (is_pth_power(a2, field.p)) throw PreconditionError("a2 is a p-th power");
    AlgebraPtr f2 = KummerAlgebra::kummer(field, {{"x2", a2}});
    Rng rng(seed);
    for (unsigned attempt = 1; attempt <= kRetryBudget; ++attempt) {
        TowerElement v2 = random_element(f2, rng, 1);
        try {
            ACPInstance inst = instance_acp(field, a2, v2);
            inst.seed = seed;
            inst.attempts = attempt;
            return inst;
        } catch (const InstanceRejected&) {
        }
    }
    throw RetryExhausted("no admissible v2 within the retry budget");
}

// ---------------------------------------------------------------- structure

StructureElements structure_elements(const CPPtr& a, Rng& rng) {
    const Bicyclic& k = a->descriptor().k;
    TowerElement x1 = TowerElement::generator(k.k, 0), x2 = TowerElement::generator(k.k, 1);
    TowerElement t = hilbert90(a->descriptor().u, compose(k.sigma1, k.sigma2), rng);
    TowerElement one = TowerElement::one(k.k);
    return StructureElements{CPElement::from_k(a, invert(x1) * x2), CPElement::from_k(a, x1),
                             CPElement::monomial(a, one, 1, 1), CPElement::monomial(a, t, 0, 1), t};
}

unsigned RelationsReport::passed() const {
    return static_cast<unsigned>(std::count(relations.begin(), relations.end(), true));
}

RelationsReport verify_relations(const CPPtr& a, const StructureElements& s) {
    const Bicyclic& k = a->descriptor().k;
    unsigned p = a->p();
    RatFunc rho = RatFunc::constant(k.field.ell, k.field.rho);
    auto scalar = [&](const RatFunc& c) { return CPElement::from_k(a, TowerElement::scalar(k.k, c)); };
    RelationsReport r;
    CPElement wp = s.w.pow(p), zp = s.z.pow(p);
    r.wp = wp.as_scalar();
    r.zp = zp.as_scalar();
    r.relations[0] = s.x.pow(p) == scalar(k.a2 / k.a1);
    r.relations[1] = r.wp.has_value();
    r.relations[2] = s.w * s.x == (s.x * s.w).scaled(rho);
    r.relations[3] = s.y.pow(p) == scalar(k.a1);
    r.relations[4] = r.zp.has_value();
    r.relations[5] = s.z * s.y == (s.y * s.z).scaled(rho);
    r.relations[6] = s.z * s.x == s.x * s.z;
    r.relations[7] = s.z * s.w == s.w * s.z;
    r.relations[8] = s.y * s.x == s.x * s.y;
    r.relations[9] = s.y * s.w == s.w * s.y;
    return r;
}

DecompositionReport verify_decomposition(const CPPtr& a, const StructureElements& s) {
    unsigned p = a->p();
    const Bicyclic& k = a->descriptor().k;
    RelationsReport rel = verify_relations(a, s);
    DecompositionReport d;
    d.relations = rel;
    d.wp = rel.wp;
    d.zp = rel.zp;
    d.scalars = rel.relations[1] && rel.relations[4];
    d.symbol_a1 = rel.relations[0] && rel.relations[1] && rel.relations[2];
    d.symbol_a2 = rel.relations[3] && rel.relations[4] && rel.relations[5];

    auto powers = [&](const CPElement& e) {
        std::vector<CPElement> out{CPElement::one(a)};
        for (unsigned i = 1; i < p; ++i) out.push_back(out.back() * e);
        return out;
    };
    auto xs = powers(s.x), ws = powers(s.w), ys = powers(s.y), zs = powers(s.z);
    std::vector<CPElement> left, right;
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) {
            left.push_back(xs[i] * ws[j]);
            right.push_back(ys[i] * zs[j]);
        }
    d.commute = true;
    RatMatrix m;
    for (const auto& l : left)
        for (const auto& r : right) {
            CPElement lr = l * r;
            if (!(lr == r * l)) d.commute = false;
            m.push_back(lr.coordinates());
        }
    std::size_t full = static_cast<std::size_t>(p) * p * p * p;
    d.rank = rank_lower_bound(m, k.field.ell, full).rank;
    if (d.rank < full) d.rank = rank(m);
    d.rank_p4 = d.rank == full;
    return d;
}

bool associative_on(const CPElement& x, const CPElement& y, const CPElement& z) { return (x * y) * z == x * (y * z); }

CPElement random_cp_element(const CPPtr& a, Rng& rng, unsigned slots, int max_degree) {
    unsigned n = a->p() * a->p();
    std::vector<unsigned> idx(n);
    for (unsigned i = 0; i < n; ++i) idx[i] = i;
    if (slots == 0 || slots > n) slots = n;
    // Partial Fisher-Yates for the occupied slots.
    for (unsigned i = 0; i < slots; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    CPElement e(a);
    for (unsigned i = 0; i < slots; ++i)
        e = e + CPElement::monomial(a, random_element(a->k(), rng, max_degree), idx[i] / a->p(), idx[i] % a->p());
    return e;
}

CenterReport center_check(const CPPtr& a) {
    const AlgebraPtr& k = a->k();
    unsigned p = a->p();
    std::vector<CPElement> gens{CPElement::z1(a), CPElement::z2(a), CPElement::from_k(a, TowerElement::generator(k, 0)),
                                CPElement::from_k(a, TowerElement::generator(k, 1))};
    auto commutators = [&](const CPElement& x) {
        std::vector<RatFunc> row;
        for (const auto& g : gens) {
            auto c = (x * g - g * x).coordinates();
            row.insert(row.end(), c.begin(), c.end());
        }
        return row;
    };
    RatMatrix m;
    fp_t ell = k->ell();
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < p; ++j)
            for (std::size_t e = 0; e < k->rank(); ++e) {
                std::vector<RatFunc> c(k->rank(), RatFunc(ell));
                c[e] = RatFunc::constant(ell, 1);
                m.push_back(commutators(CPElement::monomial(a, TowerElement::from_coefficients(k, c), i, j)));
            }
    CenterReport r;
    std::size_t target = static_cast<std::size_t>(p) * p * p * p - 1;
    r.rank = rank_lower_bound(m, ell, target).rank;
    auto one = commutators(CPElement::one(a));
    r.one_central = std::all_of(one.begin(), one.end(), [](const RatFunc& x) { return x.is_zero(); });
    // 1 in the kernel caps the rank at p^4 - 1, so the bound is exact.
    r.center_is_f = r.one_central && r.rank == target;
    return r;
}

}  // namespace masseykit
