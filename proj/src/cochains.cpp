#include "masseykit/cochains.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace masseykit {

namespace {

std::size_t ipow(std::size_t n, unsigned k) {
    std::size_t r = 1;
    while (k--) r *= n;
    return r;
}

// Sorted sparse row from unsorted (column, coefficient) terms; merges duplicates.
SparseRow make_row(std::vector<std::pair<std::uint32_t, std::int64_t>> e, const PrimeField& F) {
    std::sort(e.begin(), e.end());
    SparseRow row;
    for (auto [c, v] : e) {
        if (!row.empty() && row.back().first == c) {
            row.back().second = F.reduce(static_cast<std::int64_t>(row.back().second) + v);
        } else {
            if (!row.empty() && row.back().second == 0) row.pop_back();
            row.emplace_back(c, F.reduce(v));
        }
    }
    if (!row.empty() && row.back().second == 0) row.pop_back();
    return row;
}

// Branch-free reduction of v in [0, 4p) to [0, p); random cochain values make
// the branches unpredictable.
inline fp_t reduce4(fp_t v, fp_t p) {
    v -= (2 * p) & -static_cast<fp_t>(v >= 2 * p);
    v -= p & -static_cast<fp_t>(v >= p);
    return v;
}

// a - b + c - d mod p for reduced inputs
inline fp_t alt4(fp_t a, fp_t b, fp_t c, fp_t d, fp_t p) { return reduce4(a + c + 2 * p - b - d, p); }

}  // namespace

Cochain::Cochain(GroupPtr group, unsigned degree, fp_t p)
    : group_(std::move(group)), degree_(degree), p_(p), n_(group_ ? group_->order() : 0) {
    if (!group_) throw std::invalid_argument("cochain without a group");
    if (degree_ > 3) throw std::domain_error("cochain degree " + std::to_string(degree_) + " > 3");
    if (!is_prime(p_)) throw std::invalid_argument("cochain modulus must be prime");
    values_.assign(ipow(n_, degree_), 0);
}

Cochain::Cochain(GroupPtr group, unsigned degree, fp_t p, std::vector<fp_t> values) : Cochain(std::move(group), degree, p) {
    if (values.size() != values_.size())
        throw std::invalid_argument("cochain value table has " + std::to_string(values.size()) + " entries, expected " +
                                    std::to_string(values_.size()));
    for (auto& v : values) v %= p_;
    values_ = std::move(values);
}

Cochain Cochain::from_function(GroupPtr group, fp_t p, const std::function<std::int64_t(elem_t)>& f) {
    Cochain c(std::move(group), 1, p);
    PrimeField F(p);
    for (elem_t g = 0; g < c.n_; ++g) c.values_[g] = F.reduce(f(g));
    return c;
}

Cochain Cochain::from_function2(GroupPtr group, fp_t p, const std::function<std::int64_t(elem_t, elem_t)>& f) {
    Cochain c(std::move(group), 2, p);
    PrimeField F(p);
    for (elem_t g = 0; g < c.n_; ++g)
        for (elem_t h = 0; h < c.n_; ++h) c.values_[g * c.n_ + h] = F.reduce(f(g, h));
    return c;
}

Cochain Cochain::random(GroupPtr group, unsigned degree, fp_t p, std::mt19937_64& rng) {
    Cochain c(std::move(group), degree, p);
    for (auto& v : c.values_) v = static_cast<fp_t>(rng() % p);
    return c;
}

bool Cochain::is_zero() const {
    for (auto v : values_)
        if (v) return false;
    return true;
}

bool Cochain::compatible(const Cochain& o) const {
    return group_ == o.group_ && degree_ == o.degree_ && p_ == o.p_;
}

namespace {
void require_compatible(const Cochain& a, const Cochain& b, const char* op) {
    if (a.group() != b.group()) throw std::invalid_argument(std::string(op) + ": cochains live on different groups");
    if (a.modulus() != b.modulus()) throw std::invalid_argument(std::string(op) + ": coefficient primes differ");
}
}  // namespace

Cochain Cochain::operator+(const Cochain& o) const {
    require_compatible(*this, o, "cochain sum");
    if (degree_ != o.degree_) throw std::invalid_argument("cochain sum: degrees differ");
    Cochain r = *this;
    fp_t* out = r.values_.data();
    const fp_t* b = o.values_.data();
    const fp_t p = p_;
    for (std::size_t i = 0, m = values_.size(); i < m; ++i) out[i] = reduce4(out[i] + b[i], p);
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    fp_t* out = r.values_.data();
    const fp_t p = p_;
    for (std::size_t i = 0, m = values_.size(); i < m; ++i) out[i] = reduce4(p - out[i], p);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    require_compatible(*this, o, "cochain difference");
    if (degree_ != o.degree_) throw std::invalid_argument("cochain difference: degrees differ");
    Cochain r = *this;
    fp_t* out = r.values_.data();
    const fp_t* b = o.values_.data();
    const fp_t p = p_;
    for (std::size_t i = 0, m = values_.size(); i < m; ++i) out[i] = reduce4(out[i] + p - b[i], p);
    return r;
}

Cochain Cochain::scaled(fp_t c) const {
    PrimeField F(p_);
    Cochain r = *this;
    c %= p_;
    for (auto& v : r.values_) v = F.mul(v, c);
    return r;
}

bool operator==(const Cochain& a, const Cochain& b) { return a.compatible(b) && a.values_ == b.values_; }

// ---------------------------------------------------------------- d and cup

Cochain differential(const Cochain& c) {
    const auto& G = *c.group();
    const std::size_t n = G.order();
    const fp_t p = c.modulus();
    switch (c.degree()) {
        case 0:
            return Cochain(c.group(), 1, p);
        case 1: {
            Cochain r(c.group(), 2, p);
            const auto& f = c.values();
            auto& out = r.values();
            for (elem_t a = 0; a < n; ++a)
                for (elem_t b = 0; b < n; ++b) out[a * n + b] = alt4(f[a], f[G.mul(a, b)], f[b], 0, p);
            return r;
        }
        case 2: {
            Cochain r(c.group(), 3, p);
            const fp_t* f = c.values().data();
            fp_t* out = r.values().data();
            const elem_t* mul = G.table().data();
            for (elem_t a = 0; a < n; ++a)
                for (elem_t b = 0; b < n; ++b) {
                    const elem_t ab = mul[a * n + b];
                    const fp_t* row_b = f + b * n;
                    const fp_t* row_ab = f + ab * n;
                    const fp_t* row_a = f + a * n;
                    const elem_t* mul_b = mul + b * n;
                    const fp_t fab = row_a[b];
                    fp_t* o = out + (a * n + b) * n;
                    for (elem_t k = 0; k < n; ++k) o[k] = alt4(row_b[k], row_ab[k], row_a[mul_b[k]], fab, p);
                }
            return r;
        }
        default:
            throw std::domain_error("differential of a degree-" + std::to_string(c.degree()) + " cochain is unsupported");
    }
}

Cochain cup(const Cochain& f, const Cochain& h) {
    require_compatible(f, h, "cup");
    const unsigned k = f.degree() + h.degree();
    if (k > 3) throw std::domain_error("cup product of total degree " + std::to_string(k) + " > 3");
    const fp_t p = f.modulus();
    PrimeField F(p);
    Cochain r(f.group(), k, p);
    const auto& a = f.values();
    const auto& b = h.values();
    auto& out = r.values();
    const std::size_t m = b.size();
    // Rows of the result are a[i] * b; cache the p possible scaled copies of b.
    std::vector<std::vector<fp_t>> scaled(p <= 64 ? p : 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const fp_t c = a[i];
        if (!c) continue;
        fp_t* o = out.data() + i * m;
        if (c == 1) {
            std::copy(b.begin(), b.end(), o);
        } else if (!scaled.empty()) {
            auto& row = scaled[c];
            if (row.empty()) {
                row.resize(m);
                for (std::size_t j = 0; j < m; ++j) row[j] = F.mul(c, b[j]);
            }
            std::copy(row.begin(), row.end(), o);
        } else {
            for (std::size_t j = 0; j < m; ++j) o[j] = F.mul(c, b[j]);
        }
    }
    return r;
}

bool is_cocycle(const Cochain& c) { return c.degree() == 3 ? false : differential(c).is_zero(); }

// ---------------------------------------------------------------- cohomology

std::vector<Cochain> cocycles_degree1(const GroupPtr& g, fp_t p) {
    const std::size_t n = g->order();
    PrimeField F(p);
    std::vector<SparseRow> rows;
    rows.reserve(n * n);
    for (elem_t a = 0; a < n; ++a)
        for (elem_t b = 0; b < n; ++b) {
            // f(a) + f(b) - f(ab)
            SparseRow row = make_row({{a, 1}, {b, 1}, {g->mul(a, b), -1}}, F);
            rows.push_back(std::move(row));
        }
    auto basis = kernel_basis(FpMatrix::from_rows(n, p, std::move(rows)));
    std::vector<Cochain> out;
    for (auto& v : basis) out.emplace_back(g, 1, p, std::move(v));
    return out;
}

namespace {

// Sparse d(delta_g) in C^2: +1 at (g,*) and (*,g), -1 at (a,b) with ab = g.
SparseRow coboundary_of_delta(const GroupTable& G, elem_t g, const PrimeField& F) {
    const std::size_t n = G.order();
    std::vector<std::pair<std::uint32_t, std::int64_t>> e;
    for (elem_t x = 0; x < n; ++x) {
        e.emplace_back(static_cast<std::uint32_t>(g * n + x), 1);
        e.emplace_back(static_cast<std::uint32_t>(x * n + g), 1);
        e.emplace_back(static_cast<std::uint32_t>(x * n + G.mul(G.inv(x), g)), -1);
    }
    return make_row(std::move(e), F);
}

// Z^2 as the kernel of the cocycle equations (x,y,s) for s in a generating
// set. Associativity of the twisted product against generators propagates to
// all third arguments, so this system has the same kernel as d_2.
std::vector<FpVector> two_cocycle_basis(const GroupTable& G, fp_t p) {
    const std::size_t n = G.order();
    PrimeField F(p);
    auto gens = generating_set(G);
    std::vector<SparseRow> rows;
    for (auto s : gens)
        for (elem_t x = 0; x < n; ++x)
            for (elem_t y = 0; y < n; ++y) {
                SparseRow row = make_row({{static_cast<std::uint32_t>(y * n + s), 1},
                                          {static_cast<std::uint32_t>(G.mul(x, y) * n + s), -1},
                                          {static_cast<std::uint32_t>(x * n + G.mul(y, s)), 1},
                                          {static_cast<std::uint32_t>(x * n + y), -1}},
                                         F);
                if (!row.empty()) rows.push_back(std::move(row));
            }
    return kernel_basis(FpMatrix::from_rows(n * n, p, std::move(rows)));
}

}  // namespace

CohomologyBasis cohomology(const GroupPtr& g, unsigned degree, fp_t p) {
    CohomologyBasis out;
    out.degree = degree;
    if (degree == 1) {
        out.representatives = cocycles_degree1(g, p);
        out.cocycle_dim = out.representatives.size();
        out.coboundary_dim = 0;
        return out;
    }
    if (degree != 2) throw std::domain_error("cohomology is computed in degrees 1 and 2 only");
    if (g->order() > kMaxH2Order)
        throw std::length_error("degree-2 cohomology is limited to groups of order <= " + std::to_string(kMaxH2Order) +
                                ", got " + std::to_string(g->order()));
    CoboundarySolver solver(g, p);
    FpSubspace span = solver.space();
    out.coboundary_dim = span.dimension();
    auto z2 = two_cocycle_basis(*g, p);
    out.cocycle_dim = z2.size();
    for (auto& z : z2) {
        if (span.dimension() == z2.size()) break;
        auto sz = to_sparse(z);
        if (span.contains(sz)) continue;
        span.add(std::move(sz));
        out.representatives.emplace_back(g, 2, p, std::move(z));
    }
    return out;
}

CoboundarySolver::CoboundarySolver(GroupPtr g, fp_t p) : group_(std::move(g)), p_(p), space_(group_->order() * group_->order(), p) {
    PrimeField F(p);
    for (elem_t x = 0; x < group_->order(); ++x) space_.add(coboundary_of_delta(*group_, x, F));
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& target) const {
    if (target.group() != group_ || target.degree() != 2 || target.modulus() != p_)
        throw std::invalid_argument("CoboundarySolver: expected a degree-2 cochain on the solver's group");
    auto coeffs = space_.express_dense(target.values());
    if (!coeffs) return std::nullopt;
    return Cochain(group_, 1, p_, std::move(*coeffs));
}

bool CoboundarySolver::is_coboundary(const Cochain& c) const {
    if (c.group() != group_ || c.degree() != 2 || c.modulus() != p_)
        throw std::invalid_argument("CoboundarySolver: expected a degree-2 cochain on the solver's group");
    return space_.contains_dense(c.values());
}

// ---------------------------------------------------------------- restriction / inflation

Cochain restrict(const Cochain& c, const Subgroup& h) {
    if (h.parent != c.group()) throw std::invalid_argument("restrict: subgroup of a different group");
    if (!h.inclusion().is_homomorphism()) throw std::invalid_argument("restrict: not a subgroup embedding");
    const std::size_t m = h.order();
    Cochain r(h.table, c.degree(), c.modulus());
    auto& out = r.values();
    const auto& e = h.elements;
    switch (c.degree()) {
        case 0:
            out[0] = c();
            break;
        case 1:
            for (std::size_t i = 0; i < m; ++i) out[i] = c(e[i]);
            break;
        case 2:
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) out[i * m + j] = c(e[i], e[j]);
            break;
        default:
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < m; ++k) out[(i * m + j) * m + k] = c(e[i], e[j], e[k]);
    }
    return r;
}

Cochain inflate(const Cochain& c, const GroupHom& pi) {
    if (pi.target != c.group()) throw std::invalid_argument("inflate: cochain is not on the target of the projection");
    if (!pi.is_homomorphism() || !pi.is_surjective()) throw std::invalid_argument("inflate: projection must be a surjective homomorphism");
    const std::size_t n = pi.source->order();
    Cochain r(pi.source, c.degree(), c.modulus());
    auto& out = r.values();
    const auto& im = pi.image;
    switch (c.degree()) {
        case 0:
            out[0] = c();
            break;
        case 1:
            for (std::size_t i = 0; i < n; ++i) out[i] = c(im[i]);
            break;
        case 2:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) out[i * n + j] = c(im[i], im[j]);
            break;
        default:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) out[(i * n + j) * n + k] = c(im[i], im[j], im[k]);
    }
    return r;
}

}  // namespace masseykit
