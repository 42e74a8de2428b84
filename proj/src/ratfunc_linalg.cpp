#include "masseykit/ratfunc_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace masseykit {

namespace {

int weight(const RatFunc& x) { return x.num().degree() + x.den().degree(); }

struct Echelon {
    RatMatrix rows;                 // reduced rows (augmented when solving)
    std::vector<std::size_t> pivots;  // pivot column of rows[i]
};

// Gauss-Jordan on the first `cols` columns; lighter pivots keep degrees low.
Echelon eliminate(RatMatrix m, std::size_t cols) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t best = m.size();
        for (std::size_t i = r; i < m.size(); ++i) {
            if (m[i][c].is_zero()) continue;
            if (best == m.size() || weight(m[i][c]) < weight(m[best][c])) best = i;
        }
        if (best == m.size()) continue;
        std::swap(m[r], m[best]);
        RatFunc inv = m[r][c].inverse();
        for (auto& x : m[r]) x = x * inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            RatFunc f = m[i][c];
            for (std::size_t k = c; k < m[i].size(); ++k)
                if (!m[r][k].is_zero()) m[i][k] = m[i][k] - f * m[r][k];
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

void check_rectangular(const RatMatrix& m, std::size_t cols) {
    for (const auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");
}

fp_t field_of(const RatMatrix& m) {
    for (const auto& row : m)
        if (!row.empty()) return row[0].ell();
    throw std::invalid_argument("empty matrix");
}

// Rank of m reduced at q; nullopt if some entry has a pole at q.
std::optional<std::size_t> rank_at(const RatMatrix& m, const Poly& q) {
    fp_t ell = q.ell();
    std::vector<std::vector<Poly>> a;
    a.reserve(m.size());
    for (const auto& row : m) {
        std::vector<Poly> r;
        r.reserve(row.size());
        for (const auto& x : row) {
            if (x.is_zero()) {
                r.emplace_back(ell);
                continue;
            }
            auto dinv = inverse_mod(x.den(), q);
            if (!dinv) return std::nullopt;
            r.push_back((x.num() * *dinv) % q);
        }
        a.push_back(std::move(r));
    }
    std::size_t cols = a.empty() ? 0 : a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        Poly inv = *inverse_mod(a[rank][c], q);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c].is_zero()) continue;
            Poly f = (a[i][c] * inv) % q;
            for (std::size_t k = c; k < cols; ++k)
                if (!a[rank][k].is_zero()) a[i][k] = (a[i][k] - f * a[rank][k]) % q;
        }
        ++rank;
    }
    return rank;
}

// Monic irreducible of degree d, searched deterministically from `rng`.
Poly random_irreducible(fp_t ell, unsigned d, Rng& rng) {
    while (true) {
        std::vector<fp_t> c(d + 1);
        for (unsigned i = 0; i < d; ++i) c[i] = static_cast<fp_t>(rng.below(ell));
        c[d] = 1;
        Poly q(ell, std::move(c));
        if (is_irreducible(q)) return q;
    }
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
    if (m.empty()) return 0;
    check_rectangular(m, m[0].size());
    return eliminate(m, m[0].size()).pivots.size();
}

std::optional<std::vector<RatFunc>> solve(const RatMatrix& m, const std::vector<RatFunc>& b) {
    if (m.size() != b.size()) throw std::invalid_argument("right-hand side has the wrong length");
    if (m.empty()) return std::vector<RatFunc>{};
    std::size_t cols = m[0].size();
    check_rectangular(m, cols);
    fp_t ell = field_of(m);
    RatMatrix aug = m;
    for (std::size_t i = 0; i < m.size(); ++i) aug[i].push_back(b[i]);
    // A pivot in the augmented column means the system is inconsistent.
    Echelon e = eliminate(std::move(aug), cols + 1);
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
    std::vector<RatFunc> x(cols, RatFunc(ell));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rows[i][cols];
    return x;
}

std::vector<std::vector<RatFunc>> kernel_basis(const RatMatrix& m, std::size_t cols) {
    check_rectangular(m, cols);
    std::vector<std::vector<RatFunc>> basis;
    if (m.empty()) throw std::invalid_argument("kernel of an empty matrix needs the field");
    fp_t ell = field_of(m);
    Echelon e = eliminate(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RatFunc> v(cols, RatFunc(ell));
        v[f] = RatFunc::constant(ell, 1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

PlaceRank rank_lower_bound(const RatMatrix& m, fp_t ell, std::size_t target, std::size_t max_places) {
    PlaceRank out;
    if (m.empty()) return out;
    check_rectangular(m, m[0].size());
    Rng rng(ell);
    auto attempt = [&](const Poly& q) {
        ++out.places;
        out.max_degree = std::max(out.max_degree, static_cast<unsigned>(q.degree()));
        if (auto r = rank_at(m, q)) out.rank = std::max(out.rank, *r);
        return out.rank >= target || out.places >= max_places;
    };
    Poly t = Poly::t(ell);
    for (fp_t c = 0; c < ell; ++c)
        if (attempt(t - Poly::constant(ell, c))) return out;
    for (unsigned d = 2;; ++d) {
        for (int k = 0; k < 2; ++k)
            if (attempt(random_irreducible(ell, d, rng))) return out;
    }
}

}  // namespace masseykit
