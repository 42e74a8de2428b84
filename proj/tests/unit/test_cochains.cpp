#include <random>

#include "doctest.h"
#include "masseykit/cochains.hpp"

using namespace masseykit;

namespace {

// All homomorphisms G -> F_p by brute force over every function.
std::size_t count_homs(const GroupPtr& g, fp_t p) {
    const std::size_t n = g->order();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    std::size_t count = 0;
    std::vector<fp_t> f(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t x = code;
        for (auto& v : f) {
            v = static_cast<fp_t>(x % p);
            x /= p;
        }
        bool hom = true;
        for (elem_t a = 0; a < n && hom; ++a)
            for (elem_t b = 0; b < n && hom; ++b) hom = (f[a] + f[b]) % p == f[g->mul(a, b)];
        count += hom;
    }
    return count;
}

// dim H^2 from the full d_2 : C^2 -> C^3 matrix and d_1 : C^1 -> C^2.
std::size_t h2_dim_full(const GroupPtr& g, fp_t p) {
    const std::size_t n = g->order();
    std::vector<SparseRow> rows;
    PrimeField F(p);
    for (elem_t a = 0; a < n; ++a)
        for (elem_t b = 0; b < n; ++b)
            for (elem_t c = 0; c < n; ++c) {
                std::vector<std::int64_t> dense(n * n, 0);
                dense[b * n + c] += 1;
                dense[g->mul(a, b) * n + c] -= 1;
                dense[a * n + g->mul(b, c)] += 1;
                dense[a * n + b] -= 1;
                SparseRow r;
                for (std::uint32_t i = 0; i < n * n; ++i)
                    if (F.reduce(dense[i])) r.emplace_back(i, F.reduce(dense[i]));
                rows.push_back(std::move(r));
            }
    auto z2 = n * n - rank(FpMatrix::from_rows(n * n, p, std::move(rows)));
    std::vector<SparseRow> d1;
    for (elem_t a = 0; a < n; ++a)
        for (elem_t b = 0; b < n; ++b) {
            std::vector<std::int64_t> dense(n, 0);
            dense[a] += 1;
            dense[b] += 1;
            dense[g->mul(a, b)] -= 1;
            SparseRow r;
            for (std::uint32_t i = 0; i < n; ++i)
                if (F.reduce(dense[i])) r.emplace_back(i, F.reduce(dense[i]));
            d1.push_back(std::move(r));
        }
    auto b2 = rank(FpMatrix::from_rows(n, p, std::move(d1)));
    return z2 - b2;
}

Cochain chi_a_on(const GroupPtr& H, fp_t p) {
    return Cochain::from_function(H, p, [p](elem_t g) { return heisenberg_coords(p, g)[1]; });
}
Cochain chi_b_on(const GroupPtr& H, fp_t p) {
    return Cochain::from_function(H, p, [p](elem_t g) { return heisenberg_coords(p, g)[0]; });
}
Cochain phi_ab_on(const GroupPtr& H, fp_t p) {
    return Cochain::from_function(H, p, [p](elem_t g) { return heisenberg_coords(p, g)[2]; });
}

}  // namespace

TEST_CASE("differential examples") {
    auto H = heisenberg(3);
    auto idx = [](int i, int j, int k) { return heisenberg_index(3, i, j, k); };
    CHECK(differential(Cochain(H, 1, 3)).is_zero());
    auto f = phi_ab_on(H, 3);
    auto df = differential(f);
    CHECK(df(idx(1, 2, 0), idx(2, 1, 1)) == 1);
    CHECK(differential(df).is_zero());
    CHECK(differential(Cochain(H, 0, 3, {2})).is_zero());
    CHECK_THROWS_AS(differential(Cochain(H, 3, 3)), std::domain_error);
}

TEST_CASE("cup examples") {
    auto H = heisenberg(3);
    auto idx = [](int i, int j, int k) { return heisenberg_index(3, i, j, k); };
    auto ab = cup(chi_a_on(H, 3), chi_b_on(H, 3));
    CHECK(ab(idx(1, 2, 0), idx(2, 1, 1)) == 1);
    CHECK(cup(chi_a_on(H, 3), Cochain(H, 1, 3)).is_zero());
    auto chi = chi_a_on(H, 3);
    for (elem_t g = 0; g < 27; ++g) CHECK(cup(chi, chi)(H->identity(), g) == 0);
    CHECK_THROWS(cup(chi, Cochain(heisenberg(3), 1, 3)));
    CHECK_THROWS(cup(cup(chi, chi), cup(chi, chi)));
}

TEST_CASE("degree-1 cohomology matches hom enumeration") {
    struct Case {
        GroupPtr g;
        fp_t p;
    };
    std::vector<Case> cases{{cyclic(2), 2}, {cyclic(3), 3},    {cyclic(5), 5},        {cyclic(4), 3},
                            {cyclic(6), 2}, {heisenberg(2), 2}, {elementary_abelian(2, 3), 2}, {cyclic(9), 3},
                            {direct_product(cyclic(3), cyclic(3)), 3}};
    for (auto& [g, p] : cases) {
        auto h1 = cohomology(g, 1, p);
        std::size_t homs = count_homs(g, p);
        std::size_t size = 1;
        for (std::size_t i = 0; i < h1.dimension(); ++i) size *= p;
        CHECK(size == homs);
        for (auto& c : h1.representatives) CHECK(is_cocycle(c));
    }
    CHECK(cohomology(cyclic(5), 1, 5).dimension() == 1);
    CHECK(cohomology(cyclic(7), 1, 2).dimension() == 0);
}

TEST_CASE("H^1 of heisenberg is spanned by the inflated characters") {
    for (fp_t p : {2u, 3u, 5u}) {
        auto H = heisenberg(p);
        auto h1 = cohomology(H, 1, p);
        CHECK(h1.dimension() == 2);
        FpSubspace span(H->order(), p);
        for (auto& c : h1.representatives) span.add_dense(c.values());
        auto pa = heisenberg_projection_a(H, p);
        CHECK(span.contains_dense(inflate(Cochain::from_function(pa.target, p, [](elem_t g) { return g; }), pa).values()));
        auto a = chi_a_on(H, p), b = chi_b_on(H, p);
        FpSubspace ab(H->order(), p);
        ab.add_dense(a.values());
        CHECK(ab.add_dense(b.values()));
        for (auto& c : h1.representatives) CHECK(ab.contains_dense(c.values()));
    }
}

TEST_CASE("degree-2 cohomology agrees with the full d_2 kernel") {
    struct Case {
        GroupPtr g;
        fp_t p;
    };
    std::vector<Case> cases{{cyclic(2), 2},          {cyclic(3), 3}, {cyclic(4), 2}, {elementary_abelian(2, 2), 2},
                            {heisenberg(2), 2},      {cyclic(6), 3}, {elementary_abelian(3, 2), 3},
                            {elementary_abelian(2, 3), 2}};
    for (auto& [g, p] : cases) {
        auto h2 = cohomology(g, 2, p);
        CHECK(h2.dimension() == h2_dim_full(g, p));
        CoboundarySolver solver(g, p);
        for (auto& c : h2.representatives) {
            CHECK(is_cocycle(c));
            CHECK_FALSE(solver.is_coboundary(c));
        }
    }
    CHECK(cohomology(cyclic(2), 2, 2).dimension() == 1);
    CHECK(cohomology(elementary_abelian(2, 2), 2, 2).dimension() == 3);
    CHECK_THROWS_AS(cohomology(heisenberg(5), 2, 5), std::length_error);
}

TEST_CASE("restriction and inflation") {
    for (fp_t p : {2u, 3u}) {
        auto H = heisenberg(p);
        auto chi_a = chi_a_on(H, p);
        std::vector<elem_t> ker;
        for (elem_t g = 0; g < H->order(); ++g)
            if (chi_a(g) == 0) ker.push_back(g);
        auto K = subgroup_from_elements(H, ker);
        CHECK(restrict(chi_a, K).is_zero());

        auto pa = heisenberg_projection_a(H, p);
        auto infl = inflate(Cochain::from_function(pa.target, p, [](elem_t g) { return g; }), pa);
        CHECK(infl == chi_a);

        // <sigma_a, tau>: phi_{a,b} restricts to the tau-exponent
        auto S = subgroup(H, {heisenberg_index(p, 0, 1, 0), heisenberg_index(p, 0, 0, 1)});
        auto r = restrict(phi_ab_on(H, p), S);
        for (std::size_t i = 0; i < S.order(); ++i) CHECK(r(static_cast<elem_t>(i)) == heisenberg_coords(p, S.elements[i])[2]);
    }
    GroupHom bad{cyclic(4), cyclic(2), {0, 0, 0, 0}};
    CHECK_THROWS(inflate(Cochain(cyclic(2), 1, 2), bad));
}

TEST_CASE("Leibniz rule and d^2 = 0 on random cochains") {
    std::mt19937_64 rng(3);
    for (auto spec : {"heisenberg:3", "u:4,2", "cyclic:12"}) {
        auto g = parse_group_spec(spec);
        fp_t p = default_prime(spec);
        for (int t = 0; t < 5; ++t) {
            auto f = Cochain::random(g, 1, p, rng);
            auto h = Cochain::random(g, 1, p, rng);
            auto c2 = Cochain::random(g, 2, p, rng);
            CHECK(differential(differential(f)).is_zero());
            CHECK(differential(cup(f, h)) == cup(differential(f), h) - cup(f, differential(h)));
            CHECK(differential(differential(Cochain::random(g, 0, p, rng))).is_zero());
            CHECK(differential(c2).degree() == 3);
        }
    }
}

TEST_CASE("coboundary solver") {
    std::mt19937_64 rng(8);
    auto H = heisenberg(3);
    CoboundarySolver solver(H, 3);
    CHECK(solver.coboundary_dim() == 27 - 2);
    auto f = Cochain::random(H, 1, 3, rng);
    auto s = solver.solve(differential(f));
    REQUIRE(s);
    CHECK(differential(*s) == differential(f));
    auto chi_a = chi_a_on(H, 3), chi_b = chi_b_on(H, 3);
    CHECK(solver.is_coboundary(cup(chi_a, chi_b)));
    CHECK(solver.is_coboundary(cup(chi_a, chi_a)));  // p odd
}
