#include <array>
#include <deque>
#include <random>

#include "doctest.h"
#include "masseykit/massey.hpp"

using namespace masseykit;

namespace {

using Mat4 = std::array<fp_t, 16>;

Mat4 mul4(const Mat4& a, const Mat4& b, fp_t p) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::uint64_t acc = 0;
            for (int k = 0; k < 4; ++k) acc += static_cast<std::uint64_t>(a[i * 4 + k]) * b[k * 4 + j];
            c[i * 4 + j] = static_cast<fp_t>(acc % p);
        }
    return c;
}

// Exhaustive search for a homomorphism G -> U_4(F_p) whose superdiagonal is
// (-chi_a, -chi_b, -chi_c): choose the three free entries of every generator
// image and extend along the Cayley graph.
bool unipotent_hom_exists(const Cochain& a, const Cochain& b, const Cochain& c) {
    const auto& G = *a.group();
    const fp_t p = a.modulus();
    const auto gens = generating_set(G);
    const std::size_t per = static_cast<std::size_t>(p) * p * p;
    std::size_t total = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) total *= per;
    auto neg = [p](fp_t v) { return v ? p - v : 0; };
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Mat4> img(gens.size());
        std::size_t x = code;
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Mat4 m{};
            for (int i = 0; i < 4; ++i) m[i * 5] = 1;
            m[1] = neg(a(gens[s]));
            m[6] = neg(b(gens[s]));
            m[11] = neg(c(gens[s]));
            m[2] = static_cast<fp_t>(x % p);
            x /= p;
            m[7] = static_cast<fp_t>(x % p);
            x /= p;
            m[3] = static_cast<fp_t>(x % p);
            x /= p;
            img[s] = m;
        }
        std::vector<std::optional<Mat4>> phi(G.order());
        Mat4 id{};
        for (int i = 0; i < 4; ++i) id[i * 5] = 1;
        phi[G.identity()] = id;
        std::deque<elem_t> queue{G.identity()};
        bool ok = true;
        while (!queue.empty() && ok) {
            elem_t g = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < gens.size() && ok; ++s) {
                elem_t h = G.mul(g, gens[s]);
                Mat4 want = mul4(*phi[g], img[s], p);
                if (!phi[h]) {
                    phi[h] = want;
                    queue.push_back(h);
                } else {
                    ok = *phi[h] == want;
                }
            }
        }
        if (ok) return true;
    }
    return false;
}

Cochain coord(const GroupPtr& H, fp_t p, int which) {
    return Cochain::from_function(H, p, [p, which](elem_t g) { return heisenberg_coords(p, g)[which]; });
}

}  // namespace

TEST_CASE("defining systems on heisenberg") {
    for (fp_t p : {2u, 3u}) {
        auto H = heisenberg(p);
        auto chi_a = coord(H, p, 1), chi_b = coord(H, p, 0), phi = coord(H, p, 2);
        CHECK(differential(phi) == cup(chi_a, chi_b));
        auto sys = find_defining_system(chi_a, chi_b, chi_a);
        REQUIRE(sys);
        CHECK(differential(sys->phi_ab()) == cup(chi_a, chi_b));
        CHECK(differential(sys->phi_bc()) == cup(chi_b, chi_a));
        auto value = massey_value(*sys);
        CHECK(is_cocycle(value));
        auto canonical = make_triple_system(chi_a, chi_b, chi_a, phi, sys->phi_bc());
        CHECK(is_cocycle(massey_value(canonical)));
        CHECK(restriction_identities(canonical).all());
        // chi_a u chi_a is not a coboundary at p = 2 on this group? decided by the solver, checked by d
        auto aa = find_defining_system(chi_a, chi_a, chi_a);
        if (aa) CHECK(differential(aa->phi_ab()) == cup(chi_a, chi_a));
    }
}

TEST_CASE("zero and trivial triples") {
    auto H = heisenberg(3);
    Cochain z(H, 1, 3);
    auto sys = find_defining_system(z, z, z);
    REQUIRE(sys);
    CHECK(massey_value(*sys).is_zero());
    auto coset = massey_coset(z, z, z);
    REQUIRE(coset);
    CHECK(contains_zero(*coset));
    auto trivial = dwyer_from_system(make_triple_system(z, z, z, z, z));
    CHECK(trivial.is_homomorphism());
    for (elem_t g = 0; g < 27; ++g) {
        auto m = trivial.matrix(g);
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = 0; j < 4; ++j) CHECK(m[i * 4 + j] == (i == j ? 1u : 0u));
    }
    CHECK(lift_exists(trivial));
    auto r = restriction_identities(make_triple_system(z, z, z, z, z));
    CHECK(r.all());
}

TEST_CASE("chi u chi on (Z/p)^2 is solvable for odd p") {
    for (fp_t p : {3u, 5u}) {
        auto G = direct_product(cyclic(p), cyclic(p));
        auto chi = Cochain::from_function(G, p, [p](elem_t g) { return g / p; });
        auto half = Cochain::from_function(G, p, [p](elem_t g) {
            std::int64_t i = g / p;
            return -(i * (i - 1) / 2);
        });
        CHECK(differential(half) == cup(chi, chi));
        auto sys = find_defining_system(chi, chi, chi);
        REQUIRE(sys);
        CHECK(differential(sys->phi_ab()) == cup(chi, chi));
    }
}

TEST_CASE("undefined triple and non-character inputs") {
    auto G = direct_product(cyclic(2), cyclic(2));
    auto chi = Cochain::from_function(G, 2, [](elem_t g) { return g / 2; });
    CHECK_FALSE(find_defining_system(chi, chi, chi).has_value());  // Bockstein is nonzero
    CHECK_FALSE(massey_coset(chi, chi, chi).has_value());
    CoboundarySolver solver(G, 2);
    CHECK_FALSE(lift_decision(chi, chi, chi, solver, cocycles_degree1(G, 2)).has_value());
    auto bad = Cochain::from_function(G, 2, [](elem_t g) { return g == 1; });
    CHECK_THROWS(find_defining_system(bad, chi, chi));
}

TEST_CASE("n-fold verifier") {
    // n = 2: value is c1 u c2
    auto H = heisenberg(3);
    auto a = coord(H, 3, 1), b = coord(H, 3, 0);
    DefiningSystem two;
    two.n = 2;
    two.entries.emplace(EntryIndex{1, 2}, a);
    two.entries.emplace(EntryIndex{2, 3}, b);
    auto r2 = verify_defining_system_n({a, b}, two);
    REQUIRE(r2.valid);
    CHECK(*r2.value == cup(a, b));

    // n = 3 agrees with massey_value
    auto sys = *find_defining_system(a, b, a);
    auto r3 = verify_defining_system_n({a, b, a}, sys);
    REQUIRE(r3.valid);
    CHECK(*r3.value == massey_value(sys));
    CHECK(r3.value_is_cocycle);

    // n = 4 from the Jordan block: cyclic(8) -> U_5(F_2), g^i -> J^i, all c_i equal.
    auto C8 = cyclic(8);
    UnipotentHom jordan{C8, 4, 2, {}};
    auto binom = [](unsigned i, unsigned m) {
        std::uint64_t r = 1;
        for (unsigned k = 0; k < m; ++k) r = r * (i - k) / (k + 1);
        return static_cast<fp_t>(i >= m ? r % 2 : 0);
    };
    for (unsigned i = 1; i <= 5; ++i)
        for (unsigned j = i + 1; j <= 5; ++j) {
            std::vector<fp_t> f(8);
            for (unsigned g = 0; g < 8; ++g) f[g] = binom(g, j - i);
            jordan.entries.emplace(EntryIndex{i, j}, f);
        }
    REQUIRE(jordan.is_homomorphism());
    auto four = dwyer_to_system(jordan);
    std::vector<Cochain> cs(4, four.at(1, 2));
    for (unsigned i = 1; i <= 4; ++i) CHECK(four.at(i, i + 1) == cs[0]);
    auto r4 = verify_defining_system_n(cs, four);
    CHECK(r4.valid);
    CHECK(r4.value_is_cocycle);
    CHECK(lift_exists(dwyer_from_system(four)));  // the corner C(i,4) lifts it

    // negative: corrupt one entry
    auto broken = four;
    broken.entries.at({2, 4}).values()[3] ^= 1;
    auto rb = verify_defining_system_n(cs, broken);
    CHECK_FALSE(rb.valid);
    CHECK_FALSE(rb.failure.empty());
    CHECK_THROWS(dwyer_to_system(dwyer_from_system(broken)));
}

TEST_CASE("hand-built n = 4 system on (Z/2)^2") {
    auto G = direct_product(cyclic(2), cyclic(2));
    Cochain z(G, 1, 2);
    auto x = Cochain::from_function(G, 2, [](elem_t g) { return g / 2; });
    auto y = Cochain::from_function(G, 2, [](elem_t g) { return g % 2; });
    DefiningSystem s;
    s.n = 4;
    for (unsigned i = 1; i <= 4; ++i) s.entries.emplace(EntryIndex{i, i + 1}, z);
    s.entries.emplace(EntryIndex{1, 3}, x);
    s.entries.emplace(EntryIndex{2, 4}, y);
    s.entries.emplace(EntryIndex{3, 5}, x);
    s.entries.emplace(EntryIndex{1, 4}, y);
    s.entries.emplace(EntryIndex{2, 5}, x);
    auto r = verify_defining_system_n({z, z, z, z}, s);
    CHECK(r.valid);
    CHECK(*r.value == cup(x, x));
    s.entries.at({1, 4}) = Cochain::from_function(G, 2, [](elem_t g) { return g == 3; });
    CHECK_FALSE(verify_defining_system_n({z, z, z, z}, s).valid);
}

TEST_CASE("dwyer round trip and hom property") {
    std::mt19937_64 rng(17);
    auto H = heisenberg(3);
    CoboundarySolver solver(H, 3);
    auto z1 = cocycles_degree1(H, 3);
    int tested = 0;
    for (int t = 0; t < 60; ++t) {
        std::vector<fp_t> ca(2), cb(2), cc(2);
        for (auto* v : {&ca, &cb, &cc})
            for (auto& e : *v) e = static_cast<fp_t>(rng() % 3);
        auto a = combine(H, 3, z1, ca), b = combine(H, 3, z1, cb), c = combine(H, 3, z1, cc);
        auto sys = find_defining_system(a, b, c, solver);
        if (!sys) continue;
        auto shifted = make_triple_system(a, b, c, sys->phi_ab() + combine(H, 3, z1, {1, 2}), sys->phi_bc());
        auto phi = dwyer_from_system(shifted);
        CHECK(phi.is_homomorphism());
        auto back = dwyer_to_system(phi);
        CHECK(back.entries.size() == shifted.entries.size());
        for (const auto& [ij, c0] : shifted.entries) CHECK(back.at(ij.first, ij.second) == c0);
        ++tested;
    }
    CHECK(tested > 10);
}

TEST_CASE("massey decision agrees with exhaustive unipotent search") {
    for (fp_t p : {2u, 3u}) {
        auto H = heisenberg(p);
        CoboundarySolver solver(H, p);
        auto z1 = cocycles_degree1(H, p);
        auto reps = projective_representatives(z1.size(), p);
        int defined = 0;
        for (const auto& va : reps)
            for (const auto& vb : reps)
                for (const auto& vc : reps) {
                    auto a = combine(H, p, z1, va), b = combine(H, p, z1, vb), c = combine(H, p, z1, vc);
                    auto coset = massey_coset(a, b, c, solver, z1);
                    auto lift = lift_decision(a, b, c, solver, z1);
                    REQUIRE(coset.has_value() == lift.has_value());
                    if (!coset) continue;
                    ++defined;
                    bool cz = contains_zero(*coset, solver);
                    CHECK(cz == *lift);
                    CHECK(cz == unipotent_hom_exists(a, b, c));
                }
        CHECK(defined > 0);
    }
}

TEST_CASE("ubar(4,2) tautological triple") {
    auto Ub = unipotent_bar(3, 2);
    auto pos = unipotent_positions(3, true);  // (1,2),(1,3),(2,3),(2,4),(3,4)
    auto digit = [&](unsigned i, unsigned j) {
        std::size_t q = 0;
        while (pos[q] != std::make_pair(i, j)) ++q;
        return Cochain::from_function(Ub, 2, [&, q](elem_t g) { return unipotent_digits(pos.size(), 2, g)[q]; });
    };
    UnipotentHom id{Ub, 3, 2, {}};
    for (auto [i, j] : pos) id.entries.emplace(EntryIndex{i, j}, digit(i, j).values());
    REQUIRE(id.is_homomorphism());
    auto sys = dwyer_to_system(id);
    auto a = sys.at(1, 2), b = sys.at(2, 3), c = sys.at(3, 4);
    CHECK(verify_defining_system_n({a, b, c}, sys).valid);
    // The identity on Ubar_4 has no lift: U_4 -> Ubar_4 does not split.
    CHECK_FALSE(lift_exists(id));
    CoboundarySolver solver(Ub, 2);
    auto z1 = cocycles_degree1(Ub, 2);
    auto coset = massey_coset(a, b, c, solver, z1);
    REQUIRE(coset);
    bool cz = contains_zero(*coset, solver);
    CHECK(cz == *lift_decision(a, b, c, solver, z1));
    CHECK(cz == unipotent_hom_exists(a, b, c));
    CHECK_FALSE(cz);  // regression value
}

TEST_CASE("psi cochains") {
    for (fp_t p : {2u, 3u, 5u}) {
        auto G = direct_product(cyclic(p), cyclic(p));
        auto psi = psi_cochains(p, G, p, 1);  // sigma_a = (1,0), sigma_b = (0,1)
        CHECK(psi.psi1_identity);
        CHECK(psi.psi2_identity);
        CHECK(psi.psi1(G->identity()) == 0);
        CHECK(restrict(psi.psi1, kernel_subgroup(psi.chi_a)).is_zero());
    }
    auto G = direct_product(cyclic(3), cyclic(3));
    auto psi = psi_cochains(3, G, 3, 1);
    elem_t g1 = 1 * 3 + 1, g2 = 2 * 3 + 1;
    CHECK(differential(psi.psi1)(g1, g2) == 0);
    CHECK((cup(psi.chi_a, psi.chi_b) + cup(psi.chi_b, psi.chi_a))(g1, g2) == 0);
    CHECK_THROWS(psi_cochains(3, cyclic(9), 1, 3));
    CHECK_THROWS(psi_cochains(3, G, 3, 6));
}

TEST_CASE("projective representatives") {
    auto r = projective_representatives(2, 3);
    CHECK(r.size() == 1 + 4);
    CHECK(r[0] == std::vector<fp_t>{0, 0});
    CHECK(r[1] == std::vector<fp_t>{1, 0});
    CHECK(r[4] == std::vector<fp_t>{0, 1});
    CHECK(projective_representatives(0, 5).size() == 1);
}
