#include "doctest.h"
#include "masseykit/groups.hpp"

using namespace masseykit;

TEST_CASE("heisenberg multiplication law") {
    auto H = heisenberg(3);
    CHECK(H->order() == 27);
    auto idx = [](int i, int j, int k) { return heisenberg_index(3, i, j, k); };
    CHECK(H->mul(idx(1, 0, 0), idx(0, 1, 0)) == idx(1, 1, 0));
    CHECK(H->mul(idx(0, 1, 0), idx(1, 0, 0)) == idx(1, 1, 2));
    CHECK(H->is_associative());
    CHECK(center(H).order() == 3);
    for (auto z : center(H).elements) {
        auto c = heisenberg_coords(3, z);
        CHECK(c[0] == 0);
        CHECK(c[1] == 0);
    }
    // sigma_b sigma_a = tau sigma_a sigma_b
    elem_t sa = idx(0, 1, 0), sb = idx(1, 0, 0), tau = idx(0, 0, 1);
    CHECK(H->mul(sb, sa) == H->mul(tau, H->mul(sa, sb)));
}

TEST_CASE("heisenberg structure for p in {2,3,5}") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto H = heisenberg(p);
        CHECK(H->order() == p * p * p);
        CHECK(center(H).order() == p);
        CHECK(derived_subgroup(H).elements == center(H).elements);
        if (p % 2 == 1)
            for (elem_t g = 0; g < H->order(); ++g)
                if (g != H->identity()) CHECK(H->element_order(g) == p);
        auto pa = heisenberg_projection_a(H, p);
        auto pb = heisenberg_projection_b(H, p);
        CHECK(pa.is_homomorphism());
        CHECK(pb.is_homomorphism());
        CHECK(pa.is_surjective());
        // ker pi_a = <sigma_b, tau>
        auto ka = pa.kernel();
        auto sub = subgroup(H, {heisenberg_index(p, 1, 0, 0), heisenberg_index(p, 0, 0, 1)});
        CHECK(ka == sub.elements);
        for (elem_t g = 0; g < H->order(); ++g) CHECK(pa(g) == heisenberg_coords(p, g)[1]);
    }
}

TEST_CASE("unipotent groups") {
    auto U = unipotent(3, 2);
    auto Ub = unipotent_bar(3, 2);
    CHECK(U->order() == 64);
    CHECK(Ub->order() == 32);
    CHECK(U->is_associative());
    CHECK(Ub->is_associative());
    auto pi = unipotent_corner_projection(3, 2, U, Ub);
    CHECK(pi.is_homomorphism());
    CHECK(pi.is_surjective());
    CHECK(pi.kernel().size() == 2);
    auto iso = find_isomorphism(unipotent(2, 3), heisenberg(3));
    REQUIRE(iso);
    CHECK(iso->is_homomorphism());
    CHECK(iso->is_injective());
    CHECK_FALSE(find_isomorphism(cyclic(8), heisenberg(2)));
    CHECK_THROWS_AS(unipotent(3, 5), std::length_error);
}

TEST_CASE("cyclic, products, quotients") {
    auto C1 = cyclic(1);
    CHECK(C1->order() == 1);
    CHECK(C1->is_abelian());
    auto G = direct_product(heisenberg(2), cyclic(2));
    CHECK(G->order() == 16);
    CHECK(G->is_associative());
    CHECK(center(G).order() == 4);
    auto U = unipotent(3, 2);
    auto Z = center(U);
    REQUIRE(Z.order() == 2);
    elem_t z = Z.elements[0] == U->identity() ? Z.elements[1] : Z.elements[0];
    auto [Q, pi] = quotient_by_central(U, z);
    CHECK(Q->order() == 32);
    CHECK(pi.is_homomorphism());
    CHECK(find_isomorphism(Q, unipotent_bar(3, 2)).has_value());
    CHECK_THROWS(quotient_by_central(heisenberg(3), heisenberg_index(3, 1, 0, 0)));
}

TEST_CASE("group specifiers") {
    CHECK(parse_group_spec("cyclic:6")->order() == 6);
    CHECK(parse_group_spec("heisenberg:3")->order() == 27);
    CHECK(parse_group_spec("u:4,2")->order() == 64);
    CHECK(parse_group_spec("ubar:4,2")->order() == 32);
    CHECK(parse_group_spec("elem:2,3")->order() == 8);
    auto P = parse_group_spec("prod:heisenberg:3,cyclic:3");
    CHECK(P->order() == 81);
    CHECK(parse_group_spec("prod:cyclic:2,cyclic:3,cyclic:5")->order() == 30);
    CHECK(default_prime("cyclic:6") == 2);
    CHECK(default_prime("cyclic:9") == 3);
    CHECK(default_prime("u:4,2") == 2);
    CHECK(default_prime("prod:heisenberg:3,cyclic:3") == 3);
    try {
        parse_group_spec("heisenberg:x");
        FAIL("expected a parse error");
    } catch (const SpecParseError& e) {
        CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse_group_spec("heisenberg:4"), SpecParseError);
    CHECK_THROWS_AS(parse_group_spec("foo:3"), SpecParseError);
    CHECK_THROWS_AS(parse_group_spec("cyclic"), SpecParseError);
    CHECK_THROWS_AS(parse_group_spec("cyclic:3,cyclic:3"), SpecParseError);
}
