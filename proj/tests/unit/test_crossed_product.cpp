#include <doctest.h>

#include "masseykit/crossed_product.hpp"

using namespace masseykit;

namespace {

RatFunc rf(const char* s, fp_t ell) { return parse_ratfunc(s, ell); }

ACPInstance spec_instance() {
    auto field = PrimeFieldSpec::make(7, 3);
    AlgebraPtr f2 = KummerAlgebra::kummer(field, {{"x2", RatFunc::t(7)}});
    return instance_acp(field, RatFunc::t(7), f2->parse("x2 + t"));
}

}  // namespace

TEST_CASE("crossed product multiplication rules") {
    ACPInstance inst = spec_instance();
    CHECK(inst.d.k.a1 == rf("t^3+t", 7));
    CHECK(acp_check(inst.d).all());
    CPPtr a = CrossedProduct::make(inst.d);
    CPElement z1 = CPElement::z1(a), z2 = CPElement::z2(a);
    CHECK(z2 * z1 == CPElement::from_k(a, inst.d.u) * z1 * z2);
    CHECK(z1.pow(3) == CPElement::from_k(a, inst.d.b1));
    CHECK(z2.pow(3) == CPElement::from_k(a, inst.d.b2));
    TowerElement x1 = TowerElement::generator(a->k(), 0), x2 = TowerElement::generator(a->k(), 1);
    CHECK(z1 * CPElement::from_k(a, x1) == CPElement::from_k(a, inst.d.k.sigma1.apply(x1)) * z1);
    CHECK(z2 * CPElement::from_k(a, x2) == CPElement::from_k(a, inst.d.k.sigma2.apply(x2)) * z2);
    CHECK(z1 * CPElement::from_k(a, x2) == CPElement::from_k(a, x2) * z1);
    CHECK(CPElement::one(a) * z1 == z1);
    CHECK_THROWS_AS(CPElement::monomial(a, TowerElement::one(a->k()), 3, 0), std::out_of_range);
}

TEST_CASE("decomposition of the example instance") {
    ACPInstance inst = spec_instance();
    CPPtr a = CrossedProduct::make(inst.d);
    Rng rng(1);
    StructureElements s = structure_elements(a, rng);
    CHECK(compose(inst.d.k.sigma1, inst.d.k.sigma2).apply(s.t) == inst.d.u * s.t);
    RelationsReport r = verify_relations(a, s);
    for (unsigned i = 0; i < 10; ++i) {
        CAPTURE(i);
        CHECK(r.relations[i]);
    }
    DecompositionReport d = verify_decomposition(a, s);
    CHECK(d.all());
    CHECK(d.rank == 81);
    CenterReport c = center_check(a);
    CHECK(c.one_central);
    CHECK(c.rank == 80);
    CHECK(c.center_is_f);
}

TEST_CASE("random instances at p = 2") {
    for (fp_t ell : {3, 5, 7}) {
        auto field = PrimeFieldSpec::make(ell, 2);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            ACPInstance inst = instance_acp(field, RatFunc::t(ell), seed);
            CHECK(acp_check(inst.d).all());
            CPPtr a = CrossedProduct::make(inst.d);
            Rng rng(seed + 17);
            StructureElements s = structure_elements(a, rng);
            CHECK(verify_relations(a, s).all());
            CHECK(verify_decomposition(a, s).all());
            CHECK(center_check(a).center_is_f);
            int failures = 0;
            for (int i = 0; i < 500; ++i) {
                CPElement x = random_cp_element(a, rng), y = random_cp_element(a, rng), z = random_cp_element(a, rng);
                if (!associative_on(x, y, z)) ++failures;
            }
            CHECK(failures == 0);
        }
    }
}

TEST_CASE("associativity at p = 3") {
    ACPInstance inst = instance_acp(PrimeFieldSpec::make(7, 3), rf("t+1", 7), 4);
    CHECK(acp_check(inst.d).all());
    CPPtr a = CrossedProduct::make(inst.d);
    Rng rng(9);
    // Monomial triples exercise every reduction path; dense triples every slot.
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        CPElement x = random_cp_element(a, rng, 1), y = random_cp_element(a, rng, 1), z = random_cp_element(a, rng, 1);
        if (!associative_on(x, y, z)) ++failures;
    }
    for (int i = 0; i < 5; ++i) {
        CPElement x = random_cp_element(a, rng), y = random_cp_element(a, rng), z = random_cp_element(a, rng);
        if (!associative_on(x, y, z)) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("corrupted data breaks the crossed product") {
    for (auto [ell, p] : {std::pair<fp_t, fp_t>{3, 2}, {7, 3}}) {
        auto field = PrimeFieldSpec::make(ell, p);
        ACPInstance inst = instance_acp(field, RatFunc::t(ell), 2);
        ACPDescriptor bad = inst.d;
        bad.u = bad.u.scaled(rf("t+1", ell));
        CHECK_FALSE(acp_check(bad).all());
        CPPtr a = CrossedProduct::make(bad);
        Rng rng(3);
        int failures = 0;
        for (int i = 0; i < 20; ++i) {
            CPElement x = random_cp_element(a, rng, 1), y = random_cp_element(a, rng, 1), z = random_cp_element(a, rng, 1);
            if (!associative_on(x, y, z)) ++failures;
        }
        CHECK(failures > 0);
        CHECK_FALSE(associative_on(CPElement::z2(a), CPElement::z1(a).pow(p - 1), CPElement::z1(a)));

        // b1 = w2, b2 = w1 taken literally.
        ACPDescriptor swapped = inst.d;
        std::swap(swapped.b1, swapped.b2);
        CHECK_FALSE(acp_check(swapped).all());
    }
}

TEST_CASE("instance gating") {
    auto field = PrimeFieldSpec::make(7, 3);
    CHECK_THROWS_AS(instance_acp(field, RatFunc::t(7).pow(3), 0), PreconditionError);
    AlgebraPtr f2 = KummerAlgebra::kummer(field, {{"x2", RatFunc::t(7)}});
    // v2 = x2 has norm t, so a1 = t = a2.
    CHECK_THROWS_AS(instance_acp(field, RatFunc::t(7), f2->parse("x2")), InstanceRejected);
    ACPInstance inst = spec_instance();
    CHECK_THROWS_AS(build_A(inst.d.k, inst.v1, inst.v2.scaled(rf("t+1", 7))), PreconditionError);
    ACPInstance r = instance_acp(field, RatFunc::t(7), 5);
    CHECK(r.attempts >= 1);
    CHECK(r.seed == 5);
}

TEST_CASE("split and trivial instances") {
    for (auto [ell, p] : {std::pair<fp_t, fp_t>{3, 2}, {7, 3}}) {
        auto field = PrimeFieldSpec::make(ell, p);
        Bicyclic k = make_bicyclic(field, RatFunc::t(ell), rf("t+1", ell));
        TowerElement one = TowerElement::one(k.k);
        ACPDescriptor split{k, TowerElement::scalar(k.k, k.a1), TowerElement::scalar(k.k, k.a2), one};
        CHECK(acp_check(split).all());

        ACPDescriptor d = build_A(k, TowerElement::one(k.f1), TowerElement::one(k.f2));
        CHECK(d.u == one);
        CHECK(d.b1 == one);
        CHECK(d.b2 == one);
        CPPtr a = CrossedProduct::make(d);
        Rng rng(0);
        StructureElements s = structure_elements(a, rng);
        CHECK(s.t == one);
        DecompositionReport r = verify_decomposition(a, s);
        CHECK(r.all());
        CHECK(r.wp == RatFunc::constant(ell, 1));
    }
}

TEST_CASE("sign of a1 at p = 2") {
    auto field = PrimeFieldSpec::make(3, 2);
    ACPInstance inst = instance_acp(field, RatFunc::t(3), 0);
    AlgebraPtr f2 = inst.d.k.f2;
    auto m = norm(inst.v2, {GaloisAuto::diagonal(f2, {1})}).as_scalar();
    REQUIRE(m);
    CHECK(inst.d.k.a1 == -*m);
}
