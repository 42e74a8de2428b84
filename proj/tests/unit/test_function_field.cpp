#include <doctest.h>

#include <stdexcept>

#include "masseykit/function_field.hpp"
#include "masseykit/parse_error.hpp"

using namespace masseykit;

namespace {

// Rabin's test: q of degree d is irreducible iff t^(ell^d) = t mod q and
// gcd(t^(ell^(d/r)) - t, q) = 1 for every prime r | d.
bool rabin_irreducible(const Poly& q) {
    fp_t ell = q.ell();
    int d = q.degree();
    if (d <= 0) return false;
    Poly x = Poly::t(ell);
    auto frob = [&](int k) {
        Poly h = x % q;
        for (int i = 0; i < k; ++i) h = h.powmod(ell, q);
        return h;
    };
    if (!((frob(d) - x) % q).is_zero()) return false;
    for (int r = 2; r <= d; ++r) {
        if (d % r || !is_prime(static_cast<std::uint64_t>(r))) continue;
        if (!gcd(frob(d / r) - x, q).is_one()) return false;
    }
    return true;
}

Poly random_poly(fp_t ell, int max_degree, Rng& rng) {
    std::vector<fp_t> c(rng.below(static_cast<std::uint64_t>(max_degree) + 1) + 1);
    for (auto& v : c) v = static_cast<fp_t>(rng.below(ell));
    if (c.back() == 0) c.back() = 1;
    return Poly(ell, c);
}

RatFunc random_unit(fp_t ell, Rng& rng) {
    Poly num = random_poly(ell, 4, rng), den = random_poly(ell, 3, rng);
    return RatFunc(num, den);
}

}  // namespace

TEST_CASE("poly arithmetic and division") {
    Poly t = Poly::t(7);
    Poly f = t * t - Poly::constant(7, 1);
    CHECK(f.to_string() == "t^2+6");
    auto [q, r] = f.divmod(t - Poly::constant(7, 1));
    CHECK(q == t + Poly::constant(7, 1));
    CHECK(r.is_zero());
    CHECK(gcd(f, t * t - t) == t - Poly::constant(7, 1));
    CHECK_THROWS_AS(f.divmod(Poly(7)), std::domain_error);
    CHECK(f.eval(3) == 1);
}

TEST_CASE("factor examples") {
    Poly t = Poly::t(7), one = Poly::constant(7, 1);
    auto fac = factor(t * t - one);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first == t + one);
    CHECK(fac.factors[1].first == t - one);
    CHECK(fac.factors[0].second == 1);

    auto cube = factor(t.pow(3));
    REQUIRE(cube.factors.size() == 1);
    CHECK(cube.factors[0] == std::pair<Poly, unsigned>{t, 3});

    CHECK(is_irreducible(t * t + one));
    CHECK_FALSE(is_irreducible(t * t - one));
    CHECK_THROWS_AS(factor(Poly(7)), std::domain_error);
}

TEST_CASE("factor in characteristic with inseparable parts") {
    Poly t = Poly::t(3), one = Poly::constant(3, 1);
    Poly f = (t + one).pow(6) * (t * t + one).pow(3) * t.scaled(2);
    auto fac = factor(f);
    CHECK(fac.expand(3) == f);
    CHECK(fac.unit == 2);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0] == std::pair<Poly, unsigned>{t, 1});
    CHECK(fac.factors[1] == std::pair<Poly, unsigned>{t + one, 6});
    CHECK(fac.factors[2] == std::pair<Poly, unsigned>{t * t + one, 3});
}

TEST_CASE("factor property: remultiplication and irreducible factors") {
    for (fp_t ell : {3u, 7u, 11u, 13u}) {
        Rng rng(ell);
        for (int trial = 0; trial < 1000; ++trial) {
            Poly f = random_poly(ell, 30, rng);
            if (trial % 4 == 0) f = f * random_poly(ell, 3, rng).pow(ell);
            if (f.degree() > 30 + 3 * static_cast<int>(ell)) continue;
            Rng split = rng.derive(static_cast<std::uint64_t>(trial));
            auto fac = factor(f, split);
            REQUIRE(fac.expand(ell) == f);
            if (trial % 50 == 0) {
                for (const auto& [q, e] : fac.factors) {
                    CHECK(q.lead() == 1);
                    CHECK(rabin_irreducible(q));
                }
            }
        }
    }
}

TEST_CASE("factorization does not depend on the splitting seed") {
    Rng gen(99);
    for (int i = 0; i < 20; ++i) {
        Poly f = random_poly(13, 25, gen);
        Rng a(1), b(2);
        auto fa = factor(f, a), fb = factor(f, b);
        CHECK(fa.factors == fb.factors);
    }
}

TEST_CASE("ratfunc canonical form") {
    Poly t = Poly::t(7), one = Poly::constant(7, 1);
    RatFunc x(t * t - one, (t - one).scaled(3));
    CHECK(x.den().is_one());
    CHECK(x.num() == (t + one).scaled(5));
    RatFunc y(t, t + one);
    CHECK(y + RatFunc(one, t + one) == RatFunc::constant(7, 1));
    CHECK(y * y.inverse() == RatFunc::constant(7, 1));
    CHECK(y.pow(-2) * y.pow(2) == RatFunc::constant(7, 1));
    CHECK_THROWS_AS(RatFunc(t, Poly(7)), std::domain_error);
    CHECK_THROWS_AS(RatFunc(7).inverse(), std::domain_error);
}

TEST_CASE("primitive roots") {
    auto r = primitive_root(7, 3);
    CHECK(r.value == 2);
    CHECK(PrimeField(7).pow(r.value, 3) == 1);
    CHECK(primitive_root(3, 2).value == 2);
    CHECK(primitive_root(13, 3).value == 3);
    CHECK_THROWS_AS(primitive_root(5, 3), std::invalid_argument);
}

TEST_CASE("p-th power examples") {
    RatFunc t = RatFunc::t(7);
    auto w = pth_root(t.pow(3), 3);
    REQUIRE(w);
    CHECK(*w == t);
    CHECK_FALSE(is_pth_power(t, 3));
    CHECK_FALSE(is_pth_power(t.pow(3).scaled(3), 3));
    CHECK(PrimeField(7).pow(3, 2) == 2);
    CHECK(is_pth_power(RatFunc::constant(7, 6), 3));  // 6 = 3^3
    CHECK(is_pth_power(RatFunc::constant(3, 2), 3));  // every element of F_3 is a cube
    CHECK_FALSE(is_pth_power(RatFunc::constant(3, 2), 2));
    CHECK_THROWS_AS(is_pth_power(RatFunc(7), 3), std::invalid_argument);
}

TEST_CASE("p-th power properties") {
    for (auto [ell, p] : {std::pair<fp_t, fp_t>{3, 2}, {7, 2}, {7, 3}, {13, 3}}) {
        Rng rng(ell * 100 + p);
        for (int i = 0; i < 60; ++i) {
            RatFunc f = random_unit(ell, rng), h = random_unit(ell, rng);
            auto root = pth_root(f.pow(p), p);
            REQUIRE(root);
            CHECK(root->pow(p) == f.pow(p));
            if (is_pth_power(f, p) && is_pth_power(h, p)) CHECK(is_pth_power(f * h, p));
            // A non-p-th-power unit times a p-th power is never a p-th power.
            fp_t nonpower = 0;
            for (fp_t c = 2; c < ell && !nonpower; ++c)
                if (!is_pth_power(RatFunc::constant(ell, c), p)) nonpower = c;
            REQUIRE(nonpower);
            CHECK_FALSE(is_pth_power(f.pow(p).scaled(nonpower), p));
        }
    }
}

TEST_CASE("kummer independence") {
    RatFunc t = RatFunc::t(7), one = RatFunc::constant(7, 1);
    CHECK(kummer_independent(t, t + one, 3));
    CHECK_FALSE(kummer_independent(t, t * (t + one).pow(3), 3));
    CHECK_FALSE(kummer_independent(one, t, 3));
    CHECK_FALSE(kummer_independent(t, t.pow(2), 3));
    CHECK(kummer_independent(t, RatFunc::constant(7, 3), 3));
}

TEST_CASE("ratfunc parsing") {
    RatFunc t = RatFunc::t(7), one = RatFunc::constant(7, 1);
    CHECK(parse_ratfunc("1+2t+t^3", 7) == one + t.scaled(2) + t.pow(3));
    CHECK(parse_ratfunc("1,2,0,1", 7) == one + t.scaled(2) + t.pow(3));
    CHECK(parse_ratfunc("(t+1)/(t^2-3)", 7) == (t + one) / (t * t - one.scaled(3)));
    CHECK(parse_ratfunc("1,1/-3,0,1", 7) == (t + one) / (t * t - one.scaled(3)));
    CHECK(parse_ratfunc("-t^2", 7) == -(t * t));
    CHECK(parse_ratfunc("2t(t+1)", 7) == t.scaled(2) * (t + one));
    CHECK(parse_ratfunc("t^-1", 7) == t.inverse());
    CHECK(parse_ratfunc(parse_ratfunc("(t+1)/(t^2-3)", 7).to_string(), 7) ==
          parse_ratfunc("(t+1)/(t^2-3)", 7));
    CHECK(parse_poly("t^2+6", 7) == Poly(7, {6, 0, 1}));

    auto position_of = [](const char* s) {
        try {
            parse_ratfunc(s, 7);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    CHECK(position_of("t+") == 2);
    CHECK(position_of("t+y") == 2);
    CHECK(position_of("(t+1") == 4);
    CHECK(position_of("t/0") == 1);
    CHECK(position_of("1,x") == 2);
    CHECK(position_of("") == 0);
    CHECK_THROWS_AS(parse_poly("1/t", 7), ParseError);
}
