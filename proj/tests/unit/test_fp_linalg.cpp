#include <random>
#include <stdexcept>

#include "doctest.h"
#include "masseykit/fp_linalg.hpp"

using namespace masseykit;

namespace {

FpMatrix random_matrix(std::size_t r, std::size_t c, fp_t p, std::mt19937_64& rng, unsigned zero_bias) {
    FpMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng() % zero_bias == 0) m.set(i, j, static_cast<fp_t>(rng() % p));
    return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    PrimeField F(7);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.neg(0) == 0);
    CHECK(F.reduce(-1) == 6);
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
    CHECK_THROWS(PrimeField(9));
    FpScalar a(4, 5), b(3, 5);
    CHECK((a + b).value == 2);
    CHECK((a * b).value == 2);
    CHECK(a.inverse().value == 4);
    CHECK_THROWS(a + FpScalar(1, 7));
}

TEST_CASE("rank examples") {
    CHECK(rank(FpMatrix::identity(4, 3)) == 4);
    CHECK(rank(FpMatrix(3, 5, 2)) == 0);
    CHECK(rank(FpMatrix::from_dense(5, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(FpMatrix(2, 3, 2)).size() == 3);
    CHECK(kernel_basis(FpMatrix::identity(3, 5)).empty());
    auto k = kernel_basis(FpMatrix::from_dense(2, {{1, 1, 0}}));
    REQUIRE(k.size() == 2);
    CHECK(k[0] == FpVector{1, 1, 0});
    CHECK(k[1] == FpVector{0, 0, 1});
}

TEST_CASE("solve examples") {
    FpVector b{3, 1, 4};
    auto x = solve(FpMatrix::identity(3, 5), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(FpMatrix(2, 2, 3), FpVector{1, 0}));
    auto y = solve(FpMatrix::from_dense(3, {{1, 2}, {0, 1}}), FpVector{0, 1});
    REQUIRE(y);
    CHECK(*y == FpVector{1, 1});
}

TEST_CASE("rank-nullity and solve on random matrices") {
    std::mt19937_64 rng(11);
    for (fp_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
            auto m = random_matrix(r, c, p, rng, 1 + trial % 4);
            auto k = kernel_basis(m);
            CHECK(rank(m) + k.size() == c);
            for (const auto& v : k) {
                auto mv = m.apply(v);
                for (auto e : mv) CHECK(e == 0);
            }
            FpVector b(r);
            for (auto& e : b) e = static_cast<fp_t>(rng() % p);
            auto x = solve(m, b);
            // augmented rank oracle
            FpMatrix aug(r, c + 1, p);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < c; ++j) aug.set(i, j, m.at(i, j));
                aug.set(i, c, b[i]);
            }
            CHECK(x.has_value() == (rank(aug) == rank(m)));
            if (x) CHECK(m.apply(*x) == b);
        }
    }
}

TEST_CASE("sparse and dense storage agree") {
    std::mt19937_64 rng(5);
    auto m = random_matrix(30, 40, 3, rng, 20);
    auto before = rank(m);
    m.compact();
    CHECK(m.storage() == FpMatrix::Storage::sparse);
    CHECK(rank(m) == before);
    auto t = m.transpose();
    CHECK(rank(t) == before);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 40; ++j) CHECK(t.at(j, i) == m.at(i, j));
}

TEST_CASE("subspace membership and express") {
    FpSubspace s(4, 3);
    CHECK(s.add_dense(FpVector{1, 2, 0, 0}));
    CHECK(s.add_dense(FpVector{0, 1, 1, 0}));
    CHECK_FALSE(s.add_dense(FpVector{1, 0, 1, 0}));  // g0 + g1
    CHECK(s.dimension() == 2);
    CHECK(s.generator_count() == 3);
    CHECK(s.contains_dense(FpVector{2, 1, 0, 0}));
    CHECK_FALSE(s.contains_dense(FpVector{0, 0, 0, 1}));
    auto c = s.express_dense(FpVector{2, 1, 0, 0});
    REQUIRE(c);
    FpVector acc(4, 0);
    const std::vector<FpVector> gens{{1, 2, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}};
    for (std::size_t g = 0; g < 3; ++g)
        for (std::size_t i = 0; i < 4; ++i) acc[i] = (acc[i] + (*c)[g] * gens[g][i]) % 3;
    CHECK(acc == FpVector{2, 1, 0, 0});
}
