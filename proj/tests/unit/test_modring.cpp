#include "doctest.h"

#include "galtor/modring.hpp"
#include "support/oracles.hpp"

using namespace galtor;
using galtor::testing::Rng;

TEST_CASE("residue ring construction")
{
    CHECK_THROWS_AS(ResidueRing(6, 1), NotPrime);
    CHECK_THROWS_AS(ResidueRing(5, 0), Error);
    const ResidueRing r(3, 3);
    CHECK(r.modulus() == 27);
    CHECK(r.reduce(-1) == 26);
    CHECK_THROWS_AS(ResidueRing(2, 70), Error);
}

TEST_CASE("valuation")
{
    CHECK(valuation(Residue(0, ResidueRing(3, 3))) == 3);
    CHECK(valuation(Residue(6, ResidueRing(3, 3))) == 1);
    CHECK(valuation(Residue(10, ResidueRing(5, 2))) == 1);
    CHECK(valuation(Residue(7, ResidueRing(5, 2))) == 0);
}

TEST_CASE("valuation of products")
{
    Rng rng(11);
    for (Int ell : {2, 3, 5})
        for (int n = 1; n <= 3; ++n) {
            const ResidueRing R(ell, n);
            std::uniform_int_distribution<Int> d(0, R.modulus() - 1);
            for (int i = 0; i < 200; ++i) {
                const Residue x(d(rng), R), y(d(rng), R);
                const int vx = x.valuation(), vy = y.valuation();
                if (vx < n || vy < n)
                    CHECK((x * y).valuation() == std::min(n, vx + vy));
            }
        }
}

TEST_CASE("unit inverses and generators")
{
    const ResidueRing r(5, 2);
    CHECK(r.mul(r.inverse(7), 7) == 1);
    CHECK_THROWS_AS(r.inverse(10), NotInvertible);
    const auto gens = r.unit_generators();
    REQUIRE(gens.size() == 1);
    CHECK(r.unit_order(gens[0]) == 20);
    CHECK(ResidueRing(2, 3).unit_generators().size() == 2);
    CHECK(ResidueRing(2, 1).unit_generators().empty());
}

TEST_CASE("determinant agrees with the Leibniz expansion")
{
    Rng rng(3);
    for (Int ell : {2, 3, 5})
        for (int n = 1; n <= 3; ++n)
            for (Index dim = 1; dim <= 5; ++dim)
                for (int i = 0; i < 10; ++i) {
                    const auto m = testing::random_matrix(rng, ResidueRing(ell, n), dim, dim);
                    CHECK(determinant(m).value() == testing::leibniz_det(m));
                }
}

TEST_CASE("mat_invert")
{
    const ResidueRing z9(3, 2);
    CHECK(mat_invert(MatrixMod::identity(z9, 3)) == MatrixMod::identity(z9, 3));
    const std::vector<Int> two{2, 2};
    const std::vector<Int> five{5, 5};
    CHECK(mat_invert(MatrixMod::diagonal(z9, two)) == MatrixMod::diagonal(z9, five));
    CHECK_THROWS_AS(mat_invert(MatrixMod::from_rows(z9, {{3, 0}, {0, 1}})), NotInvertible);

    Rng rng(5);
    const ResidueRing z25(5, 2);
    for (int i = 0; i < 50; ++i) {
        const auto m = testing::random_invertible(rng, z25, 4);
        const auto inv = mat_invert(m);
        CHECK(m * inv == MatrixMod::identity(z25, 4));
        CHECK(inv * m == MatrixMod::identity(z25, 4));
        CHECK(mat_invert(inv) == m);
    }
}

namespace {

void check_smith(const MatrixMod& m)
{
    const auto s = smith_normal_form(m);
    const auto& R = m.ring();
    CHECK(s.U * m * s.V == s.D);
    CHECK(R.is_unit(testing::leibniz_det(s.U)));
    CHECK(R.is_unit(testing::leibniz_det(s.V)));
    for (Index i = 0; i < s.D.rows(); ++i)
        for (Index j = 0; j < s.D.cols(); ++j) {
            if (i != j) {
                CHECK(s.D(i, j) == 0);
                continue;
            }
            const int v = s.valuations[static_cast<std::size_t>(i)];
            CHECK(s.D(i, i) == (v == R.level() ? 0 : R.pow_ell(v)));
            if (i > 0)
                CHECK(s.valuations[static_cast<std::size_t>(i - 1)] <= v);
        }
}

} // namespace

TEST_CASE("smith normal form fixtures")
{
    const ResidueRing z9(3, 2);
    const auto id = smith_normal_form(MatrixMod::identity(z9, 3));
    CHECK(id.U == MatrixMod::identity(z9, 3));
    CHECK(id.D == MatrixMod::identity(z9, 3));
    CHECK(id.V == MatrixMod::identity(z9, 3));

    const auto a = smith_normal_form(MatrixMod::from_rows(z9, {{3, 0}, {0, 1}}));
    CHECK(a.D == MatrixMod::from_rows(z9, {{1, 0}, {0, 3}}));
    check_smith(MatrixMod::from_rows(z9, {{3, 0}, {0, 1}}));

    // [[2,1],[4,5]]: det 6 has valuation 1, and its column span has 27 elements
    const auto m = MatrixMod::from_rows(z9, {{2, 1}, {4, 5}});
    const auto b = smith_normal_form(m);
    CHECK(b.D == MatrixMod::from_rows(z9, {{1, 0}, {0, 3}}));
    check_smith(m);
    std::vector<Vec> cols{m.entries().col(0), m.entries().col(1)};
    CHECK(testing::span_by_enumeration(cols, z9, 2).size() == 27);
}

TEST_CASE("smith valuations are invariant under equivalence")
{
    Rng rng(17);
    for (Int ell : {2, 3, 5})
        for (int n = 1; n <= 3; ++n) {
            const ResidueRing R(ell, n);
            for (int trial = 0; trial < 100; ++trial) {
                const Index rows = std::uniform_int_distribution<Index>(1, 8)(rng);
                const Index cols = std::uniform_int_distribution<Index>(1, 8)(rng);
                const auto m = testing::random_matrix(rng, R, rows, cols);
                const auto base = smith_normal_form(m);
                check_smith(m);
                // conjugations built from transvections stay cheap to certify as invertible
                auto left = MatrixMod::identity(R, rows);
                auto right = MatrixMod::identity(R, cols);
                for (int k = 0; k < 4; ++k) {
                    Mat e = Mat::Identity(rows, rows);
                    const Index i = std::uniform_int_distribution<Index>(0, rows - 1)(rng);
                    const Index j = std::uniform_int_distribution<Index>(0, rows - 1)(rng);
                    if (i != j)
                        e(i, j) = std::uniform_int_distribution<Int>(0, R.modulus() - 1)(rng);
                    e(i, i) = R.mul(e(i, i), testing::random_unit(rng, R));
                    left = MatrixMod(R, e) * left;
                    Mat f = Mat::Identity(cols, cols);
                    const Index p = std::uniform_int_distribution<Index>(0, cols - 1)(rng);
                    const Index q = std::uniform_int_distribution<Index>(0, cols - 1)(rng);
                    if (p != q)
                        f(p, q) = std::uniform_int_distribution<Int>(0, R.modulus() - 1)(rng);
                    right = right * MatrixMod(R, f);
                }
                CHECK(smith_normal_form(left * m * right).valuations == base.valuations);
            }
        }
}

TEST_CASE("solve_linear")
{
    const ResidueRing z27(3, 3);
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_matrix(rng, z27, 3, 2);
        const Vec x = testing::random_vector(rng, z27, 2);
        const Vec b = a.apply(x);
        const auto sol = solve_linear(a, b);
        REQUIRE(sol);
        CHECK(a.apply(sol->particular) == b);
        for (const auto& k : sol->kernel_generators)
            CHECK(a.apply(k) == Vec::Zero(3));
    }
    // 3 x = 1 has no solution mod 9
    CHECK_FALSE(solve_linear(MatrixMod::from_rows(ResidueRing(3, 2), {{3}}), Vec::Ones(1)));
}

TEST_CASE("kron")
{
    const ResidueRing f5(5, 1);
    const auto a = MatrixMod::from_rows(f5, {{1, 2}, {3, 4}});
    const auto b = MatrixMod::from_rows(f5, {{0, 1}, {1, 0}});
    const auto k = kron(a, b);
    CHECK(k == MatrixMod::from_rows(f5, {{0, 1, 0, 2}, {1, 0, 2, 0}, {0, 3, 0, 4}, {3, 0, 4, 0}}));
}
