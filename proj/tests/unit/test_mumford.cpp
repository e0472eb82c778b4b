#include "doctest.h"

#include "galtor/mumford.hpp"
#include "support/oracles.hpp"

using namespace galtor;
using galtor::testing::Rng;

namespace {

MatrixMod random_gl2(Rng& rng, const ResidueRing& F) { return testing::random_invertible(rng, F, 2); }

Int det2(const MatrixMod& m) { return testing::leibniz_det(m); }

const std::vector<Int> signs{1, -1, -1, 1, -1, 1, 1, -1};

} // namespace

TEST_CASE("rho fixtures")
{
    const ResidueRing f5(5, 1);
    const auto I = MatrixMod::identity(f5, 2);
    CHECK(rho(I, I, I) == MatrixMod::identity(f5, 8));
    const auto d = MatrixMod::diagonal(f5, std::vector<Int>{1, -1});
    CHECK(rho(d, d, d) == MatrixMod::diagonal(f5, signs));
    CHECK(sign_involution(5) == MatrixMod::diagonal(f5, signs));
    CHECK(tensor_index(1, 1, 1) == 0);
    CHECK(tensor_index(2, 2, 1) == 6);
    CHECK_THROWS_AS(rho(MatrixMod::zero(f5, 2, 2), I, I), NotInvertible);
}

TEST_CASE("rho is a homomorphism into the similitudes")
{
    Rng rng(53);
    for (Int ell : {3, 5}) {
        const ResidueRing F(ell, 1);
        const auto form = tensor_form(3, F);
        for (int t = 0; t < 50; ++t) {
            const auto a = random_gl2(rng, F), b = random_gl2(rng, F), c = random_gl2(rng, F);
            const Int expected = F.mul(det2(a), F.mul(det2(b), det2(c)));
            CHECK(multiplier(rho(a, b, c), form).value() == expected);
            const auto a2 = random_gl2(rng, F), b2 = random_gl2(rng, F), c2 = random_gl2(rng, F);
            CHECK(rho(a * a2, b * b2, c * c2) == rho(a, b, c) * rho(a2, b2, c2));
            CHECK(block_dependence(rho(a, b, c)));
            const auto t3 = canonicalize({a, b, c});
            CHECK(is_canonical(t3.a));
            CHECK(is_canonical(t3.b));
            CHECK(rho(t3) == rho(a, b, c));
        }
    }
}

TEST_CASE("block dependence")
{
    const ResidueRing f3(3, 1);
    CHECK(block_dependence(MatrixMod::identity(f3, 8)));
    Mat e = Mat::Identity(8, 8);
    e(0, 1) = 1;
    CHECK_FALSE(block_dependence(MatrixMod(f3, e)));
    const auto g = image_group(3);
    REQUIRE(g.materialized());
    CHECK(g.order() == 27648);
    bool all = true;
    for (const auto& m : g.elements())
        all = all && block_dependence(m) && is_similitude(m, g.space());
    CHECK(all);
}

TEST_CASE("the Lagrangian subspace")
{
    for (Int ell : {2, 3, 5, 7}) {
        const auto h = lagrangian_H(ell);
        const auto form = tensor_form(3, h.ring());
        CHECK(h.size() == ell * ell * ell * ell);
        for (std::size_t i = 0; i < h.basis().size(); ++i)
            for (std::size_t j = i + 1; j < h.basis().size(); ++j)
                CHECK(weil_pairing(h.basis()[i], h.basis()[j], form, 1).exponent.value() == 0);
        CHECK(m1(h, form) == 0);
        CHECK(m1_exhaustive(h, form) == 0);
        Vec e = Vec::Zero(8);
        e(tensor_index(1, 2, 2)) = 1;
        CHECK(h.contains(e));
        e(tensor_index(1, 1, 2)) = 1;
        CHECK_FALSE(h.contains(e));
    }
}

TEST_CASE("canonical enumeration")
{
    const ResidueRing f3(3, 1);
    CHECK(gl2_elements(f3).size() == 48);
    CHECK(canonical_gl2_elements(f3).size() == 24);
    CHECK(image_order(2) == 216);
    CHECK(image_order(3) == 27648);
    CHECK(image_order(3) == (48 / 2) * (48 / 2) * 48);
    CHECK(image_order_dedup(2) == 216);
    CHECK(image_order_dedup(3) == 27648);
    CHECK_THROWS_AS(image_order(5, 1000), CapExceeded);
}

TEST_CASE("kernel law")
{
    CHECK_FALSE(kernel_law_violation(2));
    CHECK_FALSE(kernel_law_violation(3));
}

TEST_CASE("pointwise stabilizer of the Lagrangian")
{
    const auto s2 = pointwise_stabilizer_in_image(2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == MatrixMod::identity(ResidueRing(2, 1), 8));

    for (Int ell : {3, 5, 7}) {
        const ResidueRing F(ell, 1);
        const auto s = pointwise_stabilizer_in_image(ell);
        REQUIRE(s.size() == 2);
        std::set<std::vector<Int>> got{s[0].flat(), s[1].flat()};
        std::set<std::vector<Int>> want{MatrixMod::identity(F, 8).flat(), MatrixMod::diagonal(F, signs).flat()};
        CHECK(got == want);
        const auto h = lagrangian_H(ell);
        const auto form = tensor_form(3, F);
        for (const auto& m : s) {
            CHECK(image(m, h) == h);
            for (const auto& v : h.elements())
                CHECK(m.apply(v) == v);
        }
        CHECK(multiplier(MatrixMod::diagonal(F, signs), form).value() == ell - 1);
    }
}

TEST_CASE("pruned and brute-force stabilizers agree")
{
    for (Int ell : {2, 3, 5}) {
        const auto pruned = pointwise_stabilizer_in_image(ell);
        const auto brute = pointwise_stabilizer_brute_force(ell);
        CHECK(pruned == brute);
    }
    // the generic stabilizer on the materialized image
    const auto g = image_group(3);
    const auto st = stabilizer(g, lagrangian_H(3));
    auto elems = st.elements();
    std::sort(elems.begin(), elems.end(), [](const MatrixMod& a, const MatrixMod& b) { return a.flat() < b.flat(); });
    CHECK(elems == pointwise_stabilizer_in_image(3));
}

TEST_CASE("thread count does not change the stabilizer")
{
    CHECK(pointwise_stabilizer_in_image(5, {1}) == pointwise_stabilizer_in_image(5, {3}));
    CHECK(pointwise_stabilizer_brute_force(3, {1}) == pointwise_stabilizer_brute_force(3, {4}));
}

TEST_CASE("strong-property failure")
{
    const std::vector<Int> ells{3, 5, 7};
    const auto v = verify_mu_s_failure(ells);
    CHECK(v.ok());
    REQUIRE(v.reports.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& r = v.reports[i];
        const Int ell = ells[i];
        CHECK(r.m1 == 0);
        CHECK(r.stabilizer_size == 2);
        CHECK(r.deg_cyclo_intersection == (ell - 1) / 2);
        CHECK(r.deg_cyclo_at_m1 == 1);
        CHECK(r.ratio == Rational((ell - 1) / 2));
        const Int gl2 = (ell * ell - 1) * (ell * ell - ell);
        CHECK(r.image_order == (gl2 / (ell - 1)) * (gl2 / (ell - 1)) * gl2);
        CHECK(r.deg_KH * 2 == *r.image_order);
    }
}

TEST_CASE("weak witness for the Lagrangian")
{
    // intersection 2 against cyclotomic degrees 1 (n = 0) and 4 (n = 1):
    // with C = 2 the smallest admissible level is already n = 0
    const std::vector<Int> ells{5};
    const auto v = verify_mu_s_failure(ells, {}, Rational(2));
    REQUIRE(v.reports.size() == 1);
    CHECK(v.reports[0].mu_w_witness_n == 0);
    CHECK(mu_w_witness(2, {1, 4}, Rational(2)) == 0);
    CHECK(mu_w_witness(2, {4}, Rational(2)) == 0);
    CHECK_FALSE(mu_w_witness(2, {1, 4}, Rational(3, 2)));
}
