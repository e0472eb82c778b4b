#include "doctest.h"

#include "galtor/torsion.hpp"
#include "support/oracles.hpp"

using namespace galtor;
using galtor::testing::Rng;

namespace {

Vec vec(std::initializer_list<Int> xs)
{
    Vec v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (Int x : xs)
        v(i++) = x;
    return v;
}

std::set<std::vector<Int>> element_set(const TorsionSubgroup& h)
{
    std::set<std::vector<Int>> out;
    h.for_each_element([&](const Vec& v) { out.insert(testing::key(v)); });
    return out;
}

} // namespace

TEST_CASE("subgroup_from_generators fixtures")
{
    const ResidueRing z25(5, 2);
    const std::vector<Vec> ones{vec({1, 1, 1, 1})};
    const auto c = subgroup_from_generators(ones, z25, 4);
    CHECK(c.orders() == std::vector<int>{2});
    CHECK(c.size() == 25);

    const ResidueRing f3(3, 1);
    const std::vector<Vec> std2{vec({1, 0}), vec({0, 1})};
    const auto full = subgroup_from_generators(std2, f3, 2);
    CHECK(full.orders() == std::vector<int>{1, 1});
    CHECK(full == TorsionSubgroup::full(f3, 2));

    const ResidueRing z9(3, 2);
    const std::vector<Vec> mixed{vec({3, 0}), vec({0, 1})};
    const auto h = subgroup_from_generators(mixed, z9, 2);
    CHECK(h.orders() == std::vector<int>{2, 1});
    CHECK(h.size() == 27);
    int members = 0;
    for (const auto& v : testing::all_vectors(z9, 2))
        members += h.contains(v);
    CHECK(members == 27);
    CHECK(testing::span_by_enumeration(mixed, z9, 2).size() == 27);

    CHECK(subgroup_from_generators(std::vector<Vec>{}, z9, 2).size() == 1);
}

TEST_CASE("slice fixtures")
{
    const ResidueRing z9(3, 2);
    const auto s = slice(TorsionSubgroup::full(z9, 2), 1);
    CHECK(s.size() == 9);
    CHECK(s.contains(vec({3, 6})));
    CHECK_FALSE(s.contains(vec({1, 0})));
    CHECK(slice(TorsionSubgroup::full(z9, 2), 0) == TorsionSubgroup::trivial(z9, 2));

    const ResidueRing z27(3, 3);
    const std::vector<Vec> gen{vec({1, 2})};
    const auto c = subgroup_from_generators(gen, z27, 2);
    const auto c1 = slice(c, 1);
    CHECK(c1.size() == 3);
    const std::vector<Vec> nine{vec({9, 18})};
    CHECK(element_set(c1) == testing::span_by_enumeration(nine, z27, 2));
}

TEST_CASE("membership")
{
    const ResidueRing f5(5, 1);
    const std::vector<Vec> diag{vec({1, 1})};
    const auto h = subgroup_from_generators(diag, f5, 2);
    CHECK(h.contains(vec({0, 0})));
    CHECK(h.contains(vec({2, 2})));
    CHECK_FALSE(h.contains(vec({1, 2})));
}

TEST_CASE("membership agrees with enumeration on every subspace of F_ell^4")
{
    for (Int ell : {2, 3}) {
        const ResidueRing F(ell, 1);
        const auto subspaces = testing::all_subspaces(F, 4);
        CHECK(subspaces.size() == (ell == 2 ? 67U : 212U));
        const auto everything = testing::all_vectors(F, 4);
        for (const auto& rows : subspaces) {
            const auto h = subgroup_from_generators(rows, F, 4);
            const auto span = testing::span_by_enumeration(rows, F, 4);
            CHECK(h.log_size() == static_cast<int>(rows.size()));
            bool agree = true;
            for (const auto& v : everything)
                agree = agree && (h.contains(v) == (span.count(testing::key(v)) > 0));
            CHECK(agree);
            CHECK(element_set(h) == span);
        }
    }
}

TEST_CASE("random subgroups: membership, slices, idempotence")
{
    Rng rng(41);
    for (Int ell : {2, 3, 5})
        for (int N = 1; N <= 3; ++N) {
            const ResidueRing R(ell, N);
            for (int t = 0; t < 12; ++t) {
                const Index dim = std::uniform_int_distribution<Index>(2, 4)(rng);
                const auto h = testing::random_subgroup(rng, R, dim, 5000);
                const auto elems = element_set(h);
                CHECK(static_cast<Int>(elems.size()) == h.size());
                for (int k = 0; k < 30; ++k) {
                    const Vec v = testing::random_vector(rng, R, dim);
                    CHECK(h.contains(v) == (elems.count(testing::key(v)) > 0));
                }
                for (const auto& b : h.basis())
                    CHECK(h.contains(b));
                for (std::size_t i = 1; i < h.orders().size(); ++i)
                    CHECK(h.orders()[i - 1] >= h.orders()[i]);

                const auto again = subgroup_from_generators(h.basis(), R, dim);
                CHECK(again.orders() == h.orders());
                CHECK(again == h);

                for (int m = 0; m <= N; ++m) {
                    Int expected = 1;
                    for (int mi : h.orders())
                        expected *= R.pow_ell(std::min(mi, m));
                    const auto s = slice(h, m);
                    CHECK(s.size() == expected);
                    CHECK(s.is_subgroup_of(h));
                }
            }
        }
}

TEST_CASE("lift and image")
{
    const ResidueRing f3(3, 1), z27(3, 3);
    const auto full = TorsionSubgroup::full(f3, 2);
    const auto lifted = lift(full, z27);
    CHECK(lifted.size() == 9);
    CHECK(lifted == slice(TorsionSubgroup::full(z27, 2), 1));
    CHECK(lift_vector(vec({1, 2}), f3, z27) == vec({9, 18}));

    const auto swap = MatrixMod::from_rows(z27, {{0, 1}, {1, 0}});
    const std::vector<Vec> gen{vec({1, 3})};
    const auto h = subgroup_from_generators(gen, z27, 2);
    const std::vector<Vec> swapped{vec({3, 1})};
    CHECK(image(swap, h) == subgroup_from_generators(swapped, z27, 2));
}
