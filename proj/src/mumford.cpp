#include "galtor/mumford.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace galtor {

namespace {

ResidueRing field_of(Int ell) { return ResidueRing(ell, 1); }

// The four Lagrangian basis vectors as (i, j, k) index triples.
constexpr std::array<std::array<int, 3>, 4> lagrangian_indices{{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}}};

bool dependent(const std::vector<Int>& x, const std::vector<Int>& y, const ResidueRing& R)
{
    for (std::size_t p = 0; p < x.size(); ++p)
        for (std::size_t q = p + 1; q < x.size(); ++q)
            if (R.sub(R.mul(x[p], y[q]), R.mul(x[q], y[p])) != 0)
                return false;
    return true;
}

std::vector<Int> block_entries(const Mat& m, Index r0, Index c0, Index size)
{
    std::vector<Int> out;
    for (Index i = 0; i < size; ++i)
        for (Index j = 0; j < size; ++j)
            out.push_back(m(r0 + i, c0 + j));
    return out;
}

bool blocks_pairwise_dependent(const Mat& m, Index r0, Index c0, Index half, const ResidueRing& R)
{
    std::array<std::vector<Int>, 4> blocks{block_entries(m, r0, c0, half), block_entries(m, r0, c0 + half, half),
                                           block_entries(m, r0 + half, c0, half),
                                           block_entries(m, r0 + half, c0 + half, half)};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (!dependent(blocks[i], blocks[j], R))
                return false;
    return true;
}

// Column e_{ijk} of rho(a, b, c) equals e_{ijk}.
bool fixes_basis_vector(const MatrixMod& a, const MatrixMod& b, const MatrixMod& c, const std::array<int, 3>& ijk,
                        const ResidueRing& R)
{
    const Index i = ijk[0] - 1, j = ijk[1] - 1, k = ijk[2] - 1;
    for (Index p = 0; p < 2; ++p)
        for (Index q = 0; q < 2; ++q)
            for (Index r = 0; r < 2; ++r) {
                const Int v = R.mul(a(p, i), R.mul(b(q, j), c(r, k)));
                const Int want = (p == i && q == j && r == k) ? 1 : 0;
                if (v != want)
                    return false;
            }
    return true;
}

// Runs body(index) for index in [0, n) on `threads` workers, collecting per-worker results.
template <typename Body>
std::vector<MatrixMod> parallel_collect(std::size_t n, int threads, Body body)
{
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    std::vector<std::vector<MatrixMod>> partial(workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers)
                    body(i, partial[w]);
            });
    }
    std::vector<MatrixMod> out;
    for (auto& p : partial)
        for (auto& m : p)
            out.push_back(std::move(m));
    std::sort(out.begin(), out.end(), [](const MatrixMod& x, const MatrixMod& y) { return x.flat() < y.flat(); });
    return out;
}

} // namespace

std::vector<MatrixMod> gl2_elements(const ResidueRing& field)
{
    const Int q = field.modulus();
    std::vector<MatrixMod> out;
    for (Int x = 0; x < q; ++x)
        for (Int y = 0; y < q; ++y)
            for (Int z = 0; z < q; ++z)
                for (Int w = 0; w < q; ++w)
                    if (field.is_unit(field.sub(field.mul(x, w), field.mul(y, z))))
                        out.push_back(MatrixMod::from_rows(field, {{x, y}, {z, w}}));
    return out;
}

bool is_canonical(const MatrixMod& m)
{
    for (Int v : m.flat())
        if (v != 0)
            return v == 1;
    return false;
}

std::vector<MatrixMod> canonical_gl2_elements(const ResidueRing& field)
{
    std::vector<MatrixMod> out;
    for (auto& m : gl2_elements(field))
        if (is_canonical(m))
            out.push_back(std::move(m));
    return out;
}

TensorTriple canonicalize(const TensorTriple& t)
{
    const auto& R = t.a.ring();
    auto leading = [](const MatrixMod& m) {
        for (Int v : m.flat())
            if (v != 0)
                return v;
        throw NotInvertible("zero matrix in a tensor triple");
    };
    const Int x = leading(t.a);
    const Int y = leading(t.b);
    const Int xi = R.inverse(x);
    const Int yi = R.inverse(y);
    return {t.a.scaled(xi), t.b.scaled(yi), t.c.scaled(R.mul(x, y))};
}

MatrixMod rho(const MatrixMod& a, const MatrixMod& b, const MatrixMod& c)
{
    for (const auto* m : {&a, &b, &c})
        if (m->rows() != 2 || m->cols() != 2 || !m->is_invertible())
            throw NotInvertible("rho needs invertible 2x2 matrices");
    return kron(kron(a, b), c);
}

TorsionSubgroup lagrangian_H(Int ell)
{
    const auto R = field_of(ell);
    std::vector<Vec> gens;
    for (const auto& ijk : lagrangian_indices) {
        Vec e = Vec::Zero(8);
        e(tensor_index(ijk[0], ijk[1], ijk[2])) = 1;
        gens.push_back(e);
    }
    return subgroup_from_generators(gens, R, 8);
}

bool block_dependence(const MatrixMod& m)
{
    if (m.rows() != 8 || m.cols() != 8)
        throw Error("block_dependence expects an 8x8 matrix");
    const auto& R = m.ring();
    const Mat& e = m.entries();
    if (!blocks_pairwise_dependent(e, 0, 0, 4, R))
        return false;
    for (Index bi = 0; bi < 2; ++bi)
        for (Index bj = 0; bj < 2; ++bj)
            if (!blocks_pairwise_dependent(e, 4 * bi, 4 * bj, 2, R))
                return false;
    return true;
}

MatrixMod sign_involution(Int ell)
{
    const auto R = field_of(ell);
    const std::array<Int, 8> d{1, -1, -1, 1, -1, 1, 1, -1};
    return MatrixMod::diagonal(R, d);
}

std::vector<MatrixMod> pointwise_stabilizer_in_image(Int ell, SearchOptions opts)
{
    const auto R = field_of(ell);
    const auto canon = canonical_gl2_elements(R);
    // Unknown vector x = (c11, c12, c21, c22). Coordinate (p, q, r) of rho e_{ijk}
    // is a_{pi} b_{qj} c_{rk}, linear in the single unknown c_{rk}.
    return parallel_collect(canon.size(), opts.threads, [&](std::size_t ia, std::vector<MatrixMod>& out) {
        const auto& a = canon[ia];
        for (const auto& b : canon) {
            Mat coeffs = Mat::Zero(32, 4);
            Vec rhs = Vec::Zero(32);
            Index row = 0;
            for (const auto& ijk : lagrangian_indices) {
                const Index i = ijk[0] - 1, j = ijk[1] - 1, k = ijk[2] - 1;
                for (Index p = 0; p < 2; ++p)
                    for (Index q = 0; q < 2; ++q)
                        for (Index r = 0; r < 2; ++r, ++row) {
                            coeffs(row, 2 * r + k) = R.mul(a(p, i), b(q, j));
                            rhs(row) = (p == i && q == j && r == k) ? 1 : 0;
                        }
            }
            const auto sol = solve_linear(MatrixMod(R, std::move(coeffs)), rhs);
            if (!sol)
                continue;
            const auto kernel = subgroup_from_generators(sol->kernel_generators, R, 4);
            kernel.for_each_element([&](const Vec& k) {
                const Vec x = add(R, sol->particular, k);
                const auto c = MatrixMod::from_rows(R, {{x(0), x(1)}, {x(2), x(3)}});
                if (c.is_invertible())
                    out.push_back(rho(a, b, c));
            });
        }
    });
}

std::vector<MatrixMod> pointwise_stabilizer_brute_force(Int ell, SearchOptions opts)
{
    const auto R = field_of(ell);
    const auto canon = canonical_gl2_elements(R);
    const auto all = gl2_elements(R);
    return parallel_collect(canon.size(), opts.threads, [&](std::size_t ia, std::vector<MatrixMod>& out) {
        const auto& a = canon[ia];
        for (const auto& b : canon)
            for (const auto& c : all) {
                bool fixes = true;
                for (const auto& ijk : lagrangian_indices)
                    if (!fixes_basis_vector(a, b, c, ijk, R)) {
                        fixes = false;
                        break;
                    }
                if (fixes)
                    out.push_back(rho(a, b, c));
            }
    });
}

Int image_order(Int ell, Int cap)
{
    const auto R = field_of(ell);
    const auto canon = static_cast<Int>(canonical_gl2_elements(R).size());
    const auto full = static_cast<Int>(gl2_elements(R).size());
    if (canon > 0 && full > cap / (canon * canon))
        throw CapExceeded("image of order " + std::to_string(canon) + "^2 * " + std::to_string(full) +
                          " exceeds cap " + std::to_string(cap));
    return canon * canon * full;
}

Int image_order_dedup(Int ell, Int cap)
{
    const auto R = field_of(ell);
    const auto all = gl2_elements(R);
    const auto n = static_cast<Int>(all.size());
    if (n > 0 && n * n > cap / n)
        throw CapExceeded("dedup enumeration of " + std::to_string(n) + "^3 triples exceeds cap");
    std::unordered_set<std::vector<Int>, FlatHash> seen;
    for (const auto& a : all)
        for (const auto& b : all) {
            const auto ab = kron(a, b);
            for (const auto& c : all)
                seen.insert(kron(ab, c).flat());
        }
    return static_cast<Int>(seen.size());
}

MatrixGroup image_group(Int ell, Int cap)
{
    const auto R = field_of(ell);
    const auto space = tensor_form(3, R);
    const auto id = MatrixMod::identity(R, 2);
    std::vector<MatrixMod> gens;
    for (const auto& x : gl2_generators(R)) {
        gens.push_back(rho(x, id, id));
        gens.push_back(rho(id, x, id));
        gens.push_back(rho(id, id, x));
    }
    const Int order = image_order(ell, std::numeric_limits<Int>::max());
    if (order <= cap)
        return close(space, std::move(gens), cap);
    return MatrixGroup(space, std::move(gens), order);
}

std::optional<std::string> kernel_law_violation(Int ell)
{
    const auto R = field_of(ell);
    const auto all = gl2_elements(R);
    std::vector<Int> units;
    for (Int u = 1; u < R.modulus(); ++u)
        if (R.is_unit(u))
            units.push_back(u);

    // forward direction: scalars with xyz = 1 do not change rho
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) {
                const auto base = rho(a, b, c);
                for (Int x : units)
                    for (Int y : units) {
                        const Int z = R.inverse(R.mul(x, y));
                        if (!(rho(a.scaled(x), b.scaled(y), c.scaled(z)) == base))
                            return "rho changes under scalars with product 1";
                    }
            }

    // converse: every fiber of rho is a single scalar orbit of size (ell-1)^2
    std::unordered_map<std::vector<Int>, std::vector<std::size_t>, FlatHash> fibers;
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t ia = 0; ia < all.size(); ++ia)
        for (std::size_t ib = 0; ib < all.size(); ++ib)
            for (std::size_t ic = 0; ic < all.size(); ++ic) {
                fibers[rho(all[ia], all[ib], all[ic]).flat()].push_back(triples.size());
                triples.push_back({ia, ib, ic});
            }
    const auto expected = static_cast<std::size_t>((ell - 1) * (ell - 1));
    for (const auto& [key, members] : fibers) {
        if (members.size() != expected)
            return "fiber of size " + std::to_string(members.size()) + ", expected " + std::to_string(expected);
        const auto& t0 = triples[members.front()];
        for (std::size_t idx : members) {
            const auto& t = triples[idx];
            bool found = false;
            for (Int x : units) {
                if (!(all[t[0]] == all[t0[0]].scaled(x)))
                    continue;
                for (Int y : units) {
                    if (!(all[t[1]] == all[t0[1]].scaled(y)))
                        continue;
                    const Int z = R.inverse(R.mul(x, y));
                    if (all[t[2]] == all[t0[2]].scaled(z))
                        found = true;
                }
            }
            if (!found)
                return "two triples with the same image are not related by scalars with product 1";
        }
    }
    return std::nullopt;
}

MumfordVerification verify_mu_s_failure(std::span<const Int> ells, SearchOptions opts, const Rational& c)
{
    MumfordVerification out;
    for (Int ell : ells) {
        const auto R = field_of(ell);
        const auto space = tensor_form(3, R);
        const auto h = lagrangian_H(ell);
        const auto tag = "ell=" + std::to_string(ell) + ": ";

        DegreeReport r;
        r.scenario = "mumford";
        r.ell = ell;
        r.level = 1;
        r.m1 = m1(h, space);
        if (r.m1 != 0)
            out.violations.push_back(tag + "m1 of the Lagrangian is " + std::to_string(r.m1) + ", expected 0");

        const auto stab = pointwise_stabilizer_in_image(ell, opts);
        std::vector<MatrixMod> expected{MatrixMod::identity(R, 8)};
        if (ell != 2)
            expected.push_back(sign_involution(ell));
        std::sort(expected.begin(), expected.end(),
                  [](const MatrixMod& x, const MatrixMod& y) { return x.flat() < y.flat(); });
        if (!(stab == expected))
            out.violations.push_back(tag + "stabilizer has " + std::to_string(stab.size()) +
                                     " elements, not the expected set");

        std::set<Int> stab_multipliers;
        for (const auto& t : stab)
            stab_multipliers.insert(multiplier(t, space).value());

        const auto image = image_group(ell, 0);
        const Int order = image.order();
        const Int lambda_image = cyclo_degree(image, 1);
        const auto lambda_stab = static_cast<Int>(stab_multipliers.size());
        if (lambda_image != ell - 1)
            out.violations.push_back(tag + "multiplier of the image is not onto the units");

        r.deg_KH = order / static_cast<Int>(stab.size());
        r.deg_cyclo_intersection = lambda_image / lambda_stab;
        r.deg_cyclo_at_m1 = cyclo_degree(image, r.m1);
        r.ratio = Rational(r.deg_cyclo_intersection, r.deg_cyclo_at_m1);
        if (ell != 2 && r.deg_cyclo_intersection != (ell - 1) / 2)
            out.violations.push_back(tag + "intersection degree is " + std::to_string(r.deg_cyclo_intersection) +
                                     ", expected (ell-1)/2");
        r.mu_w_witness_n = mu_w_witness(r.deg_cyclo_intersection, {cyclo_degree(image, 0), lambda_image}, c);

        r.stabilizer_size = static_cast<Int>(stab.size());
        std::vector<std::vector<Int>> flat;
        for (const auto& t : stab)
            flat.push_back(t.flat());
        r.stabilizer_elements = std::move(flat);
        r.image_order = order;
        out.reports.push_back(std::move(r));
    }
    return out;
}

} // namespace galtor
