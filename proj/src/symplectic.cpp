#include "galtor/symplectic.hpp"

#include "galtor/torsion.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace galtor {

SymplecticSpace::SymplecticSpace(MatrixMod form) : form_(std::move(form))
{
    const auto& R = form_.ring();
    if (!form_.is_square() || form_.rows() % 2 != 0 || form_.rows() == 0)
        throw NotAlternating("form must be square of positive even dimension");
    for (Index i = 0; i < form_.rows(); ++i) {
        if (form_(i, i) != 0)
            throw NotAlternating("form has a nonzero diagonal entry");
        for (Index j = i + 1; j < form_.cols(); ++j)
            if (form_(i, j) != R.neg(form_(j, i)))
                throw NotAlternating("form is not antisymmetric");
    }
    if (!form_.is_invertible())
        throw NotAlternating("form is degenerate");
}

SymplecticSpace SymplecticSpace::at_level(int level) const
{
    return SymplecticSpace(MatrixMod(ring().at_level(level), form_.entries()));
}

SymplecticSpace standard_form(int g, const ResidueRing& ring)
{
    if (g < 1)
        throw Error("standard_form needs g >= 1");
    const Index d = 2 * g;
    Mat j = Mat::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        j(i, d - 1 - i) = i < g ? 1 : -1;
    return SymplecticSpace(MatrixMod(ring, std::move(j)));
}

SymplecticSpace tensor_form(int k, const ResidueRing& ring)
{
    if (k < 1 || k % 2 == 0)
        throw NotAlternating("tensor power " + std::to_string(k) + " of an alternating form is not alternating");
    const auto psi = MatrixMod::from_rows(ring, {{0, 1}, {-1, 0}});
    MatrixMod out = psi;
    for (int i = 1; i < k; ++i)
        out = kron(out, psi);
    return SymplecticSpace(std::move(out));
}

SymplecticSpace orthogonal_sum(const SymplecticSpace& a, const SymplecticSpace& b)
{
    if (!(a.ring() == b.ring()))
        throw RingMismatch("orthogonal sum across rings");
    Mat j = Mat::Zero(a.dim() + b.dim(), a.dim() + b.dim());
    j.topLeftCorner(a.dim(), a.dim()) = a.form().entries();
    j.bottomRightCorner(b.dim(), b.dim()) = b.form().entries();
    return SymplecticSpace(MatrixMod(a.ring(), std::move(j)));
}

Residue multiplier(const MatrixMod& m, const SymplecticSpace& space)
{
    const auto& J = space.form();
    const auto& R = space.ring();
    if (m.rows() != J.rows() || m.cols() != J.cols())
        throw NotSimilitude("matrix dimension does not match the form");
    const MatrixMod pulled = m.transpose() * J * m;
    for (Index i = 0; i < J.rows(); ++i)
        for (Index j = 0; j < J.cols(); ++j) {
            if (!R.is_unit(J(i, j)))
                continue;
            const Int lambda = R.mul(pulled(i, j), R.inverse(J(i, j)));
            if (!R.is_unit(lambda) || !(pulled == J.scaled(lambda)))
                throw NotSimilitude("M^T J M is not a unit multiple of J");
            return {lambda, R};
        }
    throw NotSimilitude("form has no unit entry");
}

bool is_similitude(const MatrixMod& m, const SymplecticSpace& space)
{
    try {
        (void)multiplier(m, space);
        return true;
    } catch (const NotSimilitude&) {
        return false;
    }
}

namespace {

// Exact division of every coordinate by ell^{N-n}; lands in (Z/ell^n)^{2g}.
Vec descend(const Vec& p, const ResidueRing& ambient, int n)
{
    const int shift = ambient.level() - n;
    Vec out(p.size());
    for (Index i = 0; i < p.size(); ++i) {
        if (ambient.valuation(p(i)) < shift)
            throw OrderTooLarge("point does not have order dividing " + std::to_string(ambient.ell()) + "^" +
                                std::to_string(n));
        out(i) = ambient.exact_div(p(i), shift);
    }
    return out;
}

Int bilinear(const ResidueRing& ring, const Vec& p, const MatrixMod& form, const Vec& q)
{
    Int acc = 0;
    for (Index i = 0; i < p.size(); ++i) {
        if (p(i) == 0)
            continue;
        for (Index j = 0; j < q.size(); ++j)
            if (form(i, j) != 0 && q(j) != 0)
                acc = ring.add(acc, ring.mul(p(i), ring.mul(form(i, j), q(j))));
    }
    return acc;
}

} // namespace

PairingValue weil_pairing(const Vec& p, const Vec& q, const SymplecticSpace& space, int n)
{
    const auto& R = space.ring();
    if (n < 1 || n > R.level())
        throw Error("pairing level " + std::to_string(n) + " outside [1, " + std::to_string(R.level()) + "]");
    if (p.size() != space.dim() || q.size() != space.dim())
        throw Error("point dimension does not match the symplectic space");
    const auto rn = R.at_level(n);
    const MatrixMod form(rn, space.form().entries());
    const Vec pp = descend(p, R, n);
    const Vec qq = descend(q, R, n);
    return {Residue(bilinear(rn, pp, form, qq), rn)};
}

int point_order_exponent(const Vec& p, const ResidueRing& ring) { return ring.level() - vector_valuation(ring, p); }

int m1(const TorsionSubgroup& h, const SymplecticSpace& space)
{
    const auto& basis = h.basis();
    const auto& orders = h.orders();
    int best = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const int n = std::min(orders[i], orders[j]);
            const Vec p = scale(h.ring(), basis[i], h.ring().pow_ell(orders[i] - n));
            const Vec q = scale(h.ring(), basis[j], h.ring().pow_ell(orders[j] - n));
            best = std::max(best, weil_pairing(p, q, space, n).root_order_exponent());
        }
    return best;
}

int m1_exhaustive(const TorsionSubgroup& h, const SymplecticSpace& space)
{
    const auto& R = space.ring();
    // points of each exact order, already divided down to level n
    std::map<int, std::vector<Vec>> by_order;
    h.for_each_element([&](const Vec& x) {
        const int n = point_order_exponent(x, R);
        if (n > 0)
            by_order[n].push_back(descend(x, R, n));
    });
    int best = 0;
    for (auto it = by_order.rbegin(); it != by_order.rend(); ++it) {
        const int n = it->first;
        if (n <= best)
            break;
        const auto rn = R.at_level(n);
        const MatrixMod form(rn, space.form().entries());
        const auto& pts = it->second;
        std::vector<Vec> paired;
        paired.reserve(pts.size());
        for (const auto& q : pts)
            paired.push_back(form.apply(q));
        for (std::size_t a = 0; a < pts.size() && best < n; ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                Int e = 0;
                for (Index i = 0; i < pts[a].size(); ++i)
                    e = rn.add(e, rn.mul(pts[a](i), paired[b](i)));
                const int k = n - rn.valuation(e);
                if (k > best) {
                    best = k;
                    if (best == n)
                        break;
                }
            }
    }
    return best;
}

} // namespace galtor
