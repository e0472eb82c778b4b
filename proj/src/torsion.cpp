#include "galtor/torsion.hpp"

#include <numeric>
#include <string>

namespace galtor {

TorsionSubgroup::TorsionSubgroup(ResidueRing ring, Mat adapted, Mat coords, std::vector<int> vals)
    : ring_(ring), adapted_(std::move(adapted)), coords_(std::move(coords)), vals_(std::move(vals))
{
    // vals_ is non-decreasing, so orders come out non-increasing.
    for (std::size_t t = 0; t < vals_.size(); ++t) {
        if (vals_[t] >= ring_.level())
            continue;
        Vec w = adapted_.col(static_cast<Index>(t));
        basis_.push_back(scale(ring_, w, ring_.pow_ell(vals_[t])));
        orders_.push_back(ring_.level() - vals_[t]);
    }
}

TorsionSubgroup TorsionSubgroup::trivial(const ResidueRing& ring, Index dim)
{
    return {ring, Mat::Identity(dim, dim), Mat::Identity(dim, dim),
            std::vector<int>(static_cast<std::size_t>(dim), ring.level())};
}

TorsionSubgroup TorsionSubgroup::full(const ResidueRing& ring, Index dim)
{
    return {ring, Mat::Identity(dim, dim), Mat::Identity(dim, dim), std::vector<int>(static_cast<std::size_t>(dim), 0)};
}

int TorsionSubgroup::log_size() const noexcept { return std::accumulate(orders_.begin(), orders_.end(), 0); }

Int TorsionSubgroup::size() const
{
    constexpr Int limit = Int{1} << 62;
    Int s = 1;
    for (int i = 0; i < log_size(); ++i) {
        if (s > limit / ring_.ell())
            throw Error("subgroup order exceeds 62 bits");
        s *= ring_.ell();
    }
    return s;
}

bool TorsionSubgroup::contains(const Vec& v) const
{
    if (v.size() != ambient_dim())
        throw Error("vector dimension does not match the ambient module");
    const Vec c = MatrixMod(ring_, coords_).apply(v);
    for (Index t = 0; t < c.size(); ++t)
        if (ring_.valuation(c(t)) < vals_[static_cast<std::size_t>(t)])
            return false;
    return true;
}

bool TorsionSubgroup::is_subgroup_of(const TorsionSubgroup& other) const
{
    if (!(ring_ == other.ring_) || ambient_dim() != other.ambient_dim())
        throw RingMismatch("subgroups live in different ambient modules");
    for (const auto& b : basis_)
        if (!other.contains(b))
            return false;
    return true;
}

bool TorsionSubgroup::operator==(const TorsionSubgroup& other) const
{
    return is_subgroup_of(other) && other.is_subgroup_of(*this);
}

std::vector<Vec> TorsionSubgroup::elements() const
{
    std::vector<Vec> out;
    for_each_element([&](const Vec& x) { out.push_back(x); });
    return out;
}

TorsionSubgroup subgroup_from_generators(std::span<const Vec> vectors, const ResidueRing& ring, Index dim)
{
    if (vectors.empty())
        return TorsionSubgroup::trivial(ring, dim);
    Mat gens(dim, static_cast<Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim)
            throw Error("generator of length " + std::to_string(vectors[j].size()) + " in dimension " +
                        std::to_string(dim));
        gens.col(static_cast<Index>(j)) = vectors[j];
    }
    // U G V = D: the column space of G is that of U^{-1} D, so the columns
    // of U^{-1} form an adapted basis and U maps a vector to its coordinates.
    const auto snf = smith_normal_form(MatrixMod(ring, std::move(gens)));
    std::vector<int> vals(static_cast<std::size_t>(dim), ring.level());
    for (std::size_t t = 0; t < snf.valuations.size(); ++t)
        vals[t] = snf.valuations[t];
    Mat adapted = mat_invert(snf.U).entries();
    return {ring, std::move(adapted), snf.U.entries(), std::move(vals)};
}

TorsionSubgroup slice(const TorsionSubgroup& h, int m)
{
    if (m < 0)
        throw Error("slice level must be non-negative");
    const int floor = std::max(0, h.ring_.level() - m);
    std::vector<int> vals = h.vals_;
    for (auto& v : vals)
        v = std::max(v, floor);
    return {h.ring_, h.adapted_, h.coords_, std::move(vals)};
}

Vec lift_vector(const Vec& v, const ResidueRing& from, const ResidueRing& to)
{
    if (from.ell() != to.ell() || from.level() > to.level())
        throw RingMismatch("lift must go to a higher level of the same prime");
    return scale(to, reduce(from, v), to.pow_ell(to.level() - from.level()));
}

TorsionSubgroup lift(const TorsionSubgroup& h, const ResidueRing& to)
{
    std::vector<Vec> gens;
    for (const auto& b : h.basis())
        gens.push_back(lift_vector(b, h.ring(), to));
    return subgroup_from_generators(gens, to, h.ambient_dim());
}

TorsionSubgroup image(const MatrixMod& m, const TorsionSubgroup& h)
{
    std::vector<Vec> gens;
    for (const auto& b : h.basis())
        gens.push_back(m.apply(b));
    return subgroup_from_generators(gens, h.ring(), m.rows());
}

} // namespace galtor
