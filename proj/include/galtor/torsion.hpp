#pragma once

#include "galtor/modring.hpp"

#include <span>
#include <vector>

namespace galtor {

/// A finite subgroup H of (Z/ell^N)^d held in Smith form.
///
/// The ambient module has an adapted basis w_1..w_d (columns of an invertible
/// matrix) with H = (+)_t ell^{v_t} Z w_t. The Smith basis of H is
/// e_t = ell^{v_t} w_t for v_t < N, of exact order ell^{N - v_t}, listed with
/// non-increasing orders.
class TorsionSubgroup {
public:
    static TorsionSubgroup trivial(const ResidueRing& ring, Index dim);
    static TorsionSubgroup full(const ResidueRing& ring, Index dim);

    const ResidueRing& ring() const noexcept { return ring_; }
    Index ambient_dim() const noexcept { return adapted_.rows(); }

    /// Smith basis vectors, one per nontrivial cyclic factor.
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    /// Order exponents m_1 >= m_2 >= ... of the basis vectors.
    const std::vector<int>& orders() const noexcept { return orders_; }

    /// Exponent n of H (largest order ell^n); 0 for the trivial group.
    int exponent() const noexcept { return orders_.empty() ? 0 : orders_.front(); }
    /// log_ell |H|.
    int log_size() const noexcept;
    /// |H|; throws when it does not fit in 62 bits.
    Int size() const;

    bool contains(const Vec& v) const;
    bool is_subgroup_of(const TorsionSubgroup& other) const;
    bool operator==(const TorsionSubgroup& other) const;

    /// Enumerates sum c_t e_t for 0 <= c_t < ell^{m_t}, in lexicographic order of c.
    template <typename F>
    void for_each_element(F&& visit) const;
    std::vector<Vec> elements() const;

private:
    TorsionSubgroup(ResidueRing ring, Mat adapted, Mat coords, std::vector<int> vals);

    friend TorsionSubgroup subgroup_from_generators(std::span<const Vec>, const ResidueRing&, Index);
    friend TorsionSubgroup slice(const TorsionSubgroup&, int);

    ResidueRing ring_;
    Mat adapted_;
    Mat coords_;
    std::vector<int> vals_;
    std::vector<Vec> basis_;
    std::vector<int> orders_;
};

/// Smith-normalized subgroup generated by `vectors` inside (Z/ell^N)^dim.
TorsionSubgroup subgroup_from_generators(std::span<const Vec> vectors, const ResidueRing& ring, Index dim);

/// H[ell^m] = {x in H : ell^m x = 0}.
TorsionSubgroup slice(const TorsionSubgroup& h, int m);

inline bool contains(const TorsionSubgroup& h, const Vec& v) { return h.contains(v); }

/// The injection (Z/ell^n)^d -> (Z/ell^N)^d, x -> ell^{N-n} x.
Vec lift_vector(const Vec& v, const ResidueRing& from, const ResidueRing& to);
TorsionSubgroup lift(const TorsionSubgroup& h, const ResidueRing& to);

/// M * H for an endomorphism M of the ambient module.
TorsionSubgroup image(const MatrixMod& m, const TorsionSubgroup& h);

template <typename F>
void TorsionSubgroup::for_each_element(F&& visit) const
{
    const auto& R = ring_;
    const std::size_t r = basis_.size();
    std::vector<Int> bound(r);
    for (std::size_t i = 0; i < r; ++i)
        bound[i] = R.pow_ell(orders_[i]);
    std::vector<Int> c(r, 0);
    Vec x = Vec::Zero(ambient_dim());
    while (true) {
        visit(static_cast<const Vec&>(x));
        // odometer increment, last coordinate fastest
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (++c[i] < bound[i]) {
                x = add(R, x, basis_[i]);
                break;
            }
            c[i] = 0;
            x = add(R, x, scale(R, basis_[i], R.neg(bound[i] - 1)));
            if (i == 0)
                return;
        }
        if (r == 0)
            return;
    }
}

} // namespace galtor
