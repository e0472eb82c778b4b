#pragma once

#include "galtor/modring.hpp"

namespace galtor {

class TorsionSubgroup;

/// A free module (Z/ell^N)^{2g} with a non-degenerate alternating form.
class SymplecticSpace {
public:
    /// Validates antisymmetry, zero diagonal and unit determinant.
    explicit SymplecticSpace(MatrixMod form);

    const MatrixMod& form() const noexcept { return form_; }
    const ResidueRing& ring() const noexcept { return form_.ring(); }
    Index dim() const noexcept { return form_.rows(); }
    Index g() const noexcept { return form_.rows() / 2; }

    /// The same form read at another level of the same prime.
    SymplecticSpace at_level(int level) const;

private:
    MatrixMod form_;
};

/// Antidiagonal form: +1 in rows 1..g, -1 in rows g+1..2g.
SymplecticSpace standard_form(int g, const ResidueRing& ring);

/// psi^{(x)k} for the 2x2 standard form, basis e_{i1...ik} in lexicographic order.
SymplecticSpace tensor_form(int k, const ResidueRing& ring);

/// Block-diagonal sum of the forms of two spaces over the same ring.
SymplecticSpace orthogonal_sum(const SymplecticSpace& a, const SymplecticSpace& b);

/// lambda with M^T J M = lambda J; throws NotSimilitude otherwise.
Residue multiplier(const MatrixMod& m, const SymplecticSpace& space);
bool is_similitude(const MatrixMod& m, const SymplecticSpace& space);

/// e_{ell^n}(P, Q) written additively: the exponent of a fixed primitive
/// ell^n-th root of unity.
struct PairingValue {
    Residue exponent;

    int level() const noexcept { return exponent.ring().level(); }
    /// k such that the value generates mu_{ell^k}.
    int root_order_exponent() const noexcept { return level() - exponent.valuation(); }
};

/// Pairing of two ell^n-torsion points of the ambient module (Z/ell^N)^{2g}, n >= 1.
PairingValue weil_pairing(const Vec& p, const Vec& q, const SymplecticSpace& space, int n);

/// Exact order exponent of a point: N - (minimum coordinate valuation).
int point_order_exponent(const Vec& p, const ResidueRing& ring);

/// m_1(H) via pairs of Smith generators scaled to a common order.
int m1(const TorsionSubgroup& h, const SymplecticSpace& space);

/// m_1(H) straight from the definition: every pair of equal-order elements.
int m1_exhaustive(const TorsionSubgroup& h, const SymplecticSpace& space);

} // namespace galtor
