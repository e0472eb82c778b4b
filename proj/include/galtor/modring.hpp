#pragma once

// Exact arithmetic over the local rings Z/ell^n.
//
// Matrices are dense Eigen matrices of 64-bit residues. Eigen handles storage,
// blocks and transposes; every arithmetic operation that can leave [0, ell^n)
// goes through a ResidueRing so that results stay canonical.

#include "galtor/errors.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace galtor {

using Int = std::int64_t;
using Index = Eigen::Index;
using Mat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// Deterministic primality test (trial division; moduli here are word-sized).
bool is_prime(Int n);

/// The ring Z/ell^level for a prime ell. The modulus must fit in 62 bits.
class ResidueRing {
public:
    ResidueRing(Int ell, int level);

    Int ell() const noexcept { return ell_; }
    int level() const noexcept { return level_; }
    Int modulus() const noexcept { return modulus_; }

    /// ell^k for 0 <= k <= level.
    Int pow_ell(int k) const;

    /// Same prime, different exponent.
    ResidueRing at_level(int level) const { return ResidueRing(ell_, level); }

    Int reduce(Int x) const noexcept
    {
        Int r = x % modulus_;
        return r < 0 ? r + modulus_ : r;
    }
    Int add(Int a, Int b) const noexcept { return reduce(a + b); }
    Int sub(Int a, Int b) const noexcept { return reduce(a - b); }
    Int neg(Int a) const noexcept { return reduce(-a); }
    Int mul(Int a, Int b) const noexcept
    {
        auto p = static_cast<__int128>(a) * static_cast<__int128>(b);
        auto r = static_cast<Int>(p % modulus_);
        return r < 0 ? r + modulus_ : r;
    }
    Int pow(Int base, std::uint64_t e) const noexcept;

    /// ell-adic valuation of a residue; zero has valuation `level`.
    int valuation(Int x) const noexcept;
    bool is_unit(Int x) const noexcept { return reduce(x) % ell_ != 0; }
    Int inverse(Int x) const;

    /// Divides a representative exactly by ell^k; the caller guarantees divisibility.
    Int exact_div(Int x, int k) const { return reduce(x) / pow_ell(k); }

    /// Multiplicative order of a unit.
    Int unit_order(Int x) const;
    /// Generators of the unit group (one primitive root for odd ell; -1 and 5 for ell = 2).
    std::vector<Int> unit_generators() const;

    bool operator==(const ResidueRing&) const = default;

private:
    Int ell_;
    int level_;
    Int modulus_;
};

/// A single element of a ResidueRing, kept reduced.
class Residue {
public:
    Residue(Int value, ResidueRing ring) : ring_(ring), value_(ring.reduce(value)) {}

    Int value() const noexcept { return value_; }
    const ResidueRing& ring() const noexcept { return ring_; }

    int valuation() const noexcept { return ring_.valuation(value_); }
    bool is_unit() const noexcept { return ring_.is_unit(value_); }
    Residue inverse() const { return {ring_.inverse(value_), ring_}; }

    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend Residue operator*(const Residue& a, const Residue& b);
    Residue operator-() const { return {ring_.neg(value_), ring_}; }

    bool operator==(const Residue&) const = default;

private:
    ResidueRing ring_;
    Int value_;
};

inline int valuation(const Residue& x) noexcept { return x.valuation(); }

/// A dense matrix over a ResidueRing. Not necessarily square.
class MatrixMod {
public:
    MatrixMod(ResidueRing ring, Mat entries);

    static MatrixMod identity(ResidueRing ring, Index n);
    static MatrixMod zero(ResidueRing ring, Index rows, Index cols);
    static MatrixMod diagonal(ResidueRing ring, std::span<const Int> diag);
    /// Builds from nested row lists.
    static MatrixMod from_rows(ResidueRing ring, const std::vector<std::vector<Int>>& rows);

    const ResidueRing& ring() const noexcept { return ring_; }
    const Mat& entries() const noexcept { return m_; }
    Index rows() const noexcept { return m_.rows(); }
    Index cols() const noexcept { return m_.cols(); }
    Index dim() const noexcept { return m_.rows(); }
    bool is_square() const noexcept { return m_.rows() == m_.cols(); }
    Int operator()(Index i, Index j) const { return m_(i, j); }

    MatrixMod transpose() const { return {ring_, m_.transpose()}; }
    MatrixMod scaled(Int s) const;
    /// Reduction to a coarser level of the same prime.
    MatrixMod reduced(const ResidueRing& coarser) const;
    Vec apply(const Vec& v) const;

    Residue det() const;
    bool is_invertible() const { return det().is_unit(); }

    friend MatrixMod operator*(const MatrixMod& a, const MatrixMod& b);
    friend MatrixMod operator+(const MatrixMod& a, const MatrixMod& b);
    friend MatrixMod operator-(const MatrixMod& a, const MatrixMod& b);
    bool operator==(const MatrixMod& o) const { return ring_ == o.ring_ && m_ == o.m_; }

    /// Row-major entries, the canonical ordering key for sets of matrices.
    std::vector<Int> flat() const;

private:
    ResidueRing ring_;
    Mat m_;
};

Residue determinant(const MatrixMod& m);
MatrixMod mat_invert(const MatrixMod& m);
MatrixMod kron(const MatrixMod& a, const MatrixMod& b);

/// Column vector arithmetic over a ring.
Vec reduce(const ResidueRing& ring, Vec v);
Vec scale(const ResidueRing& ring, const Vec& v, Int s);
Vec add(const ResidueRing& ring, const Vec& a, const Vec& b);
/// Minimum coordinate valuation; level for the zero vector.
int vector_valuation(const ResidueRing& ring, const Vec& v);

/// U * M * V = D with U, V invertible and D diagonal of pure powers of ell
/// (or zero) in non-decreasing valuation order.
struct SmithForm {
    MatrixMod U;
    MatrixMod D;
    MatrixMod V;
    /// Valuations of D's diagonal; `level` marks a zero entry. Length min(rows, cols).
    std::vector<int> valuations;
};

SmithForm smith_normal_form(const MatrixMod& m);

/// Solution set {particular + k : k in <kernel>} of A x = b.
struct AffineSolution {
    Vec particular;
    std::vector<Vec> kernel_generators;
};

std::optional<AffineSolution> solve_linear(const MatrixMod& a, const Vec& b);

} // namespace galtor
