#pragma once

// The tensor-cube representation rho: GL_2^3 -> GSp_8, (a, b, c) -> a (x) b (x) c,
// over F_ell, with basis e_111, e_112, e_121, e_122, e_211, e_212, e_221, e_222.

#include "galtor/galois_model.hpp"

#include <span>
#include <string>
#include <vector>

namespace galtor {

struct TensorTriple {
    MatrixMod a;
    MatrixMod b;
    MatrixMod c;
};

/// Index of e_{ijk} (i, j, k in {1, 2}) in the lexicographic basis.
constexpr Index tensor_index(int i, int j, int k) { return 4 * (i - 1) + 2 * (j - 1) + (k - 1); }

/// All of GL_2(F_ell), in row-major lexicographic order of entries.
std::vector<MatrixMod> gl2_elements(const ResidueRing& field);
/// Elements of GL_2(F_ell) whose first nonzero entry (row-major) is 1.
std::vector<MatrixMod> canonical_gl2_elements(const ResidueRing& field);
bool is_canonical(const MatrixMod& m);

/// Rescales a and b to canonical form, absorbing the scalars into c; rho is unchanged.
TensorTriple canonicalize(const TensorTriple& t);

MatrixMod rho(const MatrixMod& a, const MatrixMod& b, const MatrixMod& c);
inline MatrixMod rho(const TensorTriple& t) { return rho(t.a, t.b, t.c); }

/// The Lagrangian subspace spanned by e_111, e_122, e_212, e_221 in F_ell^8.
TorsionSubgroup lagrangian_H(Int ell);

/// Necessary condition for lying in the image of rho: the four 4x4 quadrants
/// are pairwise linearly dependent, and so are the four 2x2 sub-blocks of each quadrant.
bool block_dependence(const MatrixMod& m);

/// diag(1, -1, -1, 1, -1, 1, 1, -1) = rho(d, d, d), d = diag(1, -1).
MatrixMod sign_involution(Int ell);

struct SearchOptions {
    int threads = 1;
};

/// Every rho(a, b, c) fixing e_111, e_122, e_212, e_221, sorted by row-major entries.
/// For each canonical pair (a, b) the fixing conditions are linear in c and are solved directly.
std::vector<MatrixMod> pointwise_stabilizer_in_image(Int ell, SearchOptions opts = {});

/// Same set by scanning every canonical triple.
std::vector<MatrixMod> pointwise_stabilizer_brute_force(Int ell, SearchOptions opts = {});

/// |M(F_ell)| = (|GL_2| / (ell - 1))^2 |GL_2| from the canonical-triple enumeration.
Int image_order(Int ell, Int cap = default_cap);
/// |M(F_ell)| by hashing rho over all of GL_2^3.
Int image_order_dedup(Int ell, Int cap = default_cap);

/// The image as a matrix group over F_ell with form psi (x) psi (x) psi. Materialized when |M| <= cap.
MatrixGroup image_group(Int ell, Int cap = default_cap);

/// Exhaustive check of the kernel law: rho(a,b,c) = rho(a',b',c') iff
/// (a',b',c') = (xa, yb, zc) with xyz = 1. Returns a description of the first violation.
std::optional<std::string> kernel_law_violation(Int ell);

struct MumfordVerification {
    std::vector<DegreeReport> reports;
    /// Human-readable list of violated expectations; empty on success.
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Runs the tensor-cube counterexample for each ell: m_1 of the Lagrangian is 0,
/// its pointwise stabilizer in the image is {1, sign involution} (just {1} for ell = 2),
/// and the intersection degree is (ell - 1) / |lambda(T)|.
MumfordVerification verify_mu_s_failure(std::span<const Int> ells, SearchOptions opts = {},
                                        const Rational& c = Rational(1));

} // namespace galtor
