#pragma once

// Finite Galois-image model: a Galois image is an explicit subgroup G of
// GSp_{2g}(Z/ell^n), the field K(H) corresponds to the pointwise fixer of H,
// and the cyclotomic character is the multiplier lambda.

#include "galtor/modring.hpp"
#include "galtor/symplectic.hpp"
#include "galtor/torsion.hpp"

#include <boost/rational.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace galtor {

using Rational = boost::rational<Int>;

inline constexpr Int default_cap = 10'000'000;

struct FlatHash {
    std::size_t operator()(const std::vector<Int>& v) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// A finite subgroup of GSp(space) given by generators, optionally with its
/// full element list. Copies share the materialized elements.
class MatrixGroup {
public:
    /// Checks every generator against the multiplier test. `order` may be
    /// supplied for groups that are too large to materialize.
    MatrixGroup(SymplecticSpace space, std::vector<MatrixMod> generators, std::optional<Int> order = std::nullopt);

    /// A materialized group from an element list already known to be closed.
    static MatrixGroup from_elements(SymplecticSpace space, std::vector<MatrixMod> elements);

    const SymplecticSpace& space() const noexcept { return space_; }
    const ResidueRing& ring() const noexcept { return space_.ring(); }
    const std::vector<MatrixMod>& generators() const noexcept { return generators_; }

    bool materialized() const noexcept { return static_cast<bool>(elements_); }
    /// Elements in closure order; throws when not materialized.
    const std::vector<MatrixMod>& elements() const;
    bool contains(const MatrixMod& m) const;

    /// |G|; throws when neither materialized nor supplied.
    Int order() const;

private:
    struct Elements {
        std::vector<MatrixMod> list;
        std::unordered_map<std::vector<Int>, std::size_t, FlatHash> index;
    };

    SymplecticSpace space_;
    std::vector<MatrixMod> generators_;
    std::shared_ptr<const Elements> elements_;
    std::optional<Int> order_;

    friend MatrixGroup close(const SymplecticSpace&, std::vector<MatrixMod>, Int);
};

/// Breadth-first closure; throws CapExceeded past `cap` elements.
MatrixGroup close(const SymplecticSpace& space, std::vector<MatrixMod> generators, Int cap = default_cap);

/// Generators of GL_2(Z/ell^n): two elementary matrices and diag(u, 1) for unit generators u.
std::vector<MatrixMod> gl2_generators(const ResidueRing& ring);
/// |GL_2(Z/ell^n)| = ell^{4(n-1)} (ell^2 - 1)(ell^2 - ell).
Int gl2_order(const ResidueRing& ring);
/// GL_2(Z/ell^n) = GSp_2, materialized when its order is at most `cap`.
MatrixGroup general_linear_group(const ResidueRing& ring, Int cap = default_cap);

/// Pointwise fixer of H in a materialized G.
MatrixGroup stabilizer(const MatrixGroup& g, const TorsionSubgroup& h);

/// Size of the G-orbit of the tuple of Smith generators of H.
Int orbit_size(const MatrixGroup& g, const TorsionSubgroup& h);

/// [K(H):K] = [G : stabilizer], computed as an orbit size.
Int degree_KH(const MatrixGroup& g, const TorsionSubgroup& h);

/// lambda(G) mod ell^m as a sorted list of residues; {1} for m = 0.
std::vector<Int> multiplier_image(const MatrixGroup& g, int m);

/// [K(mu_{ell^m}):K] = |lambda_m(G)|.
Int cyclo_degree(const MatrixGroup& g, int m);

/// [K(H) cap K(mu_{ell^m}):K] = |lambda_m(G)| / |lambda_m(T)|, T the stabilizer.
Int cyclo_intersection_degree(const MatrixGroup& g, const TorsionSubgroup& h, int m);

/// Intersection degree at full level over the cyclotomic degree at level m_1(H).
Rational mu_s_ratio(const MatrixGroup& g, const TorsionSubgroup& h);

/// Smallest n in [0, cyclo_degrees.size()) with
/// deg_n / C <= intersection <= C deg_n, where deg_n = cyclo_degrees[n].
std::optional<int> mu_w_witness(Int intersection, const std::vector<Int>& cyclo_degrees, const Rational& c);
std::optional<int> mu_w_witness(const MatrixGroup& g, const TorsionSubgroup& h, const Rational& c);

/// One level of a congruence filtration: the pointwise fixer of `vectors`,
/// imposed modulo ell^min(n, cutoff).
struct FixerCondition {
    std::vector<Vec> vectors;
    int cutoff;
};

/// G(n; n_1, ..., n_t): elements of G lying in the i-th fixer modulo ell^min(n, n_i).
MatrixGroup filtered_subgroup(const MatrixGroup& full, const std::vector<FixerCondition>& chain);

/// |pi(G)| for the reduction pi to a lower level.
Int reduced_order(const MatrixGroup& g, int level);

struct Scenario {
    std::string name;
    MatrixGroup group;
    TorsionSubgroup subgroup;
};

/// Diagonal similitudes of the standard form acting on (Z/ell^n)^{2g}; H = <(1, ..., 1)>.
Scenario scenario_cm(int g, Int ell, int level, Int cap = default_cap);

/// {diag(x, x) : x in GL_2} for the form psi (+) psi; H = <(1, 0, 0, 1)>.
Scenario scenario_selfproduct(Int ell, int level, Int cap = default_cap);

/// Degree invariants of one (scenario, ell) pair.
struct DegreeReport {
    std::string scenario;
    Int ell = 0;
    int level = 0;
    int m1 = 0;
    Int deg_KH = 0;
    Int deg_cyclo_intersection = 0;
    Int deg_cyclo_at_m1 = 0;
    Rational ratio{0};
    std::optional<int> mu_w_witness_n;

    // present only for the tensor-cube scenario
    std::optional<Int> stabilizer_size;
    std::optional<std::vector<std::vector<Int>>> stabilizer_elements;
    std::optional<Int> image_order;

    bool operator==(const DegreeReport&) const = default;
};

DegreeReport degree_report(const Scenario& s, const Rational& c = Rational(1));

} // namespace galtor
