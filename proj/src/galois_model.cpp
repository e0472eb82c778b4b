#include "galtor/galois_model.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace galtor {

MatrixGroup::MatrixGroup(SymplecticSpace space, std::vector<MatrixMod> generators, std::optional<Int> order)
    : space_(std::move(space)), generators_(std::move(generators)), order_(order)
{
    for (const auto& m : generators_) {
        if (!(m.ring() == space_.ring()))
            throw RingMismatch("generator over a different ring than the space");
        (void)multiplier(m, space_);
    }
}

MatrixGroup MatrixGroup::from_elements(SymplecticSpace space, std::vector<MatrixMod> elements)
{
    auto store = std::make_shared<Elements>();
    for (std::size_t i = 0; i < elements.size(); ++i)
        store->index.emplace(elements[i].flat(), i);
    store->list = elements;
    MatrixGroup g(std::move(space), std::move(elements));
    g.order_ = static_cast<Int>(store->list.size());
    g.elements_ = std::move(store);
    return g;
}

const std::vector<MatrixMod>& MatrixGroup::elements() const
{
    if (!elements_)
        throw Error("matrix group is not materialized");
    return elements_->list;
}

bool MatrixGroup::contains(const MatrixMod& m) const
{
    if (!elements_)
        throw Error("matrix group is not materialized");
    return elements_->index.contains(m.flat());
}

Int MatrixGroup::order() const
{
    if (elements_)
        return static_cast<Int>(elements_->list.size());
    if (order_)
        return *order_;
    throw Error("group order unknown: not materialized");
}

MatrixGroup close(const SymplecticSpace& space, std::vector<MatrixMod> generators, Int cap)
{
    MatrixGroup g(space, std::move(generators));
    auto store = std::make_shared<MatrixGroup::Elements>();
    const auto id = MatrixMod::identity(space.ring(), space.dim());
    store->index.emplace(id.flat(), 0);
    store->list.push_back(id);
    // right multiplication by generators reaches every element of a finite group
    for (std::size_t head = 0; head < store->list.size(); ++head) {
        for (const auto& gen : g.generators_) {
            MatrixMod next = store->list[head] * gen;
            auto key = next.flat();
            if (store->index.contains(key))
                continue;
            if (static_cast<Int>(store->list.size()) >= cap)
                throw CapExceeded("closure exceeds cap of " + std::to_string(cap) + " elements");
            store->index.emplace(std::move(key), store->list.size());
            store->list.push_back(std::move(next));
        }
    }
    g.order_ = static_cast<Int>(store->list.size());
    g.elements_ = std::move(store);
    return g;
}

std::vector<MatrixMod> gl2_generators(const ResidueRing& ring)
{
    std::vector<MatrixMod> gens{MatrixMod::from_rows(ring, {{1, 1}, {0, 1}}),
                                MatrixMod::from_rows(ring, {{1, 0}, {1, 1}})};
    for (Int u : ring.unit_generators())
        gens.push_back(MatrixMod::from_rows(ring, {{u, 0}, {0, 1}}));
    return gens;
}

Int gl2_order(const ResidueRing& ring)
{
    const Int l = ring.ell();
    const Int lift = ring.pow_ell(ring.level() - 1);
    return lift * lift * lift * lift * (l * l - 1) * (l * l - l);
}

MatrixGroup general_linear_group(const ResidueRing& ring, Int cap)
{
    const auto space = standard_form(1, ring);
    const Int order = gl2_order(ring);
    if (order <= cap)
        return close(space, gl2_generators(ring), cap);
    return MatrixGroup(space, gl2_generators(ring), order);
}

MatrixGroup stabilizer(const MatrixGroup& g, const TorsionSubgroup& h)
{
    const auto& basis = h.basis();
    std::vector<MatrixMod> fixers;
    for (const auto& m : g.elements()) {
        bool fixes = true;
        for (const auto& e : basis)
            if (m.apply(e) != e) {
                fixes = false;
                break;
            }
        if (fixes)
            fixers.push_back(m);
    }
    return MatrixGroup::from_elements(g.space(), std::move(fixers));
}

namespace {

std::vector<Int> tuple_key(const std::vector<Vec>& tuple)
{
    std::vector<Int> key;
    for (const auto& v : tuple)
        key.insert(key.end(), v.data(), v.data() + v.size());
    return key;
}

std::vector<Vec> act(const MatrixMod& m, const std::vector<Vec>& tuple)
{
    std::vector<Vec> out;
    out.reserve(tuple.size());
    for (const auto& v : tuple)
        out.push_back(m.apply(v));
    return out;
}

} // namespace

Int orbit_size(const MatrixGroup& g, const TorsionSubgroup& h)
{
    const auto& start = h.basis();
    if (start.empty())
        return 1;
    std::unordered_set<std::vector<Int>, FlatHash> seen;
    if (g.materialized()) {
        for (const auto& m : g.elements())
            seen.insert(tuple_key(act(m, start)));
        return static_cast<Int>(seen.size());
    }
    std::deque<std::vector<Vec>> queue{start};
    seen.insert(tuple_key(start));
    while (!queue.empty()) {
        auto cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : g.generators()) {
            auto next = act(gen, cur);
            if (seen.insert(tuple_key(next)).second)
                queue.push_back(std::move(next));
        }
    }
    return static_cast<Int>(seen.size());
}

Int degree_KH(const MatrixGroup& g, const TorsionSubgroup& h) { return orbit_size(g, h); }

std::vector<Int> multiplier_image(const MatrixGroup& g, int m)
{
    if (m < 0 || m > g.ring().level())
        throw Error("multiplier level outside [0, level]");
    if (m == 0)
        return {1};
    const auto rm = g.ring().at_level(m);
    // lambda is a homomorphism, so its image is generated by the generators' multipliers
    std::set<Int> gens;
    for (const auto& x : g.generators())
        gens.insert(rm.reduce(multiplier(x, g.space()).value()));
    std::set<Int> image{1};
    std::deque<Int> queue{1};
    while (!queue.empty()) {
        const Int cur = queue.front();
        queue.pop_front();
        for (Int s : gens) {
            const Int next = rm.mul(cur, s);
            if (image.insert(next).second)
                queue.push_back(next);
        }
    }
    return {image.begin(), image.end()};
}

Int cyclo_degree(const MatrixGroup& g, int m) { return static_cast<Int>(multiplier_image(g, m).size()); }

Int cyclo_intersection_degree(const MatrixGroup& g, const TorsionSubgroup& h, int m)
{
    const auto t = stabilizer(g, h);
    return cyclo_degree(g, m) / cyclo_degree(t, m);
}

Rational mu_s_ratio(const MatrixGroup& g, const TorsionSubgroup& h)
{
    const int k = m1(h, g.space());
    return Rational(cyclo_intersection_degree(g, h, g.ring().level()), cyclo_degree(g, k));
}

std::optional<int> mu_w_witness(Int intersection, const std::vector<Int>& cyclo_degrees, const Rational& c)
{
    if (c < Rational(1))
        throw Error("mu_w constant must be at least 1");
    const Rational x(intersection);
    for (std::size_t n = 0; n < cyclo_degrees.size(); ++n) {
        const Rational d(cyclo_degrees[n]);
        if (d / c <= x && x <= c * d)
            return static_cast<int>(n);
    }
    return std::nullopt;
}

std::optional<int> mu_w_witness(const MatrixGroup& g, const TorsionSubgroup& h, const Rational& c)
{
    const int level = g.ring().level();
    std::vector<Int> degs;
    for (int n = 0; n <= level; ++n)
        degs.push_back(cyclo_degree(g, n));
    return mu_w_witness(cyclo_intersection_degree(g, h, level), degs, c);
}

MatrixGroup filtered_subgroup(const MatrixGroup& full, const std::vector<FixerCondition>& chain)
{
    const auto& R = full.ring();
    const Index dim = full.space().dim();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i].cutoff < 1)
            throw ChainNotIncreasing("cutoffs must be positive");
        if (i == 0)
            continue;
        if (chain[i].cutoff <= chain[i - 1].cutoff)
            throw ChainNotIncreasing("cutoffs must be strictly increasing");
        // G_{i-1} is inside G_i when the vectors fixed by G_i lie in the span of those fixed by G_{i-1}
        const auto span = subgroup_from_generators(chain[i - 1].vectors, R, dim);
        for (const auto& v : chain[i].vectors)
            if (!span.contains(reduce(R, v)))
                throw ChainNotIncreasing("fixer groups do not form an increasing chain");
    }
    std::vector<MatrixMod> kept;
    for (const auto& m : full.elements()) {
        bool ok = true;
        for (const auto& cond : chain) {
            const auto rc = R.at_level(std::min(R.level(), cond.cutoff));
            const MatrixMod mc = m.reduced(rc);
            for (const auto& v : cond.vectors) {
                const Vec vc = reduce(rc, v);
                if (mc.apply(vc) != vc) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                break;
        }
        if (ok)
            kept.push_back(m);
    }
    return MatrixGroup::from_elements(full.space(), std::move(kept));
}

Int reduced_order(const MatrixGroup& g, int level)
{
    const auto rc = g.ring().at_level(level);
    std::unordered_set<std::vector<Int>, FlatHash> seen;
    for (const auto& m : g.elements())
        seen.insert(m.reduced(rc).flat());
    return static_cast<Int>(seen.size());
}

Scenario scenario_cm(int g, Int ell, int level, Int cap)
{
    if (ell == 2)
        throw Error("the CM scenario needs an odd prime");
    const ResidueRing ring(ell, level);
    auto space = standard_form(g, ring);
    const Index d = space.dim();
    std::vector<MatrixMod> gens;
    for (Int r : ring.unit_generators()) {
        const Int rinv = ring.inverse(r);
        for (Index i = 0; i < g; ++i) {
            std::vector<Int> diag(static_cast<std::size_t>(d), 1);
            diag[static_cast<std::size_t>(i)] = r;
            diag[static_cast<std::size_t>(d - 1 - i)] = rinv;
            gens.push_back(MatrixMod::diagonal(ring, diag));
        }
        std::vector<Int> diag(static_cast<std::size_t>(d), 1);
        for (Index i = g; i < d; ++i)
            diag[static_cast<std::size_t>(i)] = r;
        gens.push_back(MatrixMod::diagonal(ring, diag));
    }
    auto group = close(space, std::move(gens), cap);
    const std::vector<Vec> h{Vec::Ones(d)};
    return {"cm", std::move(group), subgroup_from_generators(h, ring, d)};
}

Scenario scenario_selfproduct(Int ell, int level, Int cap)
{
    if (ell == 2)
        throw Error("the self-product scenario needs an odd prime");
    const ResidueRing ring(ell, level);
    const auto psi = standard_form(1, ring);
    auto space = orthogonal_sum(psi, psi);
    std::vector<MatrixMod> gens;
    for (const auto& x : gl2_generators(ring)) {
        Mat m = Mat::Zero(4, 4);
        m.topLeftCorner(2, 2) = x.entries();
        m.bottomRightCorner(2, 2) = x.entries();
        gens.emplace_back(ring, std::move(m));
    }
    auto group = close(space, std::move(gens), cap);
    Vec pq(4);
    pq << 1, 0, 0, 1;
    const std::vector<Vec> h{pq};
    return {"selfproduct", std::move(group), subgroup_from_generators(h, ring, 4)};
}

DegreeReport degree_report(const Scenario& s, const Rational& c)
{
    const auto& g = s.group;
    const auto& h = s.subgroup;
    const int level = g.ring().level();
    DegreeReport r;
    r.scenario = s.name;
    r.ell = g.ring().ell();
    r.level = level;
    r.m1 = m1(h, g.space());
    r.deg_KH = degree_KH(g, h);
    r.deg_cyclo_intersection = cyclo_intersection_degree(g, h, level);
    r.deg_cyclo_at_m1 = cyclo_degree(g, r.m1);
    r.ratio = Rational(r.deg_cyclo_intersection, r.deg_cyclo_at_m1);
    std::vector<Int> degs;
    for (int n = 0; n <= level; ++n)
        degs.push_back(cyclo_degree(g, n));
    r.mu_w_witness_n = mu_w_witness(r.deg_cyclo_intersection, degs, c);
    return r;
}

} // namespace galtor
