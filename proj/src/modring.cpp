#include "galtor/modring.hpp"

#include <string>
#include <utility>

namespace galtor {

bool is_prime(Int n)
{
    if (n < 2)
        return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

ResidueRing::ResidueRing(Int ell, int level) : ell_(ell), level_(level), modulus_(1)
{
    if (!is_prime(ell))
        throw NotPrime(std::to_string(ell) + " is not prime");
    if (level < 1)
        throw Error("ring level must be at least 1, got " + std::to_string(level));
    constexpr Int limit = Int{1} << 62;
    for (int i = 0; i < level; ++i) {
        if (modulus_ > limit / ell)
            throw Error("modulus " + std::to_string(ell) + "^" + std::to_string(level) + " exceeds 62 bits");
        modulus_ *= ell;
    }
}

Int ResidueRing::pow_ell(int k) const
{
    if (k < 0 || k > level_)
        throw Error("exponent " + std::to_string(k) + " outside [0, level]");
    Int r = 1;
    for (int i = 0; i < k; ++i)
        r *= ell_;
    return r;
}

Int ResidueRing::pow(Int base, std::uint64_t e) const noexcept
{
    Int result = reduce(1);
    Int b = reduce(base);
    while (e > 0) {
        if (e & 1U)
            result = mul(result, b);
        b = mul(b, b);
        e >>= 1U;
    }
    return result;
}

int ResidueRing::valuation(Int x) const noexcept
{
    x = reduce(x);
    if (x == 0)
        return level_;
    int v = 0;
    while (x % ell_ == 0) {
        x /= ell_;
        ++v;
    }
    return v;
}

Int ResidueRing::inverse(Int x) const
{
    x = reduce(x);
    if (x % ell_ == 0)
        throw NotInvertible(std::to_string(x) + " is not a unit mod " + std::to_string(modulus_));
    // extended Euclid on (x, modulus)
    Int old_r = x, r = modulus_;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return reduce(old_s);
}

namespace {

std::vector<Int> prime_factors(Int n)
{
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

} // namespace

Int ResidueRing::unit_order(Int x) const
{
    if (!is_unit(x))
        throw NotInvertible("unit_order of a non-unit");
    Int order = pow_ell(level_ - 1) * (ell_ - 1);
    for (Int p : prime_factors(order)) {
        while (order % p == 0 && pow(x, static_cast<std::uint64_t>(order / p)) == reduce(1))
            order /= p;
    }
    return order;
}

std::vector<Int> ResidueRing::unit_generators() const
{
    if (ell_ == 2) {
        if (level_ == 1)
            return {};
        if (level_ == 2)
            return {reduce(-1)};
        return {reduce(-1), 5};
    }
    const Int phi = pow_ell(level_ - 1) * (ell_ - 1);
    for (Int g = 2; g < modulus_; ++g)
        if (is_unit(g) && unit_order(g) == phi)
            return {g};
    return {};
}

Residue operator+(const Residue& a, const Residue& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("residue addition across rings");
    return {a.ring_.add(a.value_, b.value_), a.ring_};
}

Residue operator-(const Residue& a, const Residue& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("residue subtraction across rings");
    return {a.ring_.sub(a.value_, b.value_), a.ring_};
}

Residue operator*(const Residue& a, const Residue& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("residue product across rings");
    return {a.ring_.mul(a.value_, b.value_), a.ring_};
}

MatrixMod::MatrixMod(ResidueRing ring, Mat entries) : ring_(ring), m_(std::move(entries))
{
    m_ = m_.unaryExpr([&](Int x) { return ring_.reduce(x); });
}

MatrixMod MatrixMod::identity(ResidueRing ring, Index n) { return {ring, Mat::Identity(n, n)}; }

MatrixMod MatrixMod::zero(ResidueRing ring, Index rows, Index cols) { return {ring, Mat::Zero(rows, cols)}; }

MatrixMod MatrixMod::diagonal(ResidueRing ring, std::span<const Int> diag)
{
    Mat m = Mat::Zero(static_cast<Index>(diag.size()), static_cast<Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(static_cast<Index>(i), static_cast<Index>(i)) = diag[i];
    return {ring, std::move(m)};
}

MatrixMod MatrixMod::from_rows(ResidueRing ring, const std::vector<std::vector<Int>>& rows)
{
    const auto r = static_cast<Index>(rows.size());
    const auto c = rows.empty() ? Index{0} : static_cast<Index>(rows.front().size());
    Mat m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw Error("ragged matrix rows");
        for (Index j = 0; j < c; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return {ring, std::move(m)};
}

MatrixMod MatrixMod::scaled(Int s) const
{
    const Int f = ring_.reduce(s);
    return {ring_, m_.unaryExpr([&](Int x) { return ring_.mul(x, f); })};
}

MatrixMod MatrixMod::reduced(const ResidueRing& coarser) const
{
    if (coarser.ell() != ring_.ell() || coarser.level() > ring_.level())
        throw RingMismatch("reduction must go to a lower level of the same prime");
    return {coarser, m_};
}

Vec MatrixMod::apply(const Vec& v) const
{
    if (v.size() != cols())
        throw Error("dimension mismatch in matrix-vector product");
    Vec out(rows());
    for (Index i = 0; i < rows(); ++i) {
        Int acc = 0;
        for (Index j = 0; j < cols(); ++j)
            acc = ring_.add(acc, ring_.mul(m_(i, j), ring_.reduce(v(j))));
        out(i) = acc;
    }
    return out;
}

MatrixMod operator*(const MatrixMod& a, const MatrixMod& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("matrix product across rings");
    if (a.cols() != b.rows())
        throw Error("dimension mismatch in matrix product");
    const auto& R = a.ring_;
    Mat out(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
            Int acc = 0;
            for (Index k = 0; k < a.cols(); ++k)
                acc = R.add(acc, R.mul(a.m_(i, k), b.m_(k, j)));
            out(i, j) = acc;
        }
    return {R, std::move(out)};
}

MatrixMod operator+(const MatrixMod& a, const MatrixMod& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("matrix sum across rings");
    return {a.ring_, a.m_ + b.m_};
}

MatrixMod operator-(const MatrixMod& a, const MatrixMod& b)
{
    if (!(a.ring_ == b.ring_))
        throw RingMismatch("matrix difference across rings");
    return {a.ring_, a.m_ - b.m_};
}

std::vector<Int> MatrixMod::flat() const
{
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(m_.size()));
    for (Index i = 0; i < m_.rows(); ++i)
        for (Index j = 0; j < m_.cols(); ++j)
            out.push_back(m_(i, j));
    return out;
}

Residue MatrixMod::det() const { return determinant(*this); }

// Division-free determinant (Bird's algorithm), valid over any commutative ring.
Residue determinant(const MatrixMod& m)
{
    if (!m.is_square())
        throw Error("determinant of a non-square matrix");
    const auto& R = m.ring();
    const Index n = m.rows();
    if (n == 0)
        return {1, R};
    const Mat& a = m.entries();
    Mat x = a;
    for (Index step = 1; step < n; ++step) {
        Mat mu = Mat::Zero(n, n);
        Int trailing = 0;
        for (Index i = n - 1; i >= 0; --i) {
            mu(i, i) = R.neg(trailing);
            trailing = R.add(trailing, x(i, i));
            for (Index j = i + 1; j < n; ++j)
                mu(i, j) = x(i, j);
        }
        x = (MatrixMod(R, mu) * m).entries();
    }
    const Int d = x(0, 0);
    return {(n % 2 == 1) ? d : R.neg(d), R};
}

MatrixMod mat_invert(const MatrixMod& m)
{
    if (!m.is_square())
        throw NotInvertible("non-square matrix");
    const auto& R = m.ring();
    const Index n = m.rows();
    Mat a = m.entries();
    Mat inv = Mat::Identity(n, n);
    for (Index c = 0; c < n; ++c) {
        // Over a local ring an invertible matrix always has a unit pivot available.
        Index pivot = -1;
        for (Index r = c; r < n; ++r)
            if (R.is_unit(a(r, c))) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            throw NotInvertible("determinant is not a unit");
        a.row(c).swap(a.row(pivot));
        inv.row(c).swap(inv.row(pivot));
        const Int s = R.inverse(a(c, c));
        for (Index j = 0; j < n; ++j) {
            a(c, j) = R.mul(a(c, j), s);
            inv(c, j) = R.mul(inv(c, j), s);
        }
        for (Index r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0)
                continue;
            const Int f = a(r, c);
            for (Index j = 0; j < n; ++j) {
                a(r, j) = R.sub(a(r, j), R.mul(f, a(c, j)));
                inv(r, j) = R.sub(inv(r, j), R.mul(f, inv(c, j)));
            }
        }
    }
    return {R, std::move(inv)};
}

MatrixMod kron(const MatrixMod& a, const MatrixMod& b)
{
    if (!(a.ring() == b.ring()))
        throw RingMismatch("Kronecker product across rings");
    const auto& R = a.ring();
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = R.mul(a(i, j), b(k, l));
    return {R, std::move(out)};
}

Vec reduce(const ResidueRing& ring, Vec v)
{
    for (Index i = 0; i < v.size(); ++i)
        v(i) = ring.reduce(v(i));
    return v;
}

Vec scale(const ResidueRing& ring, const Vec& v, Int s)
{
    Vec out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out(i) = ring.mul(v(i), ring.reduce(s));
    return out;
}

Vec add(const ResidueRing& ring, const Vec& a, const Vec& b)
{
    Vec out(a.size());
    for (Index i = 0; i < a.size(); ++i)
        out(i) = ring.add(a(i), b(i));
    return out;
}

int vector_valuation(const ResidueRing& ring, const Vec& v)
{
    int best = ring.level();
    for (Index i = 0; i < v.size(); ++i)
        best = std::min(best, ring.valuation(v(i)));
    return best;
}

SmithForm smith_normal_form(const MatrixMod& m)
{
    const auto& R = m.ring();
    const Index rows = m.rows();
    const Index cols = m.cols();
    const Index k = std::min(rows, cols);
    Mat a = m.entries();
    Mat u = Mat::Identity(rows, rows);
    Mat v = Mat::Identity(cols, cols);
    std::vector<int> vals(static_cast<std::size_t>(k), R.level());

    for (Index t = 0; t < k; ++t) {
        // minimal valuation in the trailing block, first hit in row-major order
        int best = R.level();
        Index pi = -1, pj = -1;
        for (Index i = t; i < rows && best > 0; ++i)
            for (Index j = t; j < cols; ++j) {
                const int val = R.valuation(a(i, j));
                if (val < best) {
                    best = val;
                    pi = i;
                    pj = j;
                    if (best == 0)
                        break;
                }
            }
        if (pi < 0)
            break;
        a.row(t).swap(a.row(pi));
        u.row(t).swap(u.row(pi));
        a.col(t).swap(a.col(pj));
        v.col(t).swap(v.col(pj));

        const Int unit_part = a(t, t) / R.pow_ell(best);
        const Int s = R.inverse(unit_part);
        for (Index j = 0; j < cols; ++j)
            a(t, j) = R.mul(a(t, j), s);
        for (Index j = 0; j < rows; ++j)
            u(t, j) = R.mul(u(t, j), s);

        const Int pivot_pow = R.pow_ell(best);
        for (Index i = t + 1; i < rows; ++i) {
            if (a(i, t) == 0)
                continue;
            const Int q = a(i, t) / pivot_pow;
            for (Index j = 0; j < cols; ++j)
                a(i, j) = R.sub(a(i, j), R.mul(q, a(t, j)));
            for (Index j = 0; j < rows; ++j)
                u(i, j) = R.sub(u(i, j), R.mul(q, u(t, j)));
        }
        for (Index j = t + 1; j < cols; ++j) {
            if (a(t, j) == 0)
                continue;
            const Int q = a(t, j) / pivot_pow;
            for (Index i = 0; i < rows; ++i)
                a(i, j) = R.sub(a(i, j), R.mul(q, a(i, t)));
            for (Index i = 0; i < cols; ++i)
                v(i, j) = R.sub(v(i, j), R.mul(q, v(i, t)));
        }
        vals[static_cast<std::size_t>(t)] = best;
    }
    return {MatrixMod(R, std::move(u)), MatrixMod(R, std::move(a)), MatrixMod(R, std::move(v)), std::move(vals)};
}

std::optional<AffineSolution> solve_linear(const MatrixMod& a, const Vec& b)
{
    const auto& R = a.ring();
    if (b.size() != a.rows())
        throw Error("dimension mismatch in linear system");
    const auto snf = smith_normal_form(a);
    const Vec rhs = snf.U.apply(b);
    const Index k = static_cast<Index>(snf.valuations.size());
    Vec y = Vec::Zero(a.cols());
    std::vector<Vec> kernel;
    const Mat& vm = snf.V.entries();

    for (Index t = 0; t < a.rows(); ++t) {
        const int v = t < k ? snf.valuations[static_cast<std::size_t>(t)] : R.level();
        if (R.valuation(rhs(t)) < v)
            return std::nullopt;
        if (t < k && v < R.level())
            y(t) = R.exact_div(rhs(t), v);
    }
    for (Index t = 0; t < a.cols(); ++t) {
        const int v = t < k ? snf.valuations[static_cast<std::size_t>(t)] : 0;
        const bool free_column = t >= k || v == R.level();
        if (free_column)
            kernel.push_back(reduce(R, vm.col(t)));
        else if (v > 0)
            kernel.push_back(scale(R, vm.col(t), R.pow_ell(R.level() - v)));
    }
    return AffineSolution{snf.V.apply(y), std::move(kernel)};
}

} // namespace galtor
