#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linkforms/fraction.hpp"
#include "linkforms/laurent.hpp"
#include "linkforms/ring.hpp"

namespace lf {

/// Dense row-major matrix over a ring-like entry type (Laurent polynomials
/// or fractions). 0x0 matrices are legal everywhere: det = 1, SNF empty;
/// the unknot's empty Seifert matrix flows through every pipeline.
template <class E>
class mat {
public:
    mat(std::size_t rows, std::size_t cols, E zero)
        : rows_(rows), cols_(cols), zero_(std::move(zero)),
          entries_(rows * cols, zero_)
    {
    }

    static mat identity(std::size_t n, const E& zero, const E& one)
    {
        mat out(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) out.at(i, i) = one;
        return out;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const E& zero_entry() const { return zero_; }

    E& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const E& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    mat transpose() const
    {
        mat out(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    /// Entrywise involution t -> t^-1 combined with transposition.
    mat conj_transpose() const
    {
        mat out(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).conj();
        return out;
    }

    std::vector<E> column(std::size_t j) const
    {
        std::vector<E> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

    friend mat operator*(const mat& a, const mat& b)
    {
        if (a.cols_ != b.rows_) throw error("matrix shape mismatch in product");
        mat out(a.rows_, b.cols_, a.zero_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == a.zero_) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j) == a.zero_) continue;
                    out.at(i, j) = out.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return out;
    }

    friend mat operator+(const mat& a, const mat& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw error("matrix shape mismatch in sum");
        mat out = a;
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            out.entries_[i] = out.entries_[i] + b.entries_[i];
        return out;
    }

    friend bool operator==(const mat& a, const mat& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            if (!(a.entries_[i] == b.entries_[i])) return false;
        return true;
    }
    friend bool operator!=(const mat& a, const mat& b) { return !(a == b); }

private:
    std::size_t rows_;
    std::size_t cols_;
    E zero_;
    std::vector<E> entries_;
};

template <class R>
using poly_mat = mat<laurent_poly<R>>;

template <class R>
using frac_mat = mat<fraction<R>>;

template <class R>
poly_mat<R> poly_identity(const R& ring, std::size_t n)
{
    using poly = laurent_poly<R>;
    return poly_mat<R>::identity(n, poly::zero(ring), poly::from_int(ring, 1));
}

template <class E>
mat<E> block_diag(const mat<E>& a, const mat<E>& b)
{
    mat<E> out(a.rows() + b.rows(), a.cols() + b.cols(), a.zero_entry());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

template <class From, class To>
poly_mat<To> substitute(const poly_mat<From>& a, const winding_morphism<From, To>& m)
{
    poly_mat<To> out(a.rows(), a.cols(), laurent_poly<To>::zero(m.target));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.at(i, j) = substitute(a.at(i, j), m);
    return out;
}

namespace detail {

/// Partition of row/column indices of a square matrix into connected
/// components of the symmetric nonzero pattern. Determinants factor over the
/// components (the permutation pairing them up is symmetric, so no sign).
template <class E>
std::vector<std::vector<std::size_t>> symmetric_components(const mat<E>& a)
{
    const std::size_t n = a.rows();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(a.at(i, j) == a.zero_entry()) || !(a.at(j, i) == a.zero_entry())) {
                auto ri = find(i), rj = find(j);
                if (ri != rj) parent[ri] = rj;
            }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::int64_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::int64_t>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return comps;
}

/// Fraction-free Bareiss elimination on a dense square Laurent matrix.
template <class R>
laurent_poly<R> bareiss_det(poly_mat<R> a)
{
    using poly = laurent_poly<R>;
    const R& ring = a.zero_entry().ring();
    const std::size_t n = a.rows();
    if (n == 0) return poly::from_int(ring, 1);
    poly prev = poly::from_int(ring, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // pivot: minimal degree span, then smallest coefficient size, then
        // lowest row index (deterministic, controls entry growth)
        std::size_t best = n;
        for (std::size_t i = k; i < n; ++i) {
            const poly& cand = a.at(i, k);
            if (cand.is_zero()) continue;
            if (best == n) { best = i; continue; }
            const poly& cur = a.at(best, k);
            auto key = [&](const poly& p) {
                bigint size = 0;
                for (const auto& [e, c] : p.terms()) size += ring.size_measure(c);
                return std::pair<std::int64_t, bigint>(p.span(), size);
            };
            if (key(cand) < key(cur)) best = i;
        }
        if (best == n) return poly::zero(ring);
        if (best != k) {
            a.swap_rows(best, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                poly num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num.is_zero() ? num : exact_div(num, prev);
            }
            a.at(i, k) = poly::zero(ring);
        }
        prev = a.at(k, k);
        if (prev.is_zero()) return poly::zero(ring);
    }
    poly d = a.at(n - 1, n - 1);
    return negate ? -d : d;
}

}  // namespace detail

/// Exact determinant. Splits along the symmetric block structure first, so
/// block-diagonal inputs cost the sum of their blocks; det is multiplicative
/// under block-diagonal composition.
template <class R>
laurent_poly<R> det(const poly_mat<R>& a)
{
    using poly = laurent_poly<R>;
    if (!a.is_square()) throw error("determinant of a non-square matrix");
    const R& ring = a.zero_entry().ring();
    if (a.rows() == 0) return poly::from_int(ring, 1);
    auto comps = detail::symmetric_components(a);
    if (comps.size() == 1) return detail::bareiss_det(a);
    poly out = poly::from_int(ring, 1);
    for (const auto& comp : comps) {
        poly_mat<R> sub(comp.size(), comp.size(), a.zero_entry());
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (std::size_t j = 0; j < comp.size(); ++j)
                sub.at(i, j) = a.at(comp[i], comp[j]);
        out = out * detail::bareiss_det(sub);
        if (out.is_zero()) return out;
    }
    return out;
}

/// Exact inverse over the fraction field: A^-1 with A * A^-1 = I exactly.
/// Gauss-Jordan elimination on fraction entries.
template <class R>
frac_mat<R> inverse_over_fractions(const poly_mat<R>& a)
{
    using frac = fraction<R>;
    if (!a.is_square()) throw error("inverse of a non-square matrix");
    const R& ring = a.zero_entry().ring();
    const std::size_t n = a.rows();
    frac zero = frac::zero(ring);
    frac one = frac::one(ring);
    frac_mat<R> work(n, 2 * n, zero);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            work.at(i, j) = frac::from_poly(a.at(i, j));
        work.at(i, n + i) = one;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i)
            if (!work.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot == n)
            throw error("presentation matrix is singular; module is not torsion");
        work.swap_rows(pivot, k);
        frac inv_p = one / work.at(k, k);
        for (std::size_t j = k; j < 2 * n; ++j)
            work.at(k, j) = work.at(k, j) * inv_p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || work.at(i, k).is_zero()) continue;
            frac f = work.at(i, k);
            for (std::size_t j = k; j < 2 * n; ++j)
                work.at(i, j) = work.at(i, j) - f * work.at(k, j);
        }
    }
    frac_mat<R> out(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = work.at(i, n + j);
    return out;
}

/// conj(A)^T == A, entrywise and exactly (no unit slack).
template <class R>
bool is_hermitian_matrix(const poly_mat<R>& a)
{
    if (!a.is_square()) throw error("hermitian test on a non-square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (a.at(i, j) != a.at(j, i).conj()) return false;
    return true;
}

/// Index of the first cell witnessing a failed symmetry, for error messages.
template <class R>
std::pair<std::size_t, std::size_t> hermitian_defect(const poly_mat<R>& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (a.at(i, j) != a.at(j, i).conj()) return {i, j};
    return {a.rows(), a.cols()};
}

/// conj(P)^T * A * P; preserves hermitian-ness.
template <class R>
poly_mat<R> congruence(const poly_mat<R>& a, const poly_mat<R>& p)
{
    if (!a.is_square() || a.cols() != p.rows())
        throw error("matrix shape mismatch in congruence");
    return p.conj_transpose() * a * p;
}

template <class E>
std::string to_string(const mat<E>& a)
{
    std::string out = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(a.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace lf
