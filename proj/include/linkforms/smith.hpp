#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "linkforms/matrix.hpp"

namespace lf {

namespace detail {

/// Division with remainder in K[t,t^-1], Euclidean with respect to span:
/// a = q*b + r with r = 0 or span(r) < span(b).
template <class R>
std::pair<laurent_poly<R>, laurent_poly<R>> laurent_divmod(const laurent_poly<R>& a,
                                                           const laurent_poly<R>& b)
{
    using poly = laurent_poly<R>;
    if (b.is_zero()) throw error("division by zero polynomial");
    if (a.is_zero()) return {a, a};
    std::int64_t sa = a.min_exp(), sb = b.min_exp();
    auto [q, r] = poly_divmod(a.shifted(-sa), b.shifted(-sb));
    return {q.shifted(sa - sb), r.shifted(sa)};
}

template <class R>
bool laurent_divides(const laurent_poly<R>& d, const laurent_poly<R>& a)
{
    if (a.is_zero()) return true;
    if (d.is_zero()) return false;
    return laurent_divmod(a, d).second.is_zero();
}

}  // namespace detail

template <class R>
struct smith_result {
    poly_mat<R> u;  ///< invertible, rows x rows
    poly_mat<R> d;  ///< diagonal, d1 | d2 | ..., zero rows last, entries normalized
    poly_mat<R> v;  ///< invertible, cols x cols
    std::size_t rank = 0;

    const laurent_poly<R>& diag(std::size_t i) const { return d.at(i, i); }
};

/// Smith normal form over K[t,t^-1] for a field K: U*A*V = D with U, V
/// invertible (unit determinant) and D a normalized divisor chain.
/// Pivots are chosen by minimal degree span, then smallest coefficient size,
/// then lowest index.
template <class R>
smith_result<R> smith_normal_form(const poly_mat<R>& a)
{
    static_assert(R::is_field,
                  "Smith normal form needs field coefficients; promote Z to Q first");
    using poly = laurent_poly<R>;
    const R& ring = a.zero_entry().ring();
    const std::size_t m = a.rows(), n = a.cols();

    smith_result<R> res{poly_identity(ring, m), a, poly_identity(ring, n), 0};
    poly_mat<R>& d = res.d;
    poly_mat<R>& u = res.u;
    poly_mat<R>& v = res.v;

    auto add_row = [&](std::size_t dst, std::size_t src, const poly& f) {
        // row_dst += f * row_src
        for (std::size_t j = 0; j < n; ++j)
            d.at(dst, j) = d.at(dst, j) + f * d.at(src, j);
        for (std::size_t j = 0; j < m; ++j)
            u.at(dst, j) = u.at(dst, j) + f * u.at(src, j);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const poly& f) {
        for (std::size_t i = 0; i < m; ++i)
            d.at(i, dst) = d.at(i, dst) + f * d.at(i, src);
        for (std::size_t i = 0; i < n; ++i)
            v.at(i, dst) = v.at(i, dst) + f * v.at(i, src);
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        d.swap_rows(x, y);
        u.swap_rows(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        d.swap_cols(x, y);
        v.swap_cols(x, y);
    };
    auto pivot_key = [&](const poly& p) {
        bigint size = 0;
        for (const auto& [e, c] : p.terms()) size += ring.size_measure(c);
        return std::pair<std::int64_t, bigint>(p.span(), size);
    };

    std::size_t r = 0;
    const std::size_t bound = std::min(m, n);
    while (r < bound) {
        // locate the best pivot in the trailing submatrix
        std::size_t pi = m, pj = n;
        for (std::size_t i = r; i < m; ++i)
            for (std::size_t j = r; j < n; ++j) {
                if (d.at(i, j).is_zero()) continue;
                if (pi == m || pivot_key(d.at(i, j)) < pivot_key(d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;  // trailing submatrix is zero
        swap_rows(r, pi);
        swap_cols(r, pj);

        bool settled = false;
        while (!settled) {
            settled = true;
            // clear the pivot column
            for (std::size_t i = r + 1; i < m; ++i) {
                if (d.at(i, r).is_zero()) continue;
                auto [q, rem] = detail::laurent_divmod(d.at(i, r), d.at(r, r));
                add_row(i, r, -q);
                if (!rem.is_zero()) {
                    // remainder has strictly smaller span: promote it to pivot
                    swap_rows(r, i);
                    settled = false;
                }
            }
            if (!settled) continue;
            // clear the pivot row
            for (std::size_t j = r + 1; j < n; ++j) {
                if (d.at(r, j).is_zero()) continue;
                auto [q, rem] = detail::laurent_divmod(d.at(r, j), d.at(r, r));
                add_col(j, r, -q);
                if (!rem.is_zero()) {
                    swap_cols(r, j);
                    settled = false;
                }
            }
            if (!settled) continue;
            // the divisor chain: every remaining entry must be divisible by
            // the pivot; otherwise fold the offending row in and go again
            for (std::size_t i = r + 1; i < m && settled; ++i)
                for (std::size_t j = r + 1; j < n && settled; ++j)
                    if (!detail::laurent_divides(d.at(r, r), d.at(i, j))) {
                        add_row(r, i, poly::from_int(ring, 1));
                        settled = false;
                    }
        }
        // normalize the pivot to its canonical associate
        poly piv = d.at(r, r);
        poly unit = normalize(piv);
        if (piv != unit) {
            // unit = s * piv with s a unit; scale the row by s
            std::int64_t shift = -piv.min_exp();
            auto c = ring.normalizing_unit(piv.shifted(shift).leading_coeff());
            for (std::size_t j = 0; j < n; ++j)
                d.at(r, j) = d.at(r, j).shifted(shift).scaled(c);
            for (std::size_t j = 0; j < m; ++j)
                u.at(r, j) = u.at(r, j).shifted(shift).scaled(c);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

/// Solve A x = b over K[t,t^-1] (existence + one solution), or nullopt.
template <class R>
std::optional<std::vector<laurent_poly<R>>> solve_linear(
    const smith_result<R>& snf, const std::vector<laurent_poly<R>>& b)
{
    using poly = laurent_poly<R>;
    const std::size_t m = snf.u.rows(), n = snf.v.rows();
    if (b.size() != m) throw error("right-hand side has the wrong length");
    const R& ring = snf.u.zero_entry().ring();
    // c = U b
    std::vector<poly> c(m, poly::zero(ring));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!snf.u.at(i, j).is_zero() && !b[j].is_zero())
                c[i] = c[i] + snf.u.at(i, j) * b[j];
    std::vector<poly> y(n, poly::zero(ring));
    for (std::size_t i = 0; i < m; ++i) {
        bool in_range = i < n && i < snf.rank;
        if (!in_range) {
            if (!c[i].is_zero()) return std::nullopt;
            continue;
        }
        if (c[i].is_zero()) continue;
        auto [q, rem] = detail::laurent_divmod(c[i], snf.d.at(i, i));
        if (!rem.is_zero()) return std::nullopt;
        y[i] = q;
    }
    // x = V y
    std::vector<poly> x(n, poly::zero(ring));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!snf.v.at(i, j).is_zero() && !y[j].is_zero())
                x[i] = x[i] + snf.v.at(i, j) * y[j];
    return x;
}

/// Do the columns of C generate all of R^rows as an R[t,t^-1]-module?
/// True iff the Smith form has full row rank with unit invariant factors.
template <class R>
bool columns_generate_free_module(const poly_mat<R>& c)
{
    if (c.rows() == 0) return true;
    auto snf = smith_normal_form(c);
    if (snf.rank < c.rows()) return false;
    for (std::size_t i = 0; i < c.rows(); ++i)
        if (!snf.diag(i).is_unit()) return false;
    return true;
}

}  // namespace lf
