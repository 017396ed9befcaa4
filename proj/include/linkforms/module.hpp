#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "linkforms/factor.hpp"
#include "linkforms/matrix.hpp"
#include "linkforms/smith.hpp"

namespace lf {

/// A finitely presented torsion module R^n / A R^n over R[t,t^-1], given by a
/// square presentation matrix A with det(A) != 0. Generators are the standard
/// basis e_1..e_n; the exact determinant is computed on construction, so the
/// torsion invariant is checked once and the order is always cheap.
template <class R>
class torsion_module {
public:
    explicit torsion_module(poly_mat<R> presentation)
        : pres_(std::move(presentation)), det_(det(pres_))
    {
        if (!pres_.is_square())
            throw error("module presentations must be square (square them in the "
                        "knot layer first)");
        if (det_.is_zero())
            throw error("presentation does not define a torsion module");
    }

    static torsion_module trivial(const R& ring)
    {
        return torsion_module(poly_mat<R>(0, 0, laurent_poly<R>::zero(ring)));
    }

    const poly_mat<R>& presentation() const { return pres_; }
    std::size_t generators() const { return pres_.rows(); }
    const R& ring() const { return pres_.zero_entry().ring(); }

    /// The raw determinant of the presentation (not unit-normalized).
    const laurent_poly<R>& det_raw() const { return det_; }

    /// Order of the module: normalize(det A). Multiplicative over direct sums.
    laurent_poly<R> order() const { return normalize(det_); }

    bool is_trivial_presentation() const { return generators() == 0; }

    friend bool operator==(const torsion_module& a, const torsion_module& b)
    {
        return a.pres_ == b.pres_;
    }

    friend torsion_module direct_sum(const torsion_module& a, const torsion_module& b)
    {
        if (!a.ring().same(b.ring()))
            throw error("direct sum of modules over different base rings");
        return torsion_module(block_diag(a.pres_, b.pres_), a.det_ * b.det_);
    }

private:
    // block-diagonal fast path: the determinant is the product of the blocks
    torsion_module(poly_mat<R> presentation, laurent_poly<R> dt)
        : pres_(std::move(presentation)), det_(std::move(dt))
    {
    }

    poly_mat<R> pres_;
    laurent_poly<R> det_;
};

/// Base change along t -> t^omega (with the morphism's coefficient map
/// applied entrywise). The determinant of the substituted presentation is
/// recomputed from scratch, so order(tensor_along(m, M)) genuinely travels
/// the substitute-then-det route.
template <class From, class To>
torsion_module<To> tensor_along(const winding_morphism<From, To>& m,
                                const torsion_module<From>& module)
{
    return torsion_module<To>(substitute(module.presentation(), m));
}

/// One cyclic summand R/(prime^exponent), with multiplicity.
template <class R>
struct cyclic_summand {
    laurent_poly<R> prime;
    int exponent;
    int multiplicity;
};

/// Primary decomposition over a PID coefficient ring (field coefficients):
/// Smith normal form, then factorization of each invariant factor. Sorted
/// canonically by (prime span, prime string, exponent).
template <class R>
std::vector<cyclic_summand<R>> primary_decomposition(const torsion_module<R>& module)
{
    static_assert(R::is_field,
                  "primary decomposition needs field coefficients; promote to Q");
    auto snf = smith_normal_form(module.presentation());
    std::vector<cyclic_summand<R>> out;
    for (std::size_t i = 0; i < snf.rank; ++i) {
        const auto& d = snf.diag(i);
        if (d.is_unit()) continue;
        for (const auto& f : factor_poly(d)) {
            bool merged = false;
            for (auto& s : out)
                if (s.exponent == f.multiplicity && s.prime == f.prime) {
                    ++s.multiplicity;
                    merged = true;
                    break;
                }
            if (!merged) out.push_back({f.prime, f.multiplicity, 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto ka = std::tuple<std::int64_t, std::string, int>(
            a.prime.span(), to_string(a.prime), a.exponent);
        auto kb = std::tuple<std::int64_t, std::string, int>(
            b.prime.span(), to_string(b.prime), b.exponent);
        return ka < kb;
    });
    return out;
}

/// Isomorphism of finitely generated torsion modules over the PID: equality
/// of primary decompositions as multisets.
template <class R>
bool modules_isomorphic(const torsion_module<R>& a, const torsion_module<R>& b)
{
    static_assert(R::is_field, "module classification needs field coefficients");
    if (!a.ring().same(b.ring()))
        throw error("cannot compare modules over different base rings");
    auto da = primary_decomposition(a);
    auto db = primary_decomposition(b);
    if (da.size() != db.size()) return false;
    for (std::size_t i = 0; i < da.size(); ++i) {
        if (da[i].exponent != db[i].exponent ||
            da[i].multiplicity != db[i].multiplicity ||
            da[i].prime != db[i].prime)
            return false;
    }
    return true;
}

/// Promote an integer-coefficient module to rational coefficients.
inline torsion_module<ring_q> promote_to_q(const torsion_module<ring_z>& m)
{
    winding_morphism<ring_z, ring_q> id(ring_z{}, ring_q{}, 1);
    return tensor_along(id, m);
}

}  // namespace lf
