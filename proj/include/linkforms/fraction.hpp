#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "linkforms/laurent.hpp"
#include "linkforms/ring.hpp"

namespace lf {

/// An element of the fraction field Q(t) of R[t,t^-1], stored as num/den.
///
/// Over field coefficients the representative is kept reduced: gcd(num, den)
/// is a unit and den is normalized (lowest exponent 0, monic), with the
/// compensating unit absorbed into num. Over Z only the denominator is
/// unit-normalized; gcd reduction is not available (callers promote to Q).
template <class R>
class fraction {
public:
    using poly = laurent_poly<R>;

    explicit fraction(R ring = R{})
        : num_(poly::zero(ring)), den_(poly::from_int(ring, 1))
    {
    }

    fraction(poly num, poly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw error("fraction with zero denominator");
        reduce();
    }

    static fraction from_poly(poly p)
    {
        auto one = poly::from_int(p.ring(), 1);
        return fraction(std::move(p), std::move(one));
    }

    /// Assemble a fraction whose parts are already coprime: only the
    /// denominator's unit normalization runs, no gcd. The caller guarantees
    /// gcd(num, den) = 1 (e.g. images of reduced fractions under injective
    /// ring morphisms).
    static fraction from_reduced_parts(poly num, poly den)
    {
        if (den.is_zero()) throw error("fraction with zero denominator");
        fraction out(num.ring());
        out.num_ = std::move(num);
        out.den_ = std::move(den);
        if (out.num_.is_zero()) {
            out.den_ = poly::from_int(out.num_.ring(), 1);
            return out;
        }
        const R& ring = out.num_.ring();
        std::int64_t k = -out.den_.min_exp();
        auto u = ring.normalizing_unit(out.den_.shifted(k).leading_coeff());
        out.den_ = out.den_.shifted(k).scaled(u);
        out.num_ = out.num_.shifted(k).scaled(u);
        return out;
    }

    static fraction zero(const R& ring) { return fraction(ring); }
    static fraction one(const R& ring) { return from_poly(poly::from_int(ring, 1)); }

    const poly& num() const { return num_; }
    const poly& den() const { return den_; }
    const R& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }

    /// True iff the value lies in R[t,t^-1] itself.
    bool is_ring_element() const { return num_.is_zero() || den_.is_unit(); }

    friend fraction operator+(const fraction& a, const fraction& b)
    {
        return fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend fraction operator-(const fraction& a, const fraction& b)
    {
        return fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend fraction operator*(const fraction& a, const fraction& b)
    {
        return fraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend fraction operator/(const fraction& a, const fraction& b)
    {
        if (b.is_zero()) throw error("division by the zero fraction");
        return fraction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend fraction operator-(const fraction& a)
    {
        fraction out = a;
        out.num_ = -out.num_;
        return out;
    }

    fraction conj() const { return fraction(num_.conj(), den_.conj()); }

    fraction scaled(const poly& p) const { return fraction(num_ * p, den_); }

    /// Equality of field elements (cross multiplication; representatives are
    /// canonical over fields, but this stays correct over Z too).
    friend bool operator==(const fraction& a, const fraction& b)
    {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const fraction& a, const fraction& b) { return !(a == b); }

private:
    void reduce()
    {
        const R& ring = num_.ring();
        if (num_.is_zero()) {
            den_ = poly::from_int(ring, 1);
            return;
        }
        if constexpr (R::is_field) {
            poly g = poly_gcd(num_, den_);
            if (g.span() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        // absorb the denominator's normalizing unit into the numerator
        std::int64_t k = -den_.min_exp();
        auto u = ring.normalizing_unit(den_.shifted(k).leading_coeff());
        den_ = den_.shifted(k).scaled(u);
        num_ = num_.shifted(k).scaled(u);
    }

    poly num_;
    poly den_;
};

template <class From, class To>
fraction<To> substitute(const fraction<From>& x, const winding_morphism<From, To>& m)
{
    return fraction<To>(substitute(x.num(), m), substitute(x.den(), m));
}

template <class R>
std::string to_string(const fraction<R>& x)
{
    return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

template <class R>
fraction<R> parse_fraction(const R& ring, const std::string& text)
{
    auto open1 = text.find('(');
    auto close1 = text.find(')', open1 == std::string::npos ? 0 : open1);
    auto slash = text.find('/', close1 == std::string::npos ? 0 : close1);
    auto open2 = text.find('(', slash == std::string::npos ? 0 : slash);
    auto close2 = text.rfind(')');
    if (open1 == std::string::npos || close1 == std::string::npos ||
        slash == std::string::npos || open2 == std::string::npos ||
        close2 == std::string::npos || close2 <= open2)
        throw error("fraction must have the form (num)/(den): \"" + text + "\"");
    auto num = parse_poly(ring, text.substr(open1 + 1, close1 - open1 - 1));
    auto den = parse_poly(ring, text.substr(open2 + 1, close2 - open2 - 1));
    return fraction<R>(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// The quotient Q(t)/R[t,t^-1] with canonical representatives.
//
// The representative of a class is the unique fraction m/d with d monic,
// lowest exponent 0 (hence d(0) != 0), m an ordinary polynomial with
// span(m) < span(d), and gcd(m, d) = 1. The class is zero iff m = 0, so
// equality of classes is structural equality of representatives.
// ---------------------------------------------------------------------------

template <class R>
class fraction_class {
public:
    using poly = laurent_poly<R>;

    explicit fraction_class(R ring = R{}) : rep_(std::move(ring)) {}

    explicit fraction_class(const fraction<R>& x) : rep_(reduce_rep(x)) {}

    static fraction_class zero(const R& ring) { return fraction_class(ring); }

    const fraction<R>& rep() const { return rep_; }
    const R& ring() const { return rep_.ring(); }
    bool is_zero() const { return rep_.is_zero(); }

    /// Wrap a fraction that is already the canonical class representative
    /// (den monic with lowest exponent 0, num a polynomial with smaller span,
    /// gcd 1). No reduction runs.
    static fraction_class from_canonical(fraction<R> rep)
    {
        static_assert(R::is_field, "canonical classes need field coefficients");
        fraction_class out(rep.ring());
        out.rep_ = std::move(rep);
        return out;
    }

    friend bool operator==(const fraction_class& a, const fraction_class& b)
    {
        return a.rep_.num() == b.rep_.num() && a.rep_.den() == b.rep_.den();
    }
    friend bool operator!=(const fraction_class& a, const fraction_class& b)
    {
        return !(a == b);
    }

    friend fraction_class operator+(const fraction_class& a, const fraction_class& b)
    {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return fraction_class(a.rep_ + b.rep_);
    }
    friend fraction_class operator-(const fraction_class& a)
    {
        if (a.is_zero()) return a;
        return fraction_class(-a.rep_);
    }

    fraction_class conj() const
    {
        if (is_zero()) return *this;
        return fraction_class(rep_.conj());
    }

    /// Left multiplication by a ring element.
    fraction_class scaled(const poly& r) const
    {
        if (is_zero()) return *this;
        if (r.is_zero()) return zero(ring());
        if (r.is_one()) return *this;
        return fraction_class(rep_.scaled(r));
    }

private:
    static fraction<R> reduce_rep(const fraction<R>& x)
    {
        const R& ring = x.ring();
        if constexpr (!R::is_field) {
            if (x.is_ring_element()) return fraction<R>::zero(ring);
            throw error("canonical form requires field coefficients "
                        "(promote Z[t,t^-1] fractions to Q first)");
        } else {
            if (x.is_ring_element()) return fraction<R>::zero(ring);
            // x is reduced: den monic, lowest exponent 0, gcd(num, den) = 1.
            const poly& d = x.den();
            std::int64_t k = std::max<std::int64_t>(0, -x.num().min_exp());
            poly n = x.num().shifted(k);  // cleared numerator
            poly m = poly_divmod(n, d).second;
            if (k > 0) {
                // multiply by (t^-1 mod d)^k; t is invertible mod d since d(0) != 0
                poly tinv = exact_div(d - poly::constant(ring, d.coeff_at(0)),
                                      poly::gen(ring))
                                .scaled(ring.neg(ring.inv(d.coeff_at(0))));
                poly u = poly::from_int(ring, 1);
                for (std::int64_t i = 0; i < k; ++i)
                    u = poly_divmod(u * tinv, d).second;
                m = poly_divmod(m * u, d).second;
            }
            if (m.is_zero()) return fraction<R>::zero(ring);
            return fraction<R>(std::move(m), d);
        }
    }

    fraction<R> rep_;
};

/// The class of x in Q(t)/R[t,t^-1].
template <class R>
fraction_class<R> reduce_mod_ring(const fraction<R>& x)
{
    return fraction_class<R>(x);
}

/// Substitution on classes. Images of canonical representatives under the
/// injective endomorphism t -> t^omega stay coprime with a monic-izable
/// denominator, so no gcd is needed; only for omega < 0 can the numerator
/// reach the denominator's span, fixed by a single division.
template <class From, class To>
fraction_class<To> substitute(const fraction_class<From>& x,
                              const winding_morphism<From, To>& m)
{
    if (x.is_zero()) return fraction_class<To>(m.target);
    auto num = substitute(x.rep().num(), m);
    auto den = substitute(x.rep().den(), m);
    if constexpr (std::is_same_v<From, To> && To::is_field) {
        // same-field substitution preserves coprimality exactly
        auto f = fraction<To>::from_reduced_parts(std::move(num), std::move(den));
        if (f.num().max_exp() >= f.den().max_exp()) {
            auto rem = poly_divmod(f.num(), f.den()).second;
            if (rem.is_zero()) return fraction_class<To>(m.target);
            f = fraction<To>::from_reduced_parts(std::move(rem), f.den());
        }
        return fraction_class<To>::from_canonical(std::move(f));
    } else {
        // cross-ring coefficient maps may destroy coprimality: full reduction
        if (den.is_zero())
            throw error("denominator vanishes under the coefficient map");
        return fraction_class<To>(fraction<To>(std::move(num), std::move(den)));
    }
}

template <class R>
std::string to_string(const fraction_class<R>& x)
{
    return to_string(x.rep());
}

}  // namespace lf
