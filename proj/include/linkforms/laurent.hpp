#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "linkforms/ring.hpp"

namespace lf {

/// A Laurent polynomial over the coefficient ring R: a finite map
/// exponent -> nonzero coefficient. The zero polynomial has no terms.
///
/// Values are immutable in spirit: every operation returns a fresh
/// polynomial, and no stored coefficient is ever zero.
template <class R>
class laurent_poly {
public:
    using coeff = typename R::elem;
    using term_map = std::map<std::int64_t, coeff>;

    explicit laurent_poly(R ring = R{}) : ring_(std::move(ring)) {}

    static laurent_poly zero(const R& ring) { return laurent_poly(ring); }

    static laurent_poly constant(const R& ring, const coeff& c)
    {
        laurent_poly p(ring);
        if (!ring.is_zero(c)) p.terms_[0] = c;
        return p;
    }

    static laurent_poly from_int(const R& ring, std::int64_t n)
    {
        return constant(ring, ring.from_int(n));
    }

    /// c * t^e
    static laurent_poly term(const R& ring, std::int64_t e, const coeff& c)
    {
        laurent_poly p(ring);
        if (!ring.is_zero(c)) p.terms_[e] = c;
        return p;
    }

    static laurent_poly gen(const R& ring) { return term(ring, 1, ring.one()); }

    const R& ring() const { return ring_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::int64_t min_exp() const
    {
        if (is_zero()) throw error("zero polynomial has no exponents");
        return terms_.begin()->first;
    }
    std::int64_t max_exp() const
    {
        if (is_zero()) throw error("zero polynomial has no exponents");
        return terms_.rbegin()->first;
    }
    /// max exponent - min exponent; degree of the cleared polynomial.
    std::int64_t span() const { return is_zero() ? -1 : max_exp() - min_exp(); }

    coeff coeff_at(std::int64_t e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? ring_.zero() : it->second;
    }

    coeff leading_coeff() const { return terms_.rbegin()->second; }

    bool is_one() const
    {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               ring_.eq(terms_.begin()->second, ring_.one());
    }

    /// A unit of R[t, t^-1]: a single term with (over fields) any nonzero
    /// coefficient, or (over Z) coefficient +-1.
    bool is_unit() const
    {
        if (terms_.size() != 1) return false;
        if constexpr (R::is_field) {
            return true;
        } else {
            const auto& c = terms_.begin()->second;
            return ring_.eq(c, ring_.one()) || ring_.eq(c, ring_.neg(ring_.one()));
        }
    }

    friend bool operator==(const laurent_poly& a, const laurent_poly& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [e, c] : a.terms_) {
            if (it->first != e || !a.ring_.eq(it->second, c)) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const laurent_poly& a, const laurent_poly& b)
    {
        return !(a == b);
    }

    friend laurent_poly operator+(const laurent_poly& a, const laurent_poly& b)
    {
        laurent_poly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }

    friend laurent_poly operator-(const laurent_poly& a, const laurent_poly& b)
    {
        laurent_poly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, a.ring_.neg(c));
        return out;
    }

    friend laurent_poly operator-(const laurent_poly& a)
    {
        laurent_poly out(a.ring_);
        for (const auto& [e, c] : a.terms_) out.terms_[e] = a.ring_.neg(c);
        return out;
    }

    friend laurent_poly operator*(const laurent_poly& a, const laurent_poly& b)
    {
        laurent_poly out(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                out.add_term(ea + eb, a.ring_.mul(ca, cb));
        return out;
    }

    laurent_poly scaled(const coeff& c) const
    {
        laurent_poly out(ring_);
        for (const auto& [e, v] : terms_) {
            coeff w = ring_.mul(v, c);
            if (!ring_.is_zero(w)) out.terms_[e] = w;
        }
        return out;
    }

    /// Multiplication by the unit t^k.
    laurent_poly shifted(std::int64_t k) const
    {
        laurent_poly out(ring_);
        for (const auto& [e, v] : terms_) out.terms_[e + k] = v;
        return out;
    }

    /// The involution t -> t^-1.
    laurent_poly conj() const
    {
        laurent_poly out(ring_);
        for (const auto& [e, v] : terms_) out.terms_[-e] = v;
        return out;
    }

    /// Sum of coefficients, i.e. evaluation at t = 1.
    coeff eval_at_one() const
    {
        coeff s = ring_.zero();
        for (const auto& [e, v] : terms_) s = ring_.add(s, v);
        return s;
    }

    void add_term(std::int64_t e, const coeff& c)
    {
        if (ring_.is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second = ring_.add(it->second, c);
            if (ring_.is_zero(it->second)) terms_.erase(it);
        }
    }

private:
    R ring_;
    term_map terms_;
};

template <class R>
laurent_poly<R> conj(const laurent_poly<R>& p)
{
    return p.conj();
}

/// Unit normalization: the canonical associate of p. The lowest exponent is
/// shifted to 0; over Z the top coefficient is made positive, over fields the
/// polynomial is made monic. Errors on the zero polynomial.
template <class R>
laurent_poly<R> normalize(const laurent_poly<R>& p)
{
    if (p.is_zero()) throw error("zero polynomial has no normal form");
    laurent_poly<R> q = p.shifted(-p.min_exp());
    return q.scaled(p.ring().normalizing_unit(q.leading_coeff()));
}

/// True iff q = unit * p.
template <class R>
bool associates(const laurent_poly<R>& p, const laurent_poly<R>& q)
{
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    return normalize(p) == normalize(q);
}

// ---------------------------------------------------------------------------
// Winding morphisms t -> t^omega combined with a coefficient map; these are
// the ring morphisms along which modules and pairings are tensored up.
// omega = 0 is rejected: it is exactly the failure of eta-regularity.
// ---------------------------------------------------------------------------

template <class From, class To>
struct winding_morphism {
    From source;
    To target;
    std::int64_t omega;

    winding_morphism(From src, To tgt, std::int64_t w)
        : source(std::move(src)), target(std::move(tgt)), omega(w)
    {
        if (omega == 0)
            throw error("infection curve is not eta-regular: winding number 0 "
                        "does not embed Z[t,t^-1]");
    }
};

template <class R>
winding_morphism<R, R> winding(const R& ring, std::int64_t omega)
{
    return winding_morphism<R, R>(ring, ring, omega);
}

/// Apply a winding morphism: each term (e, c) maps to (omega*e, f(c)).
/// A ring homomorphism, injective for omega != 0, commuting with conj.
template <class From, class To>
laurent_poly<To> substitute(const laurent_poly<From>& p,
                            const winding_morphism<From, To>& m)
{
    laurent_poly<To> out(m.target);
    for (const auto& [e, c] : p.terms())
        out.add_term(m.omega * e, coeff_cast(m.source, m.target, c));
    return out;
}

// ---------------------------------------------------------------------------
// Division. Laurent polynomials are cleared to ordinary polynomials (lowest
// exponent 0) first; quotients and remainders are polynomial.
// ---------------------------------------------------------------------------

/// Quotient and remainder of cleared polynomials over a field:
/// a = q*b + r with span(r) < span(b). Requires min_exp(a), min_exp(b) >= 0.
template <class R>
std::pair<laurent_poly<R>, laurent_poly<R>> poly_divmod(const laurent_poly<R>& a,
                                                        const laurent_poly<R>& b)
{
    static_assert(R::is_field, "polynomial division needs field coefficients");
    const R& ring = a.ring();
    if (b.is_zero()) throw error("polynomial division by zero");
    laurent_poly<R> q(ring), r = a;
    const std::int64_t db = b.max_exp();
    while (!r.is_zero() && r.max_exp() >= db) {
        std::int64_t e = r.max_exp() - db;
        auto c = ring.div(r.leading_coeff(), b.leading_coeff());
        auto mono = laurent_poly<R>::term(ring, e, c);
        q = q + mono;
        r = r - mono * b;
    }
    return {q, r};
}

/// Exact quotient a / b in R[t, t^-1]; throws if the division is not exact.
/// Works over Z as well as fields (used by fraction-free elimination).
template <class R>
laurent_poly<R> exact_div(const laurent_poly<R>& a, const laurent_poly<R>& b)
{
    const R& ring = a.ring();
    if (b.is_zero()) throw error("division by the zero polynomial");
    if (a.is_zero()) return a;
    std::int64_t shift = a.min_exp() - b.min_exp();
    laurent_poly<R> r = a.shifted(-a.min_exp());
    laurent_poly<R> d = b.shifted(-b.min_exp());
    laurent_poly<R> q(ring);
    const std::int64_t dd = d.max_exp();
    while (!r.is_zero() && r.max_exp() >= dd) {
        std::int64_t e = r.max_exp() - dd;
        auto c = ring.div_exact(r.leading_coeff(), d.leading_coeff());
        auto mono = laurent_poly<R>::term(ring, e, c);
        q = q + mono;
        r = r - mono * d;
    }
    if (!r.is_zero()) throw error("inexact polynomial division");
    return q.shifted(shift);
}

/// Monic gcd over a field, computed on cleared polynomials. gcd(0,0) = 0.
template <class R>
laurent_poly<R> poly_gcd(laurent_poly<R> a, laurent_poly<R> b)
{
    static_assert(R::is_field, "gcd needs field coefficients");
    if (a.is_zero()) return b.is_zero() ? b : normalize(b);
    if (b.is_zero()) return normalize(a);
    a = a.shifted(-a.min_exp());
    b = b.shifted(-b.min_exp());
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r.is_zero() ? r : r.shifted(-r.min_exp());
    }
    return normalize(a);
}

/// Derivative d/dt of a cleared polynomial (used by squarefree splitting).
template <class R>
laurent_poly<R> poly_derivative(const laurent_poly<R>& p)
{
    const R& ring = p.ring();
    laurent_poly<R> out(ring);
    for (const auto& [e, c] : p.terms())
        if (e != 0) out.add_term(e - 1, ring.mul(ring.from_int(e), c));
    return out;
}

// ---------------------------------------------------------------------------
// Rendering and parsing. Terms are printed in ascending exponent order as
// `c*t^e` with the usual abbreviations: `t`, `-t^2`, `3`, `3/2*t^-1`.
// ---------------------------------------------------------------------------

namespace detail {

inline bool coeff_str_is_negative(const std::string& s)
{
    return !s.empty() && s[0] == '-';
}

inline std::string strip_sign(const std::string& s)
{
    return coeff_str_is_negative(s) ? s.substr(1) : s;
}

}  // namespace detail

template <class R>
std::string to_string(const laurent_poly<R>& p)
{
    const R& ring = p.ring();
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string cs = ring.str(c);
        bool neg = detail::coeff_str_is_negative(cs);
        std::string mag = detail::strip_sign(cs);
        if (first) {
            out += neg ? "-" : "";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string tpart;
        if (e == 1) tpart = "t";
        else if (e != 0) tpart = "t^" + std::to_string(e);
        if (tpart.empty()) out += mag;
        else if (mag == "1") out += tpart;
        else out += mag + "*" + tpart;
    }
    return out;
}

namespace detail {

struct poly_lexer {
    const std::string& s;
    std::size_t i = 0;

    explicit poly_lexer(const std::string& str) : s(str) {}

    void skip_ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c)
    {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    char peek()
    {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg)
    {
        throw error("parse error at position " + std::to_string(i) + ": " + msg +
                    " in \"" + s + "\"");
    }

    std::string digits()
    {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected digits");
        return s.substr(start, i - start);
    }
};

// the exponent parser, kept out of the lexer for clarity
inline std::int64_t parse_exponent(poly_lexer& lx)
{
    bool neg = lx.eat('-');
    if (!neg) lx.eat('+');
    std::int64_t v = std::stoll(lx.digits());
    return neg ? -v : v;
}

template <class R>
typename R::elem parse_coeff_magnitude(poly_lexer& lx, const R& ring)
{
    std::string num = lx.digits();
    if (lx.peek() == '/') {
        lx.eat('/');
        std::string den = lx.digits();
        if constexpr (std::is_same_v<R, ring_q>) {
            return bigrat(bigint(num), bigint(den));
        } else if constexpr (std::is_same_v<R, ring_fp>) {
            bigint n(num), d(den);
            auto nr = coeff_cast(ring_z{}, ring, n);
            auto dr = coeff_cast(ring_z{}, ring, d);
            return ring.div(nr, dr);
        } else {
            throw error("fractional coefficient over Z: " + num + "/" + den);
        }
    }
    if constexpr (std::is_same_v<R, ring_z>) {
        return bigint(num);
    } else if constexpr (std::is_same_v<R, ring_q>) {
        return bigrat(bigint(num));
    } else {
        return coeff_cast(ring_z{}, ring, bigint(num));
    }
}

}  // namespace detail

/// Parse the grammar emitted by to_string. Accepts arbitrary whitespace,
/// explicit `1*t`, and `+`-led leading terms.
template <class R>
laurent_poly<R> parse_poly(const R& ring, const std::string& text)
{
    detail::poly_lexer lx(text);
    laurent_poly<R> out(ring);
    bool any = false;
    while (true) {
        char c = lx.peek();
        if (c == '\0') break;
        bool neg = false;
        if (c == '+' || c == '-') {
            neg = (c == '-');
            ++lx.i;
        } else if (any) {
            lx.fail("expected '+' or '-' between terms");
        }
        typename R::elem coeff = ring.one();
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = detail::parse_coeff_magnitude(lx, ring);
            have_coeff = true;
        }
        std::int64_t e = 0;
        bool have_t = false;
        if (have_coeff && lx.peek() == '*') lx.eat('*');
        if (lx.peek() == 't') {
            ++lx.i;
            have_t = true;
            e = 1;
            if (lx.peek() == '^') {
                lx.eat('^');
                e = detail::parse_exponent(lx);
            }
        }
        if (!have_coeff && !have_t) lx.fail("expected a term");
        if (neg) coeff = ring.neg(coeff);
        out.add_term(e, coeff);
        any = true;
    }
    if (!any) lx.fail("empty polynomial");
    return out;
}

}  // namespace lf
