#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lf {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

/// Error type for all domain violations (singular presentations, malformed
/// input, non-regular winding numbers, ...).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime description of a coefficient ring, as it appears in files
/// ("z", "q", "fp:<p>").
struct base_ring {
    enum class kind_t { integers, rationals, prime_field };
    kind_t kind = kind_t::integers;
    std::int64_t p = 0;  // set iff kind == prime_field

    friend bool operator==(const base_ring&, const base_ring&) = default;

    std::string str() const
    {
        switch (kind) {
        case kind_t::integers: return "z";
        case kind_t::rationals: return "q";
        case kind_t::prime_field: return "fp:" + std::to_string(p);
        }
        return "?";
    }
};

/// Deterministic Miller-Rabin, exact for the supported range p < 2^31.
inline bool is_prime_i64(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t q : {2, 3, 5, 7}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::int64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    auto mulmod = [n](std::int64_t a, std::int64_t b) {
        return static_cast<std::int64_t>(
            static_cast<__int128>(a) * b % n);
    };
    for (std::int64_t a : {2, 3, 5, 7}) {
        std::int64_t x = 1, e = d, base = a % n;
        while (e > 0) {
            if (e & 1) x = mulmod(x, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Coefficient rings. Each ring type provides the same static/instance
// interface; ring objects are passed by value and carried by every container
// (they are empty except for the prime field, which stores p).
// ---------------------------------------------------------------------------

/// The integers Z.
struct ring_z {
    using elem = bigint;
    static constexpr bool is_field = false;

    base_ring descriptor() const { return {base_ring::kind_t::integers, 0}; }
    bool same(const ring_z&) const { return true; }

    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem from_int(std::int64_t n) const { return n; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    bool is_zero(const elem& a) const { return a == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }

    elem div(const elem&, const elem&) const
    {
        throw error("division is not defined over the integers");
    }

    /// Exact quotient; the caller guarantees divisibility (Bareiss pivots).
    elem div_exact(const elem& a, const elem& b) const
    {
        bigint q, r;
        boost::multiprecision::divide_qr(a, b, q, r);
        if (r != 0) throw error("inexact coefficient division over Z");
        return q;
    }

    /// Unit u with u*lead canonical: the sign making the coefficient positive.
    elem normalizing_unit(const elem& lead) const { return lead < 0 ? -1 : 1; }

    /// Size measure used by deterministic pivot tie-breaking.
    bigint size_measure(const elem& a) const { return boost::multiprecision::abs(a); }

    std::string str(const elem& a) const { return a.str(); }
};

/// The rationals Q.
struct ring_q {
    using elem = bigrat;
    static constexpr bool is_field = true;

    base_ring descriptor() const { return {base_ring::kind_t::rationals, 0}; }
    bool same(const ring_q&) const { return true; }

    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem from_int(std::int64_t n) const { return n; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    bool is_zero(const elem& a) const { return a == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }

    elem div(const elem& a, const elem& b) const
    {
        if (b == 0) throw error("division by zero");
        return a / b;
    }
    elem div_exact(const elem& a, const elem& b) const { return div(a, b); }
    elem inv(const elem& a) const { return div(one(), a); }

    elem normalizing_unit(const elem& lead) const { return inv(lead); }

    bigint size_measure(const elem& a) const
    {
        using boost::multiprecision::abs;
        return abs(numerator(a)) + abs(denominator(a));
    }

    std::string str(const elem& a) const
    {
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }
};

/// The prime field F_p, p < 2^31. Elements are canonical residues in [0, p).
class ring_fp {
public:
    using elem = std::int64_t;
    static constexpr bool is_field = true;

    explicit ring_fp(std::int64_t p) : p_(p)
    {
        if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime_i64(p))
            throw error("coefficient modulus must be a prime below 2^31");
    }

    std::int64_t modulus() const { return p_; }
    base_ring descriptor() const { return {base_ring::kind_t::prime_field, p_}; }
    bool same(const ring_fp& o) const { return p_ == o.p_; }

    elem zero() const { return 0; }
    elem one() const { return 1 % p_; }
    elem from_int(std::int64_t n) const
    {
        std::int64_t r = n % p_;
        return r < 0 ? r + p_ : r;
    }

    elem add(elem a, elem b) const { return (a + b) % p_; }
    elem sub(elem a, elem b) const { return ((a - b) % p_ + p_) % p_; }
    elem mul(elem a, elem b) const
    {
        return static_cast<elem>(static_cast<__int128>(a) * b % p_);
    }
    elem neg(elem a) const { return a == 0 ? 0 : p_ - a; }
    bool is_zero(elem a) const { return a == 0; }
    bool eq(elem a, elem b) const { return a == b; }

    elem inv(elem a) const
    {
        if (a == 0) throw error("division by zero in F_p");
        // extended Euclid
        std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1;
            std::int64_t s2 = s0 - q * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        return from_int(s0);
    }
    elem div(elem a, elem b) const { return mul(a, inv(b)); }
    elem div_exact(elem a, elem b) const { return div(a, b); }

    elem normalizing_unit(elem lead) const { return inv(lead); }

    bigint size_measure(elem a) const { return a; }

    std::string str(elem a) const { return std::to_string(a); }

private:
    std::int64_t p_;
};

// Coefficient maps between rings (the maps a winding morphism may carry).

inline ring_q::elem coeff_cast(const ring_z&, const ring_q&, const ring_z::elem& a)
{
    return bigrat(a);
}

inline ring_fp::elem coeff_cast(const ring_z&, const ring_fp& to, const ring_z::elem& a)
{
    bigint r = a % to.modulus();
    if (r < 0) r += to.modulus();
    return static_cast<std::int64_t>(r);
}

inline ring_z::elem coeff_cast(const ring_z&, const ring_z&, const ring_z::elem& a)
{
    return a;
}

inline ring_q::elem coeff_cast(const ring_q&, const ring_q&, const ring_q::elem& a)
{
    return a;
}

inline ring_fp::elem coeff_cast(const ring_fp& from, const ring_fp& to, const ring_fp::elem& a)
{
    if (!from.same(to)) throw error("cannot map between distinct prime fields");
    return a;
}

/// Q -> F_p, defined when the denominator is prime to p. Needed when a
/// rational pairing value is pushed into a finite-field model.
inline ring_fp::elem coeff_cast(const ring_q&, const ring_fp& to, const ring_q::elem& a)
{
    bigint num = numerator(a) % to.modulus();
    bigint den = denominator(a) % to.modulus();
    if (den == 0) throw error("denominator vanishes modulo p");
    if (num < 0) num += to.modulus();
    if (den < 0) den += to.modulus();
    return to.div(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace lf
