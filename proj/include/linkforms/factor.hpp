#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linkforms/laurent.hpp"
#include "linkforms/ring.hpp"

namespace lf {

template <class R>
struct poly_factor {
    laurent_poly<R> prime;  ///< normalized (monic, lowest exponent 0) irreducible
    int multiplicity;
};

namespace detail {

// ----- dense polynomials over Z, little-endian coefficients -----

using zpoly = std::vector<bigint>;

inline void zp_trim(zpoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int zp_deg(const zpoly& f) { return static_cast<int>(f.size()) - 1; }

inline zpoly zp_mul(const zpoly& a, const zpoly& b)
{
    if (a.empty() || b.empty()) return {};
    zpoly out(a.size() + b.size() - 1, bigint(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline void zp_mod_coeffs(zpoly& f, const bigint& m)
{
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
    }
    zp_trim(f);
}

/// symmetric representatives in (-m/2, m/2]
inline void zp_symmetric(zpoly& f, const bigint& m)
{
    for (auto& c : f) {
        c %= m;
        if (c < 0) c += m;
        if (2 * c > m) c -= m;
    }
    zp_trim(f);
}

/// exact division over Z; throws if inexact
inline zpoly zp_div_exact(const zpoly& a, const zpoly& b)
{
    if (b.empty()) throw error("integer polynomial division by zero");
    if (a.empty()) return {};
    zpoly r = a, q(a.size(), bigint(0));
    while (zp_deg(r) >= zp_deg(b)) {
        if (r.back() % b.back() != 0) throw error("inexact integer polynomial division");
        bigint c = r.back() / b.back();
        std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        zp_trim(r);
    }
    if (!r.empty()) throw error("inexact integer polynomial division");
    zp_trim(q);
    return q;
}

inline bool zp_divides(const zpoly& d, const zpoly& a)
{
    if (a.empty()) return true;
    if (d.empty()) return false;
    zpoly r = a;
    while (zp_deg(r) >= zp_deg(d)) {
        if (r.back() % d.back() != 0) return false;
        bigint c = r.back() / d.back();
        std::size_t shift = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
        zp_trim(r);
    }
    return r.empty();
}

inline bigint zp_content(const zpoly& f)
{
    bigint g = 0;
    for (const auto& c : f) g = boost::multiprecision::gcd(g, c);
    return g;
}

// ----- F_p dense polynomials (coefficients int64, p < 2^31) -----

struct fppoly {
    std::vector<std::int64_t> c;  // little-endian, trimmed

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
};

inline void fp_trim(fppoly& f)
{
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

inline fppoly fp_mul(const ring_fp& F, const fppoly& a, const fppoly& b)
{
    if (a.zero() || b.zero()) return {};
    fppoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    fp_trim(out);
    return out;
}

inline fppoly fp_sub(const ring_fp& F, fppoly a, const fppoly& b)
{
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] = F.sub(a.c[i], b.c[i]);
    fp_trim(a);
    return a;
}

inline fppoly fp_make_monic(const ring_fp& F, fppoly f)
{
    if (f.zero()) return f;
    auto inv = F.inv(f.c.back());
    for (auto& x : f.c) x = F.mul(x, inv);
    return f;
}

inline std::pair<fppoly, fppoly> fp_divmod(const ring_fp& F, fppoly a, const fppoly& b)
{
    if (b.zero()) throw error("F_p polynomial division by zero");
    fppoly q;
    if (a.c.size() >= b.c.size()) q.c.assign(a.c.size() - b.c.size() + 1, 0);
    auto lead_inv = F.inv(b.c.back());
    while (!a.zero() && a.deg() >= b.deg()) {
        std::int64_t c = F.mul(a.c.back(), lead_inv);
        std::size_t shift = a.c.size() - b.c.size();
        q.c[shift] = c;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = F.sub(a.c[shift + i], F.mul(c, b.c[i]));
        fp_trim(a);
    }
    fp_trim(q);
    return {q, a};
}

inline fppoly fp_rem(const ring_fp& F, const fppoly& a, const fppoly& b)
{
    return fp_divmod(F, a, b).second;
}

inline fppoly fp_gcd(const ring_fp& F, fppoly a, fppoly b)
{
    while (!b.zero()) {
        fppoly r = fp_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_make_monic(F, a);
}

/// extended euclid: (g, s, u) with s*a + u*b = g, g monic
inline std::tuple<fppoly, fppoly, fppoly> fp_ext_gcd(const ring_fp& F, fppoly a, fppoly b)
{
    fppoly s0{{1}}, s1{}, u0{}, u1{{1}};
    while (!b.zero()) {
        auto [q, r] = fp_divmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
        fppoly s2 = fp_sub(F, s0, fp_mul(F, q, s1));
        fppoly u2 = fp_sub(F, u0, fp_mul(F, q, u1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (a.zero()) return {a, s0, u0};
    auto inv = F.inv(a.c.back());
    auto scale = [&](fppoly f) {
        for (auto& x : f.c) x = F.mul(x, inv);
        return f;
    };
    return {scale(a), scale(s0), scale(u0)};
}

inline fppoly fp_derivative(const ring_fp& F, const fppoly& f)
{
    fppoly out;
    if (f.c.size() <= 1) return out;
    out.c.resize(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        out.c[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), f.c[i]);
    fp_trim(out);
    return out;
}

inline fppoly fp_powmod(const ring_fp& F, fppoly base, bigint e, const fppoly& m)
{
    fppoly out{{1}};
    base = fp_rem(F, base, m);
    while (e > 0) {
        if ((e & 1) != 0) out = fp_rem(F, fp_mul(F, out, base), m);
        base = fp_rem(F, fp_mul(F, base, base), m);
        e >>= 1;
    }
    return out;
}

/// squarefree decomposition over F_p, handling the f' = 0 (p-th power) case
inline void fp_squarefree(const ring_fp& F, const fppoly& f, int mult,
                          std::vector<std::pair<fppoly, int>>& out)
{
    if (f.deg() <= 0) return;
    fppoly d = fp_derivative(F, f);
    if (d.zero()) {
        // f = g(t^p) = g(t)^p over the prime field
        fppoly g;
        g.c.resize((f.c.size() - 1) / static_cast<std::size_t>(F.modulus()) + 1, 0);
        for (std::size_t i = 0; i < f.c.size(); ++i)
            if (f.c[i] != 0) g.c[i / static_cast<std::size_t>(F.modulus())] = f.c[i];
        fp_trim(g);
        fp_squarefree(F, g, mult * static_cast<int>(F.modulus()), out);
        return;
    }
    fppoly g = fp_gcd(F, f, d);
    fppoly w = fp_divmod(F, f, g).first;
    int i = 1;
    while (w.deg() > 0) {
        fppoly y = fp_gcd(F, w, g);
        fppoly z = fp_divmod(F, w, y).first;
        if (z.deg() > 0) out.emplace_back(fp_make_monic(F, z), mult * i);
        g = fp_divmod(F, g, y).first;
        w = std::move(y);
        ++i;
    }
    if (g.deg() > 0) fp_squarefree(F, g, mult, out);
}

/// distinct-degree factorization of a monic squarefree f:
/// list of (product of all irreducible factors of degree d, d)
inline std::vector<std::pair<fppoly, int>> fp_ddf(const ring_fp& F, fppoly f)
{
    std::vector<std::pair<fppoly, int>> out;
    fppoly x{{0, 1}};
    fppoly h = x;
    int d = 0;
    while (f.deg() >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(F, h, bigint(F.modulus()), f);  // h = x^(p^d) mod f
        fppoly g = fp_gcd(F, fp_sub(F, h, x), f);
        if (g.deg() > 0) {
            out.emplace_back(g, d);
            f = fp_divmod(F, f, g).first;
            h = fp_rem(F, h, f);
        }
    }
    if (f.deg() > 0) out.emplace_back(f, f.deg());
    return out;
}

/// equal-degree splitting (Cantor-Zassenhaus; trace method for p = 2)
inline void fp_edf(const ring_fp& F, const fppoly& f, int d, std::mt19937_64& rng,
                   std::vector<fppoly>& out)
{
    if (f.deg() == d) {
        out.push_back(fp_make_monic(F, f));
        return;
    }
    const std::int64_t p = F.modulus();
    fppoly split;
    while (true) {
        fppoly a;
        a.c.resize(static_cast<std::size_t>(f.deg()), 0);
        for (auto& c : a.c)
            c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        fp_trim(a);
        if (a.deg() < 1) continue;
        fppoly g = fp_gcd(F, a, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            split = g;
            break;
        }
        fppoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2
            fppoly t = a, acc = a;
            for (int i = 1; i < d; ++i) {
                t = fp_rem(F, fp_mul(F, t, t), f);
                acc = fp_sub(F, acc, t);
            }
            b = acc;
        } else {
            bigint e = (boost::multiprecision::pow(bigint(p), static_cast<unsigned>(d)) - 1) / 2;
            b = fp_powmod(F, a, e, f);
            if (b.zero()) continue;
            if (b.c.empty()) continue;
            b.c[0] = F.sub(b.c[0], 1);
            fp_trim(b);
        }
        fppoly g2 = fp_gcd(F, b, f);
        if (g2.deg() > 0 && g2.deg() < f.deg()) {
            split = g2;
            break;
        }
    }
    fp_edf(F, split, d, rng, out);
    fp_edf(F, fp_divmod(F, f, split).first, d, rng, out);
}

/// full factorization of a monic squarefree f into monic irreducibles
inline std::vector<fppoly> fp_factor_squarefree(const ring_fp& F, const fppoly& f)
{
    std::vector<fppoly> out;
    if (f.deg() <= 0) return out;
    std::mt19937_64 rng(0x5eed5eedULL);  // fixed seed: deterministic output
    for (const auto& [prod, d] : fp_ddf(F, f)) {
        if (prod.deg() == d)
            out.push_back(fp_make_monic(F, prod));
        else
            fp_edf(F, prod, d, rng, out);
    }
    return out;
}

// ----- conversions -----

inline fppoly fp_from_zpoly(const ring_fp& F, const zpoly& f)
{
    fppoly out;
    out.c.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        bigint r = f[i] % F.modulus();
        if (r < 0) r += F.modulus();
        out.c[i] = static_cast<std::int64_t>(r);
    }
    fp_trim(out);
    return out;
}

inline zpoly zpoly_from_fp(const fppoly& f)
{
    return zpoly(f.c.begin(), f.c.end());
}

// ----- Hensel lifting -----

/// Linear Hensel lift of a coprime monic pair: g = f*h mod p lifts to
/// g = f*h mod p^a. The Bezout data s*f0 + u*h0 = 1 is computed once mod p;
/// the per-step corrections df = u*e mod f0, dh = s*e mod h0 keep both
/// factors monic, which forces the degree bookkeeping to stay exact.
inline std::pair<zpoly, zpoly> hensel_pair(const ring_fp& Fp, const zpoly& g,
                                           const zpoly& f_start, const zpoly& h_start,
                                           const bigint& target)
{
    fppoly f0 = fp_from_zpoly(Fp, f_start);
    fppoly h0 = fp_from_zpoly(Fp, h_start);
    auto [gg, s, u] = fp_ext_gcd(Fp, f0, h0);
    if (gg.deg() != 0) throw error("Hensel factors are not coprime mod p");

    zpoly f = f_start, h = h_start;
    bigint m(Fp.modulus());
    while (m < target) {
        // e = (g - f*h)/m mod p
        zpoly diff = g;
        zpoly fh = zp_mul(f, h);
        if (fh.size() > diff.size()) diff.resize(fh.size(), bigint(0));
        for (std::size_t i = 0; i < fh.size(); ++i) diff[i] -= fh[i];
        zp_trim(diff);
        fppoly e;
        e.c.resize(diff.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            bigint q = diff[i] / m;  // exact by the invariant
            bigint r = q % Fp.modulus();
            if (r < 0) r += Fp.modulus();
            e.c[i] = static_cast<std::int64_t>(r);
        }
        fp_trim(e);
        if (!e.zero()) {
            fppoly df = fp_rem(Fp, fp_mul(Fp, u, e), f0);
            fppoly dh = fp_rem(Fp, fp_mul(Fp, s, e), h0);
            if (f.size() < df.c.size()) f.resize(df.c.size(), bigint(0));
            for (std::size_t i = 0; i < df.c.size(); ++i) f[i] += m * df.c[i];
            if (h.size() < dh.c.size()) h.resize(dh.c.size(), bigint(0));
            for (std::size_t i = 0; i < dh.c.size(); ++i) h[i] += m * dh.c[i];
        }
        m *= Fp.modulus();
    }
    zp_mod_coeffs(f, m);
    zp_mod_coeffs(h, m);
    return {f, h};
}

/// lift a list of monic mod-p factors of the monic g to factors mod >= target
inline void hensel_tree(const ring_fp& Fp, const zpoly& g, std::vector<zpoly> factors,
                        const bigint& target, std::vector<zpoly>& out)
{
    if (factors.size() == 1) {
        zpoly f = g;
        zp_mod_coeffs(f, target);
        out.push_back(std::move(f));
        return;
    }
    std::size_t half = factors.size() / 2;
    fppoly left{{1}}, right{{1}};
    for (std::size_t i = 0; i < half; ++i)
        left = fp_mul(Fp, left, fp_from_zpoly(Fp, factors[i]));
    for (std::size_t i = half; i < factors.size(); ++i)
        right = fp_mul(Fp, right, fp_from_zpoly(Fp, factors[i]));
    auto [f, h] =
        hensel_pair(Fp, g, zpoly_from_fp(left), zpoly_from_fp(right), target);
    std::vector<zpoly> first(factors.begin(), factors.begin() + half);
    std::vector<zpoly> rest(factors.begin() + half, factors.end());
    hensel_tree(Fp, f, std::move(first), target, out);
    hensel_tree(Fp, h, std::move(rest), target, out);
}

/// Zassenhaus factorization of a monic squarefree integer polynomial.
inline std::vector<zpoly> zassenhaus_monic(const zpoly& g)
{
    const int d = zp_deg(g);
    if (d <= 1) return {g};

    std::int64_t p = 0;
    for (std::int64_t cand :
         {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
          71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149}) {
        ring_fp F(cand);
        fppoly fg = fp_from_zpoly(F, g);
        if (fg.deg() != d) continue;
        if (fp_gcd(F, fg, fp_derivative(F, fg)).deg() == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw error("no small prime keeps the polynomial squarefree");
    ring_fp F(p);

    std::vector<fppoly> modular = fp_factor_squarefree(F, fp_from_zpoly(F, g));
    std::sort(modular.begin(), modular.end(),
              [](const fppoly& a, const fppoly& b) { return a.c < b.c; });
    if (modular.size() == 1) return {g};

    // Mignotte-style bound: factor coefficients are below 2^d * ||g||_2
    bigint norm2 = 0;
    for (const auto& c : g) norm2 += c * c;
    bigint bound = (boost::multiprecision::sqrt(norm2) + 1) << (d + 1);
    bigint target(p);
    while (target <= 2 * bound) target *= p;

    std::vector<zpoly> pool;
    {
        std::vector<zpoly> modular_z;
        modular_z.reserve(modular.size());
        for (const auto& f : modular) modular_z.push_back(zpoly_from_fp(f));
        hensel_tree(F, g, std::move(modular_z), target, pool);
    }

    // recombine subsets of lifted factors into true integer factors
    std::vector<zpoly> result;
    zpoly remaining = g;
    std::size_t take = 1;
    while (2 * take <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(take);
        for (std::size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            zpoly cand{bigint(1)};
            for (auto i : idx) cand = zp_mul(cand, pool[i]);
            zp_symmetric(cand, target);
            if (zp_divides(cand, remaining)) {
                result.push_back(cand);
                remaining = zp_div_exact(remaining, cand);
                std::vector<zpoly> next_pool;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        next_pool.push_back(pool[i]);
                pool = std::move(next_pool);
                found = true;
                break;
            }
            std::size_t k = take;
            while (k > 0 && idx[k - 1] == pool.size() - take + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++take;
    }
    if (zp_deg(remaining) > 0) result.push_back(remaining);
    return result;
}

/// clear denominators and content: primitive integer polynomial with
/// positive leading coefficient, equal to the input up to a rational unit
inline zpoly zpoly_from_rational(const laurent_poly<ring_q>& p)
{
    using boost::multiprecision::lcm;
    bigint den = 1;
    for (const auto& [e, c] : p.terms()) den = lcm(den, denominator(c));
    zpoly out(static_cast<std::size_t>(p.max_exp()) + 1, bigint(0));
    for (const auto& [e, c] : p.terms())
        out[static_cast<std::size_t>(e)] = numerator(c) * (den / denominator(c));
    bigint content = zp_content(out);
    if (content > 1)
        for (auto& c : out) c /= content;
    if (out.back() < 0)
        for (auto& c : out) c = -c;
    return out;
}

}  // namespace detail

/// Irreducible factorization over Q[t,t^-1]: normalized primes with
/// multiplicities, units (including powers of t) dropped, canonically sorted.
inline std::vector<poly_factor<ring_q>> factor_poly(const laurent_poly<ring_q>& p)
{
    using poly = laurent_poly<ring_q>;
    if (p.is_zero()) throw error("cannot factor the zero polynomial");
    const ring_q ring;
    std::vector<poly_factor<ring_q>> out;
    poly f = normalize(p);
    if (f.span() <= 0) return out;

    // Yun's squarefree decomposition (characteristic zero)
    std::vector<std::pair<poly, int>> squarefree;
    {
        poly fd = poly_derivative(f);
        poly u = poly_gcd(f, fd);
        poly v = u.span() > 0 ? exact_div(f, u) : f;
        poly w = u.span() > 0 ? exact_div(fd, u) : fd;
        int i = 1;
        while (v.span() > 0) {
            poly z = w - poly_derivative(v);
            poly h = poly_gcd(v, z);
            if (h.span() > 0) {
                squarefree.emplace_back(h, i);
                v = exact_div(v, h);
                w = exact_div(z, h);
            } else {
                w = z;
            }
            ++i;
        }
    }

    for (const auto& [sf, mult] : squarefree) {
        detail::zpoly g = detail::zpoly_from_rational(sf);
        const int d = detail::zp_deg(g);
        bigint lc = g.back();
        // monicize by t -> y/lc: coefficient of y^j picks up lc^(d-1-j)
        detail::zpoly gm(g.size());
        {
            bigint scale = 1;  // lc^(d-1-j), built from the top down
            for (int j = d; j >= 0; --j) {
                gm[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j)] * scale;
                if (j > 0) scale *= lc;
            }
            gm[static_cast<std::size_t>(d)] = 1;
        }
        for (const auto& factor_m : detail::zassenhaus_monic(gm)) {
            // map back y -> lc * t and renormalize to a monic rational prime
            poly q(ring);
            bigint scale = 1;
            for (std::size_t i = 0; i < factor_m.size(); ++i) {
                if (factor_m[i] != 0)
                    q.add_term(static_cast<std::int64_t>(i), bigrat(factor_m[i] * scale));
                scale *= lc;
            }
            out.push_back({normalize(q), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto ka = std::pair<std::int64_t, std::string>(a.prime.span(), to_string(a.prime));
        auto kb = std::pair<std::int64_t, std::string>(b.prime.span(), to_string(b.prime));
        return ka != kb ? ka < kb : a.multiplicity < b.multiplicity;
    });
    return out;
}

/// Irreducible factorization over F_p[t,t^-1] (squarefree split, then
/// distinct-degree plus equal-degree splitting with a deterministic seed).
inline std::vector<poly_factor<ring_fp>> factor_poly(const laurent_poly<ring_fp>& p)
{
    using poly = laurent_poly<ring_fp>;
    if (p.is_zero()) throw error("cannot factor the zero polynomial");
    const ring_fp F = p.ring();
    std::vector<poly_factor<ring_fp>> out;
    poly f0 = normalize(p);
    if (f0.span() <= 0) return out;

    detail::fppoly f;
    f.c.assign(static_cast<std::size_t>(f0.max_exp()) + 1, 0);
    for (const auto& [e, c] : f0.terms()) f.c[static_cast<std::size_t>(e)] = c;

    std::vector<std::pair<detail::fppoly, int>> squarefree;
    detail::fp_squarefree(F, f, 1, squarefree);
    for (const auto& [sf, mult] : squarefree) {
        for (const auto& irr : detail::fp_factor_squarefree(F, sf)) {
            poly q(F);
            for (std::size_t i = 0; i < irr.c.size(); ++i)
                if (irr.c[i] != 0) q.add_term(static_cast<std::int64_t>(i), irr.c[i]);
            out.push_back({normalize(q), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto ka = std::pair<std::int64_t, std::string>(a.prime.span(), to_string(a.prime));
        auto kb = std::pair<std::int64_t, std::string>(b.prime.span(), to_string(b.prime));
        return ka != kb ? ka < kb : a.multiplicity < b.multiplicity;
    });
    return out;
}

}  // namespace lf
