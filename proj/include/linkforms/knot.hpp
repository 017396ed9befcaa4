#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkforms/linking.hpp"
#include "linkforms/matrix.hpp"
#include "linkforms/module.hpp"
#include "linkforms/words.hpp"

namespace lf {

// ---------------------------------------------------------------------------
// Seifert matrices
// ---------------------------------------------------------------------------

/// An integer Seifert matrix V (possibly 0x0). V - V^T must be the
/// unimodular skew intersection form: det(V - V^T) = 1, which forces even
/// size.
class seifert_matrix {
public:
    seifert_matrix() = default;

    explicit seifert_matrix(std::vector<std::vector<std::int64_t>> entries)
        : v_(std::move(entries))
    {
        const std::size_t n = v_.size();
        for (const auto& row : v_)
            if (row.size() != n) throw error("Seifert matrix must be square");
        if (n % 2 != 0)
            throw error("Seifert matrix must have even size (V - V^T is skew "
                        "unimodular)");
        ring_z zz;
        poly_mat<ring_z> skew(n, n, laurent_poly<ring_z>::zero(zz));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                skew.at(i, j) =
                    laurent_poly<ring_z>::from_int(zz, v_[i][j] - v_[j][i]);
        if (!det(skew).is_one())
            throw error("V - V^T is not unimodular: not a Seifert matrix");
    }

    std::size_t size() const { return v_.size(); }
    std::int64_t at(std::size_t i, std::size_t j) const { return v_[i][j]; }
    const std::vector<std::vector<std::int64_t>>& entries() const { return v_; }

    /// tV - V^T over the requested coefficient ring.
    template <class R>
    poly_mat<R> alexander_matrix(const R& ring) const
    {
        using poly = laurent_poly<R>;
        poly_mat<R> m(size(), size(), poly::zero(ring));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                poly e(ring);
                e.add_term(1, ring.from_int(v_[i][j]));
                e.add_term(0, ring.neg(ring.from_int(v_[j][i])));
                m.at(i, j) = e;
            }
        return m;
    }

    friend seifert_matrix connected_sum(const seifert_matrix& a, const seifert_matrix& b)
    {
        std::vector<std::vector<std::int64_t>> out(
            a.size() + b.size(), std::vector<std::int64_t>(a.size() + b.size(), 0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a.v_[i][j];
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[a.size() + i][a.size() + j] = b.v_[i][j];
        return seifert_matrix(std::move(out));
    }

private:
    std::vector<std::vector<std::int64_t>> v_;
};

/// normalize(det(tV - V^T)) over Z[t,t^-1]; Delta(1) = +-1 and conj-symmetry
/// up to units are classical consequences.
inline laurent_poly<ring_z> alexander_poly_seifert(const seifert_matrix& v)
{
    return normalize(det(v.alexander_matrix(ring_z{})));
}

// ---------------------------------------------------------------------------
// PD codes and Wirtinger presentations
// ---------------------------------------------------------------------------

/// A planar diagram code: one 4-tuple of edge labels per crossing, listed
/// counterclockwise starting from the incoming under-strand. Edges of an
/// n-crossing knot diagram are labelled 1..2n along the orientation.
struct pd_code {
    std::vector<std::array<std::int64_t, 4>> crossings;

    std::size_t size() const { return crossings.size(); }
};

/// A knot group presentation: generators x0..x(n-1) (conjugate meridians),
/// with one relator per crossing minus one redundant relator. Every relator
/// abelianizes to the trivial element when each generator maps to t.
struct wirtinger_presentation {
    std::size_t generators = 0;
    std::vector<word> relators;

    void validate() const
    {
        if (generators == 0)
            throw error("a Wirtinger presentation needs at least one generator");
        for (const auto& r : relators) {
            if (r.exponent_sum() != 0)
                throw error("relator does not abelianize to the trivial element: " +
                            r.str());
            if (r.max_generator() >= static_cast<int>(generators))
                throw error("relator mentions an undeclared generator: " + r.str());
        }
    }
};

namespace detail {

struct pd_edge_info {
    std::size_t arc = 0;  // Wirtinger generator index of the edge's arc
};

}  // namespace detail

/// Validate a PD code and derive the Wirtinger presentation: one generator
/// per arc (over-strand run), one conjugation relator per crossing, with the
/// last crossing's relator deleted as redundant.
inline wirtinger_presentation wirtinger_from_pd(const pd_code& pd)
{
    const std::size_t n = pd.size();
    if (n == 0) return {1, {}};  // the unknot: <x | >

    const std::int64_t edge_count = 2 * static_cast<std::int64_t>(n);
    auto next_edge = [edge_count](std::int64_t e) {
        return e % edge_count + 1;
    };

    std::vector<int> seen(static_cast<std::size_t>(edge_count) + 1, 0);
    for (const auto& x : pd.crossings)
        for (auto e : x) {
            if (e < 1 || e > edge_count)
                throw error("PD code: arc label " + std::to_string(e) +
                            " out of range 1.." + std::to_string(edge_count));
            ++seen[static_cast<std::size_t>(e)];
        }
    for (std::int64_t e = 1; e <= edge_count; ++e)
        if (seen[static_cast<std::size_t>(e)] != 2)
            throw error("PD code: arc label " + std::to_string(e) + " appears " +
                        std::to_string(seen[static_cast<std::size_t>(e)]) +
                        " times (expected 2)");

    // structural consistency of each crossing
    for (const auto& x : pd.crossings) {
        auto [a, b, c, d] = x;
        if (next_edge(a) != c)
            throw error("PD code: under-strand " + std::to_string(a) + " -> " +
                        std::to_string(c) + " is not consecutive");
        if (next_edge(b) != d && next_edge(d) != b)
            throw error("PD code: over-strand labels " + std::to_string(b) + ", " +
                        std::to_string(d) + " are not consecutive");
    }

    // arcs: edges merged across over-passages
    std::vector<std::size_t> parent(static_cast<std::size_t>(edge_count) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& x : pd.crossings) {
        auto rb = find(static_cast<std::size_t>(x[1]));
        auto rd = find(static_cast<std::size_t>(x[3]));
        if (rb != rd) parent[std::max(rb, rd)] = std::min(rb, rd);
    }
    // generator indices: arcs ordered by their minimal edge label
    std::vector<std::size_t> arc_of(static_cast<std::size_t>(edge_count) + 1, 0);
    std::vector<std::int64_t> roots;
    for (std::int64_t e = 1; e <= edge_count; ++e)
        if (find(static_cast<std::size_t>(e)) == static_cast<std::size_t>(e))
            roots.push_back(e);
    if (roots.size() != n)
        throw error("PD code: expected " + std::to_string(n) + " arcs, found " +
                    std::to_string(roots.size()));
    for (std::int64_t e = 1; e <= edge_count; ++e) {
        auto root = find(static_cast<std::size_t>(e));
        auto it = std::lower_bound(roots.begin(), roots.end(),
                                   static_cast<std::int64_t>(root));
        arc_of[static_cast<std::size_t>(e)] =
            static_cast<std::size_t>(it - roots.begin());
    }

    wirtinger_presentation pres;
    pres.generators = n;
    for (std::size_t ci = 0; ci + 1 < n; ++ci) {  // the last relator is redundant
        const auto& x = pd.crossings[ci];
        auto in_arc = static_cast<int>(arc_of[static_cast<std::size_t>(x[0])]);
        auto out_arc = static_cast<int>(arc_of[static_cast<std::size_t>(x[2])]);
        auto over_arc = static_cast<int>(arc_of[static_cast<std::size_t>(x[1])]);
        int sign = (next_edge(x[3]) == x[1]) ? +1 : -1;
        // out = over^sign * in * over^-sign
        word r = word::gen(out_arc, -1) * word::gen(over_arc, sign) *
                 word::gen(in_arc) * word::gen(over_arc, -sign);
        pres.relators.push_back(std::move(r));
    }
    pres.validate();
    return pres;
}

// ---------------------------------------------------------------------------
// Alexander matrices, modules, polynomials
// ---------------------------------------------------------------------------

/// The Fox matrix (d r_i / d x_j) of a presentation.
inline std::vector<std::vector<group_ring_elt>> fox_matrix(
    const wirtinger_presentation& pres)
{
    std::vector<std::vector<group_ring_elt>> out;
    out.reserve(pres.relators.size());
    for (const auto& r : pres.relators) {
        std::vector<group_ring_elt> row;
        row.reserve(pres.generators);
        for (std::size_t g = 0; g < pres.generators; ++g)
            row.push_back(fox_derivative(r, static_cast<int>(g)));
        out.push_back(std::move(row));
    }
    return out;
}

/// Abelianized Fox matrix with the last generator's column deleted (all
/// meridian columns are equivalent; the last is the fixed choice).
template <class R>
poly_mat<R> alexander_matrix(const wirtinger_presentation& pres, const R& ring)
{
    pres.validate();
    if (pres.relators.size() + 1 != pres.generators)
        throw error("presentation must have one relator fewer than generators");
    const std::size_t n1 = pres.relators.size();
    poly_mat<R> m(n1, n1, laurent_poly<R>::zero(ring));
    auto fox = fox_matrix(pres);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            m.at(i, j) = abelianize(fox[i][j], ring);
    return m;
}

/// The Alexander module of the presentation over the requested ring; its
/// order is the Alexander polynomial.
template <class R>
torsion_module<R> alexander_module(const wirtinger_presentation& pres, const R& ring)
{
    try {
        return torsion_module<R>(alexander_matrix(pres, ring));
    } catch (const error&) {
        throw error("presentation does not define a torsion module");
    }
}

template <class R>
laurent_poly<R> alexander_poly(const wirtinger_presentation& pres, const R& ring)
{
    return alexander_module(pres, ring).order();
}

// ---------------------------------------------------------------------------
// The Blanchfield pairing of a knot
// ---------------------------------------------------------------------------

/// The classical pairing on the Alexander module R^n/(tV - V^T)R^n:
///   Bl(a, b) = (1-t) * a^T ((tV - V^T)^-1)^T conj(b)  in Q(t)/Q[t,t^-1].
/// The transposed inverse is forced by well-definedness against the
/// presentation's relation columns; the (1-t) unit is the fixed convention.
/// The output is hermitian and nonsingular.
inline linking_pairing<ring_q> blanchfield_from_seifert(const seifert_matrix& v)
{
    ring_q qq;
    using poly = laurent_poly<ring_q>;
    poly_mat<ring_q> m = v.alexander_matrix(qq);
    torsion_module<ring_q> module(m);  // throws if det(tV - V^T) = 0
    poly one_minus_t = parse_poly(qq, "1 - t");
    frac_mat<ring_q> inv = inverse_over_fractions(m);
    typename linking_pairing<ring_q>::gram_table gram(
        v.size(), std::vector<fraction_class<ring_q>>(v.size(),
                                                      fraction_class<ring_q>::zero(qq)));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            gram[i][j] = reduce_mod_ring(inv.at(j, i).scaled(one_minus_t));
    return linking_pairing<ring_q>(std::move(module), std::move(gram));
}

/// The same pairing as an integer model (presentation and Gram lifts over
/// Z[t,t^-1]), ready to be tensored into any coefficient theory. The Gram
/// lift is (1-t) * adj((tV - V^T)^T) / det(tV - V^T).
inline pairing_model_z blanchfield_model_z(const seifert_matrix& v)
{
    ring_z zz;
    using poly = laurent_poly<ring_z>;
    const std::size_t n = v.size();
    poly_mat<ring_z> m = v.alexander_matrix(zz);
    poly dt = det(m);
    if (dt.is_zero()) throw error("det(tV - V^T) vanishes; the model is not torsion");
    poly one_minus_t = parse_poly(zz, "1 - t");
    poly_mat<ring_z> mt = m.transpose();
    frac_mat<ring_z> gram(n, n, fraction<ring_z>::zero(zz));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // adj(M^T)_{ij} = (-1)^{i+j} det(M^T with row j, col i removed)
            poly_mat<ring_z> minor(n - 1, n - 1, poly::zero(zz));
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc) = mt.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            poly cof = det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            gram.at(i, j) = fraction<ring_z>(cof * one_minus_t, dt);
        }
    return pairing_model_z(std::move(m), std::move(gram));
}

/// Satellite formula at the level of linking forms: the pattern pairing plus
/// the companion pairing tensored along t -> t^omega.
inline infection_result<ring_q> satellite_blanchfield(const linking_pairing<ring_q>& bp,
                                                      const linking_pairing<ring_q>& bc,
                                                      std::int64_t omega)
{
    return infect(bp, bc, omega);
}

// ---------------------------------------------------------------------------
// Finite-field representations and twisted Alexander polynomials
// ---------------------------------------------------------------------------

/// A k-dimensional representation of a Wirtinger presentation over F_p:
/// one invertible k x k matrix per generator, relators mapping to the
/// identity, all images sharing one characteristic polynomial (meridians of
/// a knot are conjugate; equal characteristic polynomials are the checked
/// necessary condition).
class representation {
public:
    using fp_matrix = std::vector<std::vector<std::int64_t>>;

    representation(std::int64_t p, std::size_t k, std::vector<fp_matrix> images,
                   const wirtinger_presentation& pres)
        : field_(p), k_(k), images_(std::move(images))
    {
        if (images_.size() != pres.generators)
            throw error("representation needs one image per generator");
        for (auto& img : images_) {
            if (img.size() != k_)
                throw error("representation image is not k x k");
            for (auto& row : img) {
                if (row.size() != k_) throw error("representation image is not k x k");
                for (auto& x : row) x = field_.from_int(x);
            }
        }
        inverses_.reserve(images_.size());
        for (const auto& img : images_) inverses_.push_back(invert(img));
        for (const auto& r : pres.relators)
            if (!is_identity(image_of_word(r)))
                throw error("representation does not kill relator " + r.str());
        if (!images_.empty()) {
            auto cp0 = char_poly(images_[0]);
            for (std::size_t g = 1; g < images_.size(); ++g)
                if (!(char_poly(images_[g]) == cp0))
                    throw error("generator images are not conjugate: characteristic "
                                "polynomials differ at generator " + std::to_string(g));
        }
    }

    const ring_fp& field() const { return field_; }
    std::size_t dim() const { return k_; }
    std::size_t generator_count() const { return images_.size(); }
    const fp_matrix& image(std::size_t g) const { return images_[g]; }

    fp_matrix image_of_word(const word& w) const
    {
        fp_matrix acc = identity();
        for (int l : w.letters()) {
            std::size_t g = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
            acc = mul(acc, l > 0 ? images_[g] : inverses_[g]);
        }
        return acc;
    }

    /// rho tensor t: the word's image scaled by t^(exponent sum), as a block
    /// over F_p[t,t^-1].
    poly_mat<ring_fp> twisted_image(const group_ring_elt& x) const
    {
        using poly = laurent_poly<ring_fp>;
        poly_mat<ring_fp> out(k_, k_, poly::zero(field_));
        for (const auto& [w, c] : x.terms()) {
            auto img = image_of_word(w);
            auto coeff = coeff_cast(ring_z{}, field_, c);
            if (coeff == 0) continue;
            std::int64_t e = w.exponent_sum();
            for (std::size_t i = 0; i < k_; ++i)
                for (std::size_t j = 0; j < k_; ++j)
                    out.at(i, j).add_term(e, field_.mul(coeff, img[i][j]));
        }
        return out;
    }

private:
    fp_matrix identity() const
    {
        fp_matrix m(k_, std::vector<std::int64_t>(k_, 0));
        for (std::size_t i = 0; i < k_; ++i) m[i][i] = 1;
        return m;
    }

    bool is_identity(const fp_matrix& m) const
    {
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j)
                if (m[i][j] != (i == j ? 1 : 0)) return false;
        return true;
    }

    fp_matrix mul(const fp_matrix& a, const fp_matrix& b) const
    {
        fp_matrix out(k_, std::vector<std::int64_t>(k_, 0));
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t l = 0; l < k_; ++l) {
                if (a[i][l] == 0) continue;
                for (std::size_t j = 0; j < k_; ++j)
                    out[i][j] = field_.add(out[i][j], field_.mul(a[i][l], b[l][j]));
            }
        return out;
    }

    fp_matrix invert(const fp_matrix& a) const
    {
        fp_matrix work = a, inv = identity();
        for (std::size_t c = 0; c < k_; ++c) {
            std::size_t pivot = k_;
            for (std::size_t r = c; r < k_; ++r)
                if (work[r][c] != 0) { pivot = r; break; }
            if (pivot == k_)
                throw error("representation image is singular over F_p");
            std::swap(work[pivot], work[c]);
            std::swap(inv[pivot], inv[c]);
            auto s = field_.inv(work[c][c]);
            for (std::size_t j = 0; j < k_; ++j) {
                work[c][j] = field_.mul(work[c][j], s);
                inv[c][j] = field_.mul(inv[c][j], s);
            }
            for (std::size_t r = 0; r < k_; ++r) {
                if (r == c || work[r][c] == 0) continue;
                auto f = work[r][c];
                for (std::size_t j = 0; j < k_; ++j) {
                    work[r][j] = field_.sub(work[r][j], field_.mul(f, work[c][j]));
                    inv[r][j] = field_.sub(inv[r][j], field_.mul(f, inv[c][j]));
                }
            }
        }
        return inv;
    }

    laurent_poly<ring_fp> char_poly(const fp_matrix& a) const
    {
        using poly = laurent_poly<ring_fp>;
        poly_mat<ring_fp> xi(k_, k_, poly::zero(field_));
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = 0; j < k_; ++j) {
                poly e(field_);
                if (i == j) e.add_term(1, 1);
                e.add_term(0, field_.neg(a[i][j]));
                xi.at(i, j) = e;
            }
        return det(xi);
    }

    ring_fp field_;
    std::size_t k_;
    std::vector<fp_matrix> images_;
    std::vector<fp_matrix> inverses_;
};

/// The twisted Alexander polynomial as the raw order of the twisted module:
/// det of the (rho tensor t)-Fox matrix with the last generator's column
/// deleted, normalized over F_p[t,t^-1]. No Wada denominator is divided out.
inline laurent_poly<ring_fp> twisted_alexander(const wirtinger_presentation& pres,
                                               const representation& rho)
{
    pres.validate();
    if (pres.relators.size() + 1 != pres.generators)
        throw error("presentation must have one relator fewer than generators");
    if (rho.generator_count() != pres.generators)
        throw error("representation size does not match the presentation");
    const ring_fp& F = rho.field();
    using poly = laurent_poly<ring_fp>;
    const std::size_t n1 = pres.relators.size();
    const std::size_t k = rho.dim();
    poly_mat<ring_fp> big(n1 * k, n1 * k, poly::zero(F));
    auto fox = fox_matrix(pres);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            auto block = rho.twisted_image(fox[i][j]);
            for (std::size_t bi = 0; bi < k; ++bi)
                for (std::size_t bj = 0; bj < k; ++bj)
                    big.at(i * k + bi, j * k + bj) = block.at(bi, bj);
        }
    poly d = det(big);
    if (d.is_zero())
        throw error("twisted chain complex is not torsion: determinant vanishes");
    return normalize(d);
}

/// Meridian-identifying presentation of a connected sum: both generator sets,
/// both relator lists, and the extra relator equating the distinguished
/// (first) meridians.
inline wirtinger_presentation connected_sum_presentation(
    const wirtinger_presentation& a, const wirtinger_presentation& b)
{
    a.validate();
    b.validate();
    wirtinger_presentation out;
    out.generators = a.generators + b.generators;
    out.relators = a.relators;
    for (const auto& r : b.relators) {
        word shifted;
        for (int l : r.letters()) {
            int idx = (l > 0 ? l : -l) - 1 + static_cast<int>(a.generators);
            shifted.push(l > 0 ? idx + 1 : -(idx + 1));
        }
        out.relators.push_back(std::move(shifted));
    }
    out.relators.push_back(word::gen(static_cast<int>(a.generators)) *
                           word::gen(0, -1));
    out.validate();
    return out;
}

/// The block representation of a connected sum: images of both factors side
/// by side. Construction re-validates everything, including that the two
/// distinguished meridians share an image.
inline representation block_representation(const representation& ra,
                                           const representation& rb,
                                           const wirtinger_presentation& sum_pres)
{
    if (ra.field().modulus() != rb.field().modulus() || ra.dim() != rb.dim())
        throw error("block representation needs matching fields and dimensions");
    std::vector<representation::fp_matrix> images;
    images.reserve(ra.generator_count() + rb.generator_count());
    for (std::size_t g = 0; g < ra.generator_count(); ++g)
        images.push_back(ra.image(g));
    for (std::size_t g = 0; g < rb.generator_count(); ++g)
        images.push_back(rb.image(g));
    return representation(ra.field().modulus(), ra.dim(), std::move(images), sum_pres);
}

// ---------------------------------------------------------------------------
// Knot input records (the file-level bundle)
// ---------------------------------------------------------------------------

struct representation_data {
    std::int64_t p = 0;
    std::size_t k = 0;
    std::vector<representation::fp_matrix> images;  // one per Wirtinger generator
};

struct knot_input {
    std::string name;
    std::optional<seifert_matrix> seifert;
    std::optional<pd_code> pd;
    std::optional<representation_data> rep;

    bool has_seifert() const { return seifert.has_value(); }
    bool has_pd() const { return pd.has_value(); }
};

}  // namespace lf
