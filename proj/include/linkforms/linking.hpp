#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkforms/fraction.hpp"
#include "linkforms/matrix.hpp"
#include "linkforms/module.hpp"
#include "linkforms/smith.hpp"

namespace lf {

// ---------------------------------------------------------------------------
// Module maps
// ---------------------------------------------------------------------------

/// A homomorphism between finitely presented torsion modules, given by the
/// matrix whose columns are the images of the source generators. Construction
/// verifies well-definedness: matrix * (source presentation) must lie in the
/// column span of the target presentation.
template <class R>
class module_map {
public:
    module_map(torsion_module<R> source, torsion_module<R> target, poly_mat<R> matrix)
        : source_(std::move(source)), target_(std::move(target)),
          matrix_(std::move(matrix))
    {
        static_assert(R::is_field, "module maps are verified over field coefficients");
        if (matrix_.rows() != target_.generators() ||
            matrix_.cols() != source_.generators())
            throw error("module map matrix has the wrong shape");
        auto snf = smith_normal_form(target_.presentation());
        poly_mat<R> image = matrix_ * source_.presentation();
        for (std::size_t j = 0; j < image.cols(); ++j)
            if (!solve_linear(snf, image.column(j)))
                throw error("module map is not well defined on generator " +
                            std::to_string(j));
    }

    static module_map identity(const torsion_module<R>& m)
    {
        return module_map(m, m, poly_identity(m.ring(), m.generators()));
    }

    const torsion_module<R>& source() const { return source_; }
    const torsion_module<R>& target() const { return target_; }
    const poly_mat<R>& matrix() const { return matrix_; }

    std::vector<laurent_poly<R>> image_of_generator(std::size_t j) const
    {
        return matrix_.column(j);
    }

    bool is_surjective() const
    {
        const std::size_t m = target_.generators();
        if (m == 0) return true;
        poly_mat<R> stacked(m, matrix_.cols() + m, matrix_.zero_entry());
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < matrix_.cols(); ++j)
                stacked.at(i, j) = matrix_.at(i, j);
            for (std::size_t j = 0; j < m; ++j)
                stacked.at(i, matrix_.cols() + j) = target_.presentation().at(i, j);
        }
        return columns_generate_free_module(stacked);
    }

    /// Bijectivity. A surjection of finite-length modules over the PID with
    /// associate orders has a kernel of unit order, hence is injective.
    bool is_isomorphism() const
    {
        return associates(source_.order(), target_.order()) && is_surjective();
    }

private:
    torsion_module<R> source_;
    torsion_module<R> target_;
    poly_mat<R> matrix_;
};

// ---------------------------------------------------------------------------
// Linking pairings
// ---------------------------------------------------------------------------

template <class R>
struct pairing_class_result {
    bool hermitian;
    bool nonsingular;
};

/// A linking pairing on a torsion module, sesquilinear with values in
/// Q(t)/R[t,t^-1]: linear in the first slot, conjugate-linear in the second.
/// gram[i][j] = B(e_i, e_j) on the presentation's generators.
template <class R>
class linking_pairing {
public:
    using gram_table = std::vector<std::vector<fraction_class<R>>>;

    /// Verified construction: checks the Gram shape and the well-definedness
    /// invariant (the pairing vanishes against every relation column, in both
    /// slots). Throws naming the offending relation/generator pair.
    linking_pairing(torsion_module<R> module, gram_table gram)
        : module_(std::move(module)), gram_(std::move(gram))
    {
        check_shape();
        if (auto defect = relation_defect(module_, gram_))
            throw error("pairing is not well defined on the presented module: " +
                        *defect);
    }

    const torsion_module<R>& module() const { return module_; }
    const gram_table& gram() const { return gram_; }
    const R& ring() const { return module_.ring(); }
    std::size_t generators() const { return module_.generators(); }
    const fraction_class<R>& gram_at(std::size_t i, std::size_t j) const
    {
        return gram_[i][j];
    }

    bool gram_equal(const linking_pairing& other) const
    {
        if (generators() != other.generators()) return false;
        for (std::size_t i = 0; i < generators(); ++i)
            for (std::size_t j = 0; j < generators(); ++j)
                if (gram_[i][j] != other.gram_[i][j]) return false;
        return true;
    }

    /// Relation-vanishing invariant, checked explicitly. Returns a witness
    /// description for the first failing cell, or nullopt when it holds.
    static std::optional<std::string> relation_defect(const torsion_module<R>& module,
                                                      const gram_table& gram)
    {
        const std::size_t n = module.generators();
        const auto& pres = module.presentation();
        for (std::size_t c = 0; c < n; ++c) {
            auto rel = pres.column(c);
            for (std::size_t j = 0; j < n; ++j) {
                fraction_class<R> left = accumulate_column(module.ring(), gram, rel, j);
                if (!left.is_zero())
                    return "B(relation " + std::to_string(c) + ", e_" +
                           std::to_string(j) + ") = " + to_string(left);
                fraction_class<R> right = accumulate_row(module.ring(), gram, rel, j);
                if (!right.is_zero())
                    return "B(e_" + std::to_string(j) + ", relation " +
                           std::to_string(c) + ") = " + to_string(right);
            }
        }
        return std::nullopt;
    }

    std::optional<std::string> verify() const
    {
        return relation_defect(module_, gram_);
    }

private:
    struct trusted_tag {};

    linking_pairing(trusted_tag, torsion_module<R> module, gram_table gram)
        : module_(std::move(module)), gram_(std::move(gram))
    {
        check_shape();
    }

    void check_shape() const
    {
        if (gram_.size() != module_.generators())
            throw error("Gram table size does not match the generator count");
        for (const auto& row : gram_)
            if (row.size() != module_.generators())
                throw error("Gram table is not square");
    }

    static fraction_class<R> accumulate_column(const R& ring, const gram_table& gram,
                                               const std::vector<laurent_poly<R>>& rel,
                                               std::size_t j)
    {
        fraction_class<R> acc(ring);
        for (std::size_t i = 0; i < rel.size(); ++i) {
            if (rel[i].is_zero() || gram[i][j].is_zero()) continue;
            acc = acc + gram[i][j].scaled(rel[i]);
        }
        return acc;
    }

    static fraction_class<R> accumulate_row(const R& ring, const gram_table& gram,
                                            const std::vector<laurent_poly<R>>& rel,
                                            std::size_t i)
    {
        fraction_class<R> acc(ring);
        for (std::size_t j = 0; j < rel.size(); ++j) {
            if (rel[j].is_zero() || gram[i][j].is_zero()) continue;
            acc = acc + gram[i][j].scaled(rel[j].conj());
        }
        return acc;
    }

    torsion_module<R> module_;
    gram_table gram_;

    template <class S>
    friend linking_pairing<S> orthogonal_sum(const linking_pairing<S>&,
                                             const linking_pairing<S>&);
    template <class S>
    friend linking_pairing<S> pullback(const module_map<S>&, const linking_pairing<S>&);
    template <class From, class To>
    friend linking_pairing<To> tensor_pairing(const winding_morphism<From, To>&,
                                              const linking_pairing<From>&);
};

/// The pairing of a hermitian presentation A: the module R^n/AR^n with
/// B(a, b) = a^T conj(A^-1) conj(b), the algebraic form of the duality
/// composite for torsion modules over the implemented PIDs. The input must
/// be exactly hermitian (conj(A)^T = A) and nonsingular.
template <class R>
linking_pairing<R> pairing_from_presentation(const poly_mat<R>& a)
{
    static_assert(R::is_field, "pairings need field coefficients");
    if (!a.is_square()) throw error("presentation matrix must be square");
    if (!is_hermitian_matrix(a)) {
        auto [i, j] = hermitian_defect(a);
        throw error("presentation matrix is not hermitian at cell (" +
                    std::to_string(i) + ", " + std::to_string(j) +
                    "): entry != conj of transposed entry");
    }
    torsion_module<R> module(a);
    frac_mat<R> inv = inverse_over_fractions(a);
    typename linking_pairing<R>::gram_table gram(
        a.rows(), std::vector<fraction_class<R>>(
                      a.rows(), fraction_class<R>::zero(a.zero_entry().ring())));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            gram[i][j] = reduce_mod_ring(inv.at(i, j).conj());
    return linking_pairing<R>(std::move(module), std::move(gram));
}

/// B(a, b) = sum_i sum_j a_i * gram[i][j] * conj(b_j), reduced mod R.
template <class R>
fraction_class<R> evaluate(const linking_pairing<R>& b,
                           const std::vector<laurent_poly<R>>& x,
                           const std::vector<laurent_poly<R>>& y)
{
    const std::size_t n = b.generators();
    if (x.size() != n || y.size() != n)
        throw error("evaluation vectors must match the generator count");
    fraction_class<R> acc(b.ring());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero() || b.gram_at(i, j).is_zero()) continue;
            acc = acc + b.gram_at(i, j).scaled(x[i] * y[j].conj());
        }
    }
    return acc;
}

/// Hermitian-ness (gram[i][j] = conj(gram[j][i]) as classes) and
/// nonsingularity (the adjoint into the dual module is bijective, decided
/// via Smith normal form).
template <class R>
pairing_class_result<R> classify(const linking_pairing<R>& b)
{
    static_assert(R::is_field, "classification needs field coefficients");
    const std::size_t n = b.generators();
    bool hermitian = true;
    for (std::size_t i = 0; i < n && hermitian; ++i)
        for (std::size_t j = i; j < n && hermitian; ++j)
            if (b.gram_at(i, j) != b.gram_at(j, i).conj()) hermitian = false;

    // adjoint: M -> R^n/conj(A)^T with matrix conj(A^T G), G a lift of the Gram
    const auto& a = b.module().presentation();
    const R& ring = b.ring();
    poly_mat<R> w(n, n, laurent_poly<R>::zero(ring));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            fraction<R> acc = fraction<R>::zero(ring);
            for (std::size_t k = 0; k < n; ++k) {
                if (a.at(k, i).is_zero() || b.gram_at(k, j).is_zero()) continue;
                acc = acc + b.gram_at(k, j).rep().scaled(a.at(k, i));
            }
            if (!acc.is_ring_element())
                throw error("adjoint matrix escapes the ring; the pairing is not "
                            "well defined");
            w.at(i, j) = acc.is_zero()
                             ? laurent_poly<R>::zero(ring)
                             : exact_div(acc.num(), acc.den()).conj();
        }
    torsion_module<R> dual(a.conj_transpose());
    module_map<R> adjoint(b.module(), std::move(dual), std::move(w));
    return {hermitian, adjoint.is_isomorphism()};
}

/// Block sum of pairings: direct sum of the modules, block-diagonal Gram,
/// zero classes across the blocks. The well-definedness invariant holds
/// blockwise, inherited from the (already verified) summands.
template <class R>
linking_pairing<R> orthogonal_sum(const linking_pairing<R>& b1,
                                  const linking_pairing<R>& b2)
{
    if (!b1.ring().same(b2.ring()))
        throw error("orthogonal sum of pairings over different base rings");
    const std::size_t n1 = b1.generators(), n2 = b2.generators();
    typename linking_pairing<R>::gram_table gram(
        n1 + n2,
        std::vector<fraction_class<R>>(n1 + n2, fraction_class<R>::zero(b1.ring())));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) gram[i][j] = b1.gram_at(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) gram[n1 + i][n1 + j] = b2.gram_at(i, j);
    return linking_pairing<R>(typename linking_pairing<R>::trusted_tag{},
                              direct_sum(b1.module(), b2.module()), std::move(gram));
}

/// The two block inclusions into an orthogonal sum (left summand first).
template <class R>
std::pair<module_map<R>, module_map<R>> block_inclusions(
    const torsion_module<R>& left, const torsion_module<R>& right,
    const torsion_module<R>& sum)
{
    const R& ring = left.ring();
    const std::size_t n1 = left.generators(), n2 = right.generators();
    poly_mat<R> mleft(n1 + n2, n1, laurent_poly<R>::zero(ring));
    for (std::size_t i = 0; i < n1; ++i)
        mleft.at(i, i) = laurent_poly<R>::from_int(ring, 1);
    poly_mat<R> mright(n1 + n2, n2, laurent_poly<R>::zero(ring));
    for (std::size_t i = 0; i < n2; ++i)
        mright.at(n1 + i, i) = laurent_poly<R>::from_int(ring, 1);
    return {module_map<R>(left, sum, std::move(mleft)),
            module_map<R>(right, sum, std::move(mright))};
}

/// psi^* B: gram'[i][j] = B(psi(e_i), psi(e_j)) on the source module.
template <class R>
linking_pairing<R> pullback(const module_map<R>& psi, const linking_pairing<R>& b)
{
    if (!(psi.target() == b.module()))
        throw error("pullback: the map's target is not the pairing's module");
    const std::size_t n = psi.source().generators();
    typename linking_pairing<R>::gram_table gram(
        n, std::vector<fraction_class<R>>(n, fraction_class<R>::zero(b.ring())));
    std::vector<std::vector<laurent_poly<R>>> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) images.push_back(psi.image_of_generator(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram[i][j] = evaluate(b, images[i], images[j]);
    return linking_pairing<R>(typename linking_pairing<R>::trusted_tag{},
                              psi.source(), std::move(gram));
}

/// psi is a morphism of linking pairings (M, B_M) -> (N, B_N):
/// pullback(psi, B_N) = B_M as Gram tables of classes.
template <class R>
bool is_morphism(const module_map<R>& psi, const linking_pairing<R>& bm,
                 const linking_pairing<R>& bn)
{
    if (!(psi.source() == bm.module()) || !(psi.target() == bn.module()))
        throw error("is_morphism: map endpoints do not match the pairings");
    return pullback(psi, bn).gram_equal(bm);
}

/// Isomorphism of linking pairings: a morphism whose underlying module map
/// is bijective.
template <class R>
bool is_isometry(const module_map<R>& psi, const linking_pairing<R>& bm,
                 const linking_pairing<R>& bn)
{
    return psi.is_isomorphism() && is_morphism(psi, bm, bn);
}

/// Tensoring a pairing along t -> t^omega within one coefficient field.
/// The substituted canonical representatives stay canonical (substitution is
/// an injective ring endomorphism preserving R and coprimality), so the Gram
/// transports term by term; well-definedness is inherited through the
/// substitution homomorphism.
template <class From, class To>
linking_pairing<To> tensor_pairing(const winding_morphism<From, To>& m,
                                   const linking_pairing<From>& b)
{
    torsion_module<To> module = tensor_along(m, b.module());
    const std::size_t n = b.generators();
    typename linking_pairing<To>::gram_table gram(
        n, std::vector<fraction_class<To>>(n, fraction_class<To>::zero(m.target)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram[i][j] = substitute(b.gram_at(i, j), m);
    return linking_pairing<To>(typename linking_pairing<To>::trusted_tag{},
                               std::move(module), std::move(gram));
}

/// An integer model of a pairing (presentation and Gram lifts over
/// Z[t,t^-1]), the shape in which a knot's classical pairing is tensored
/// into a field-coefficient theory.
struct pairing_model_z {
    poly_mat<ring_z> presentation;
    frac_mat<ring_z> gram;

    pairing_model_z(poly_mat<ring_z> pres, frac_mat<ring_z> g)
        : presentation(std::move(pres)), gram(std::move(g))
    {
        if (!presentation.is_square() || gram.rows() != presentation.rows() ||
            gram.cols() != presentation.cols())
            throw error("pairing model shapes do not match");
    }
};

/// R tensor_{Z[t,t^-1]} Bl: substitute the integer model along the morphism
/// and reduce every Gram entry to its canonical class in the target.
template <class To>
linking_pairing<To> tensor_model(const winding_morphism<ring_z, To>& m,
                                 const pairing_model_z& model)
{
    torsion_module<To> module{substitute(model.presentation, m)};
    const std::size_t n = model.gram.rows();
    typename linking_pairing<To>::gram_table gram(
        n, std::vector<fraction_class<To>>(n, fraction_class<To>::zero(m.target)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram[i][j] = reduce_mod_ring(substitute(model.gram.at(i, j), m));
    // cold path: run the full verified construction
    return linking_pairing<To>(std::move(module), std::move(gram));
}

template <class R>
struct infection_result {
    linking_pairing<R> pairing;
    module_map<R> host_inclusion;       ///< psi restricted to the host block
    module_map<R> infection_inclusion;  ///< psi restricted to the tensored block
};

namespace detail {

template <class R>
infection_result<R> assemble_infection(const linking_pairing<R>& host,
                                       linking_pairing<R> tensored)
{
    linking_pairing<R> sum = orthogonal_sum(host, tensored);
    auto [left, right] =
        block_inclusions(host.module(), tensored.module(), sum.module());
    return {std::move(sum), std::move(left), std::move(right)};
}

}  // namespace detail

/// Infection of an algebraic host pairing by a knot pairing over the same
/// field: Bl_host + (Bl_J tensored along t -> t^omega), with the block
/// inclusions witnessing the decomposition.
template <class R>
infection_result<R> infect(const linking_pairing<R>& host, const linking_pairing<R>& bj,
                           std::int64_t omega)
{
    return detail::assemble_infection(host, tensor_pairing(winding(host.ring(), omega), bj));
}

/// Infection with the knot side given as an integer model.
template <class R>
infection_result<R> infect(const linking_pairing<R>& host, const pairing_model_z& bj,
                           const winding_morphism<ring_z, R>& m)
{
    return detail::assemble_infection(host, tensor_model(m, bj));
}

template <class R>
struct infected_module_result {
    torsion_module<R> module;
    module_map<R> host_inclusion;
    module_map<R> infection_inclusion;
};

/// Module-level shadow of the infection: M_Y + (M_J tensored up), with the
/// block inclusions realizing the isomorphism on generators.
template <class From, class To>
infected_module_result<To> infected_module(const torsion_module<To>& host,
                                           const torsion_module<From>& mj,
                                           const winding_morphism<From, To>& m)
{
    torsion_module<To> tens = tensor_along(m, mj);
    torsion_module<To> sum = direct_sum(host, tens);
    auto [left, right] = block_inclusions(host, tens, sum);
    return {std::move(sum), std::move(left), std::move(right)};
}

}  // namespace lf
