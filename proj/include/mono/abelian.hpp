#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/matrix.hpp"
#include "mono/smith.hpp"

namespace mono {

/// Finitely generated abelian group in invariant-factor form
/// Z/d_1 + ... + Z/d_s + Z^r with d_i >= 2 and d_1 | d_2 | ... | d_s.
/// Two groups are isomorphic exactly when they compare equal.
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;

    FgAbelianGroup(std::size_t free_rank, std::vector<mpz_class> invariant_factors)
        : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw InvalidArgument("invariant factors must be >= 2");
            if (i && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
                throw InvalidArgument("invariant factors must form a divisibility chain");
        }
    }

    static FgAbelianGroup free(std::size_t rank) { return {rank, {}}; }
    static FgAbelianGroup cyclic(const mpz_class& order) { return {0, {order}}; }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& invariant_factors() const { return factors_; }
    std::size_t generator_count() const { return free_rank_ + factors_.size(); }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    bool is_torsion_free() const { return factors_.empty(); }

    /// "0", or e.g. "Z/3 + Z^2".
    std::string to_string() const {
        std::string s;
        for (const auto& d : factors_)
            s += (s.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
        if (free_rank_ == 1)
            s += (s.empty() ? "" : " + ") + std::string("Z");
        else if (free_rank_ > 1)
            s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank_);
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<mpz_class> factors_;
};

inline std::size_t rank(const FgAbelianGroup& g) { return g.free_rank(); }
inline bool is_trivial(const FgAbelianGroup& g) { return g.is_trivial(); }

/// A group written in fixed coordinates as Z/o_1 + ... + Z/o_n, where o_i == 0
/// stands for a copy of Z. Unlike FgAbelianGroup the coordinate order is kept,
/// so direct sums of summands stay addressable block by block.
class DiagonalGroup {
public:
    using element_type = std::vector<mpz_class>;
    using scalar_type = mpz_class;

    DiagonalGroup() = default;

    explicit DiagonalGroup(std::vector<mpz_class> orders) : orders_(std::move(orders)) {
        for (const auto& o : orders_)
            if (sgn(o) < 0 || o == 1)
                throw InvalidArgument("coordinate orders must be 0 (free) or >= 2");
    }

    /// Canonical generators: torsion first in invariant-factor order, then free.
    explicit DiagonalGroup(const FgAbelianGroup& g) {
        orders_ = g.invariant_factors();
        orders_.resize(orders_.size() + g.free_rank(), 0);
    }

    static DiagonalGroup free(std::size_t rank) { return DiagonalGroup(std::vector<mpz_class>(rank, 0)); }
    static DiagonalGroup uniform(std::size_t count, const mpz_class& order) {
        return DiagonalGroup(std::vector<mpz_class>(count, order));
    }

    std::size_t size() const { return orders_.size(); }
    const std::vector<mpz_class>& orders() const { return orders_; }
    const mpz_class& order(std::size_t i) const { return orders_[i]; }

    bool has_torsion() const {
        for (const auto& o : orders_)
            if (sgn(o) != 0)
                return true;
        return false;
    }

    void reduce(element_type& v) const {
        if (v.size() != orders_.size())
            throw ShapeMismatch("element length does not match group");
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(orders_[i]) != 0)
                v[i] = reduce_mod(v[i], orders_[i]);
    }

    element_type reduced(element_type v) const {
        reduce(v);
        return v;
    }

    element_type zero() const { return element_type(orders_.size(), 0); }

    element_type basis_vector(std::size_t i) const {
        auto v = zero();
        v[i] = 1;
        return v;
    }

    /// Relation lattice as columns: o_i e_i for every torsion coordinate.
    IntMatrix relations() const {
        std::vector<std::size_t> torsion;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            if (sgn(orders_[i]) != 0)
                torsion.push_back(i);
        IntMatrix r({}, orders_.size(), torsion.size());
        for (std::size_t k = 0; k < torsion.size(); ++k)
            r(torsion[k], k) = orders_[torsion[k]];
        return r;
    }

    FgAbelianGroup canonical() const;

    friend bool operator==(const DiagonalGroup&, const DiagonalGroup&) = default;

private:
    std::vector<mpz_class> orders_;
};

inline std::size_t coordinate_count(const DiagonalGroup& g) { return g.size(); }

inline DiagonalGroup direct_sum(std::span<const DiagonalGroup> parts) {
    std::vector<mpz_class> orders;
    for (const auto& p : parts)
        orders.insert(orders.end(), p.orders().begin(), p.orders().end());
    return DiagonalGroup(std::move(orders));
}

/// ℤ^k / (column span of `relations`) with explicit generators.
struct Quotient {
    FgAbelianGroup group;
    /// Columns: canonical generators expressed in the ambient ℤ^k coordinates.
    IntMatrix generators;
    /// Rows: linear forms sending a vector of ℤ^k to its canonical coordinates.
    IntMatrix coordinates;
};

inline Quotient quotient(std::size_t k, const IntMatrix& relations) {
    if (relations.rows() != k)
        throw ShapeMismatch("relation matrix has wrong row count");
    auto snf = smith_normal_form(relations);
    std::vector<std::size_t> keep;
    std::vector<mpz_class> factors;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.factor(i) != 1) {
            keep.push_back(i);
            factors.push_back(snf.factor(i));
        }
    for (std::size_t i = snf.rank; i < k; ++i)
        keep.push_back(i);
    Quotient q{FgAbelianGroup(k - snf.rank, std::move(factors)), IntMatrix({}, k, keep.size()),
               IntMatrix({}, keep.size(), k)};
    for (std::size_t c = 0; c < keep.size(); ++c) {
        for (std::size_t i = 0; i < k; ++i) {
            q.generators(i, c) = snf.left(i, keep[c]);
            q.coordinates(c, i) = snf.left_inverse(keep[c], i);
        }
        if (keep[c] < snf.rank)
            for (std::size_t i = 0; i < k; ++i)
                q.coordinates(c, i) = reduce_mod(q.coordinates(c, i), snf.factor(keep[c]));
    }
    return q;
}

inline FgAbelianGroup DiagonalGroup::canonical() const { return quotient(size(), relations()).group; }

/// Homomorphism between coordinatised groups. Column j holds the image of the
/// j-th source generator; entries on torsion rows are kept reduced.
class ModuleHom {
public:
    using space_type = DiagonalGroup;
    using matrix_type = IntMatrix;

    ModuleHom() = default;

    ModuleHom(DiagonalGroup source, DiagonalGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target_.size() || matrix_.cols() != source_.size())
            throw ShapeMismatch("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_.size()) +
                                "x" + std::to_string(source_.size()));
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            const auto& row_order = target_.order(i);
            for (std::size_t j = 0; j < matrix_.cols(); ++j) {
                auto& e = matrix_(i, j);
                if (sgn(row_order) != 0)
                    e = reduce_mod(e, row_order);
                const auto& col_order = source_.order(j);
                if (sgn(col_order) == 0 || sgn(e) == 0)
                    continue;
                // o_j * e must vanish in Z/row_order.
                bool ok = sgn(row_order) != 0 && mpz_divisible_p(mpz_class(col_order * e).get_mpz_t(),
                                                                 row_order.get_mpz_t());
                if (!ok)
                    throw IllDefinedHomomorphism("generator " + std::to_string(j) + " of order " +
                                                 col_order.get_str() + " cannot map to " + e.get_str() +
                                                 " in coordinate " + std::to_string(i));
            }
        }
    }

    static ModuleHom identity(const DiagonalGroup& g) { return {g, g, IntMatrix::identity({}, g.size())}; }
    static ModuleHom zero(const DiagonalGroup& source, const DiagonalGroup& target) {
        return {source, target, IntMatrix({}, target.size(), source.size())};
    }

    const DiagonalGroup& source() const { return source_; }
    const DiagonalGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool is_identity() const { return source_ == target_ && matrix_.is_identity(); }
    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const ModuleHom&, const ModuleHom&) = default;

private:
    DiagonalGroup source_;
    DiagonalGroup target_;
    IntMatrix matrix_;
};

inline const DiagonalGroup& source(const ModuleHom& f) { return f.source(); }
inline const DiagonalGroup& target(const ModuleHom& f) { return f.target(); }

inline ModuleHom make_map(const DiagonalGroup& source, const DiagonalGroup& target, IntMatrix matrix) {
    return {source, target, std::move(matrix)};
}

inline ModuleHom identity_map(const DiagonalGroup& g) { return ModuleHom::identity(g); }
inline ModuleHom zero_map(const DiagonalGroup& s, const DiagonalGroup& t) { return ModuleHom::zero(s, t); }

/// g ∘ f (apply f first).
inline ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
    if (!(f.target() == g.source()))
        throw ShapeMismatch("compose: target of the inner map is not the source of the outer map");
    return {f.source(), g.target(), g.matrix() * f.matrix()};
}

inline ModuleHom subtract(const ModuleHom& a, const ModuleHom& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw ShapeMismatch("subtract: endpoints differ");
    return {a.source(), a.target(), a.matrix() - b.matrix()};
}

inline DiagonalGroup::element_type apply(const ModuleHom& f, const DiagonalGroup::element_type& v) {
    return f.target().reduced(f.matrix().apply(f.source().reduced(v)));
}

inline DiagonalGroup::element_type scale(const DiagonalGroup& g, const mpz_class& a,
                                         DiagonalGroup::element_type v) {
    for (auto& x : v)
        x *= a;
    g.reduce(v);
    return v;
}

namespace detail {

// [A | relations(target)]: the solutions of f(x) = y in the target group are
// the x-parts of integer solutions of this system.
inline IntMatrix lifted_system(const ModuleHom& f) { return hstack(f.matrix(), f.target().relations()); }

// L / N where L is spanned by the columns of `l_gens` and contains the columns of `n_gens`.
inline Quotient subquotient(const IntMatrix& l_gens, const IntMatrix& n_gens, IntMatrix& l_basis) {
    l_basis = lattice_basis(l_gens);
    auto snf = smith_normal_form(l_basis);
    IntMatrix rel({}, l_basis.cols(), n_gens.cols());
    for (std::size_t j = 0; j < n_gens.cols(); ++j) {
        auto c = solve_integer(snf, n_gens.column(j));
        if (!c)
            throw Error("internal: relation lattice not contained in the ambient lattice");
        for (std::size_t i = 0; i < c->size(); ++i)
            rel(i, j) = (*c)[i];
    }
    return quotient(l_basis.cols(), rel);
}

} // namespace detail

/// Kernel of f as a canonical group together with its inclusion into the source.
struct HomKernel {
    FgAbelianGroup group;
    ModuleHom inclusion;

    std::vector<DiagonalGroup::element_type> generators() const {
        std::vector<DiagonalGroup::element_type> g;
        for (std::size_t j = 0; j < inclusion.matrix().cols(); ++j)
            g.push_back(inclusion.matrix().column(j));
        return g;
    }
};

inline HomKernel kernel(const ModuleHom& f) {
    const std::size_t n = f.source().size();
    IntMatrix full = integer_kernel(detail::lifted_system(f));
    IntMatrix lifted = full.block(0, 0, n, full.cols());
    IntMatrix basis;
    Quotient q = detail::subquotient(hstack(lifted, f.source().relations()), f.source().relations(), basis);
    IntMatrix gens = basis * q.generators;
    DiagonalGroup k(q.group);
    return {q.group, ModuleHom(k, f.source(), std::move(gens))};
}

/// Image of f as a canonical group together with its inclusion into the target.
struct HomImage {
    FgAbelianGroup group;
    ModuleHom inclusion;
};

inline HomImage image(const ModuleHom& f) {
    IntMatrix basis;
    IntMatrix rel = f.target().relations();
    Quotient q = detail::subquotient(hstack(f.matrix(), rel), rel, basis);
    IntMatrix gens = basis * q.generators;
    DiagonalGroup i(q.group);
    return {q.group, ModuleHom(i, f.target(), std::move(gens))};
}

/// Cokernel of f as a canonical group together with the projection from the target.
struct HomCokernel {
    FgAbelianGroup group;
    ModuleHom projection;
};

inline HomCokernel cokernel(const ModuleHom& f) {
    Quotient q = quotient(f.target().size(), detail::lifted_system(f));
    DiagonalGroup c(q.group);
    return {q.group, ModuleHom(f.target(), c, std::move(q.coordinates))};
}

/// An automorphism is a map with trivial kernel and trivial cokernel; the
/// determinant is not consulted, so torsion coordinates are handled uniformly.
inline bool is_automorphism(const ModuleHom& f) {
    return f.source().canonical() == f.target().canonical() && kernel(f).group.is_trivial() &&
           cokernel(f).group.is_trivial();
}

inline ModuleHom inverse(const ModuleHom& f) {
    if (!kernel(f).group.is_trivial())
        throw NotInvertible("homomorphism has a nontrivial kernel");
    auto snf = smith_normal_form(detail::lifted_system(f));
    const std::size_t n = f.source().size();
    IntMatrix inv({}, n, f.target().size());
    for (std::size_t k = 0; k < f.target().size(); ++k) {
        auto x = solve_integer(snf, f.target().basis_vector(k));
        if (!x)
            throw NotInvertible("homomorphism is not surjective");
        for (std::size_t i = 0; i < n; ++i)
            inv(i, k) = (*x)[i];
    }
    return {f.target(), f.source(), std::move(inv)};
}

/// True iff the subgroups generated by `a` and `b` coincide in `ambient`.
inline bool submodule_equal(std::span<const DiagonalGroup::element_type> a,
                            std::span<const DiagonalGroup::element_type> b, const DiagonalGroup& ambient) {
    auto contained = [&](std::span<const DiagonalGroup::element_type> xs,
                         std::span<const DiagonalGroup::element_type> ys) {
        IntMatrix span_ys({}, ambient.size(), ys.size());
        for (std::size_t j = 0; j < ys.size(); ++j) {
            if (ys[j].size() != ambient.size())
                throw ShapeMismatch("generator length does not match ambient group");
            for (std::size_t i = 0; i < ambient.size(); ++i)
                span_ys(i, j) = ys[j][i];
        }
        auto snf = smith_normal_form(hstack(span_ys, ambient.relations()));
        for (const auto& x : xs) {
            if (x.size() != ambient.size())
                throw ShapeMismatch("generator length does not match ambient group");
            if (!solve_integer(snf, x))
                return false;
        }
        return true;
    };
    return contained(a, b) && contained(b, a);
}

} // namespace mono
