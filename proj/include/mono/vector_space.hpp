#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/field_linalg.hpp"
#include "mono/matrix.hpp"

namespace mono {

/// Isomorphism class of a finite-dimensional vector space.
struct Dimension {
    std::size_t value = 0;

    std::string to_string() const { return std::to_string(value); }
    friend bool operator==(const Dimension&, const Dimension&) = default;
};

inline std::size_t rank(const Dimension& d) { return d.value; }
inline bool is_trivial(const Dimension& d) { return d.value == 0; }

/// F^n with its standard basis.
template <FieldRing F>
struct VectorSpace {
    using element_type = std::vector<typename F::value_type>;
    using scalar_type = typename F::value_type;

    F field;
    std::size_t dim = 0;

    std::size_t size() const { return dim; }
    element_type zero() const { return element_type(dim, field.zero()); }
    element_type basis_vector(std::size_t i) const {
        auto v = zero();
        v[i] = field.one();
        return v;
    }
    void reduce(element_type& v) const {
        if (v.size() != dim)
            throw ShapeMismatch("vector length does not match space");
        for (auto& x : v)
            field.normalize(x);
    }
    element_type reduced(element_type v) const {
        reduce(v);
        return v;
    }
    bool has_torsion() const { return false; }

    friend bool operator==(const VectorSpace&, const VectorSpace&) = default;
};

template <FieldRing F>
std::size_t coordinate_count(const VectorSpace<F>& v) {
    return v.dim;
}

template <FieldRing F>
VectorSpace<F> direct_sum(std::span<const VectorSpace<F>> parts) {
    if (parts.empty())
        throw InvalidArgument("direct sum of no spaces has no field");
    VectorSpace<F> s{parts.front().field, 0};
    for (const auto& p : parts) {
        if (!(p.field == s.field))
            throw ShapeMismatch("direct sum over different fields");
        s.dim += p.dim;
    }
    return s;
}

/// Linear map F^cols -> F^rows given by its matrix.
template <FieldRing F>
class LinearMap {
public:
    using space_type = VectorSpace<F>;
    using matrix_type = Matrix<F>;

    LinearMap() = default;
    explicit LinearMap(Matrix<F> m) : matrix_(std::move(m)) {}

    VectorSpace<F> source() const { return {matrix_.ring(), matrix_.cols()}; }
    VectorSpace<F> target() const { return {matrix_.ring(), matrix_.rows()}; }
    const Matrix<F>& matrix() const { return matrix_; }

    bool is_identity() const { return matrix_.is_identity(); }
    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    Matrix<F> matrix_;
};

template <FieldRing F>
VectorSpace<F> source(const LinearMap<F>& f) {
    return f.source();
}
template <FieldRing F>
VectorSpace<F> target(const LinearMap<F>& f) {
    return f.target();
}

template <FieldRing F>
LinearMap<F> make_map(const VectorSpace<F>& s, const VectorSpace<F>& t, Matrix<F> m) {
    if (m.rows() != t.dim || m.cols() != s.dim)
        throw ShapeMismatch("linear map matrix does not match its spaces");
    return LinearMap<F>(std::move(m));
}

template <FieldRing F>
LinearMap<F> identity_map(const VectorSpace<F>& v) {
    return LinearMap<F>(Matrix<F>::identity(v.field, v.dim));
}

template <FieldRing F>
LinearMap<F> zero_map(const VectorSpace<F>& s, const VectorSpace<F>& t) {
    return LinearMap<F>(Matrix<F>(s.field, t.dim, s.dim));
}

template <FieldRing F>
LinearMap<F> compose(const LinearMap<F>& g, const LinearMap<F>& f) {
    if (g.matrix().cols() != f.matrix().rows())
        throw ShapeMismatch("compose: target of the inner map is not the source of the outer map");
    return LinearMap<F>(g.matrix() * f.matrix());
}

template <FieldRing F>
LinearMap<F> subtract(const LinearMap<F>& a, const LinearMap<F>& b) {
    return LinearMap<F>(a.matrix() - b.matrix());
}

template <FieldRing F>
std::vector<typename F::value_type> apply(const LinearMap<F>& f, const std::vector<typename F::value_type>& v) {
    return f.matrix().apply(v);
}

template <FieldRing F>
std::vector<typename F::value_type> scale(const VectorSpace<F>& s, const typename F::value_type& a,
                                          std::vector<typename F::value_type> v) {
    for (auto& x : v)
        x = s.field.mul(a, x);
    return v;
}

template <FieldRing F>
struct LinearKernel {
    Dimension group;
    std::vector<std::vector<typename F::value_type>> basis;

    const std::vector<std::vector<typename F::value_type>>& generators() const& { return basis; }
    std::vector<std::vector<typename F::value_type>> generators() && { return std::move(basis); }
};

template <FieldRing F>
LinearKernel<F> kernel(const LinearMap<F>& f) {
    auto basis = nullspace(f.matrix());
    Dimension d{basis.size()};
    return {d, std::move(basis)};
}

template <FieldRing F>
struct LinearImage {
    Dimension group;
};

template <FieldRing F>
LinearImage<F> image(const LinearMap<F>& f) {
    return {Dimension{rank(f.matrix())}};
}

template <FieldRing F>
struct LinearCokernel {
    Dimension group;
};

template <FieldRing F>
LinearCokernel<F> cokernel(const LinearMap<F>& f) {
    return {Dimension{f.matrix().rows() - rank(f.matrix())}};
}

template <FieldRing F>
bool is_automorphism(const LinearMap<F>& f) {
    return f.matrix().is_square() && rank(f.matrix()) == f.matrix().rows();
}

template <FieldRing F>
LinearMap<F> inverse(const LinearMap<F>& f) {
    return LinearMap<F>(inverse(f.matrix()));
}

namespace detail {
template <FieldRing F>
Matrix<F> columns_of(const VectorSpace<F>& s, std::span<const std::vector<typename F::value_type>> vs) {
    Matrix<F> m(s.field, s.dim, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j].size() != s.dim)
            throw ShapeMismatch("generator length does not match ambient space");
        for (std::size_t i = 0; i < s.dim; ++i)
            m.set(i, j, vs[j][i]);
    }
    return m;
}
} // namespace detail

template <FieldRing F>
bool submodule_equal(const std::vector<std::vector<typename F::value_type>>& a,
                     const std::vector<std::vector<typename F::value_type>>& b, const VectorSpace<F>& ambient) {
    auto ma = detail::columns_of(ambient, a);
    auto mb = detail::columns_of(ambient, b);
    auto ra = rank(ma);
    return ra == rank(mb) && ra == rank(hstack(ma, mb));
}

} // namespace mono
