#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/matrix.hpp"

namespace mono {

template <FieldRing F>
struct RowEchelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <FieldRing F>
RowEchelon<F> row_reduce(Matrix<F> a) {
    const F& f = a.ring();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && f.is_zero(a(p, c)))
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        auto inv = f.inverse(a(r, c));
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) = f.mul(inv, a(r, j));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || f.is_zero(a(i, c)))
                continue;
            auto factor = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

template <FieldRing F>
std::size_t rank(const Matrix<F>& a) {
    return row_reduce(a).pivot_columns.size();
}

/// Basis of {x : a x = 0}, one vector per free column.
template <FieldRing F>
std::vector<std::vector<typename F::value_type>> nullspace(const Matrix<F>& a) {
    const F& f = a.ring();
    auto [r, pivots] = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<typename F::value_type>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<typename F::value_type> v(a.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = f.neg(r(k, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <FieldRing F>
Matrix<F> inverse(const Matrix<F>& a) {
    if (!a.is_square())
        throw NotInvertible("non-square matrix has no inverse");
    const std::size_t n = a.rows();
    auto [r, pivots] = row_reduce(hstack(a, Matrix<F>::identity(a.ring(), n)));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
        throw NotInvertible("singular matrix");
    return r.block(0, n, n, n);
}

template <FieldRing F>
std::optional<std::vector<typename F::value_type>> solve(const Matrix<F>& a,
                                                          const std::vector<typename F::value_type>& b) {
    const F& f = a.ring();
    Matrix<F> rhs(f, b.size(), 1, b);
    auto [r, pivots] = row_reduce(hstack(a, rhs));
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    std::vector<typename F::value_type> x(a.cols(), f.zero());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = r(k, a.cols());
    return x;
}

template <FieldRing F>
typename F::value_type determinant(const Matrix<F>& a) {
    if (!a.is_square())
        throw ShapeMismatch("determinant of a non-square matrix");
    const F& f = a.ring();
    Matrix<F> m = a;
    auto det = f.one();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t p = c;
        while (p < m.rows() && f.is_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            return f.zero();
        if (p != c) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        auto inv = f.inverse(m(c, c));
        for (std::size_t i = c + 1; i < m.rows(); ++i) {
            if (f.is_zero(m(i, c)))
                continue;
            auto factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

} // namespace mono
