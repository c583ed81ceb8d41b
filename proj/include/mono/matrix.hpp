#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/ring.hpp"

namespace mono {

/// Dense row-major matrix with entries in canonical form for its ring.
template <CoefficientRing R>
class Matrix {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    explicit Matrix(R ring = R{}, std::size_t rows = 0, std::size_t cols = 0)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, ring_.zero()) {}

    Matrix(R ring, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw ShapeMismatch("matrix entry count does not match its shape");
        for (auto& e : entries_)
            ring_.normalize(e);
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    static Matrix from_rows(R ring, const std::vector<std::vector<value_type>>& rows) {
        std::size_t n = rows.empty() ? 0 : rows.front().size();
        std::vector<value_type> flat;
        flat.reserve(rows.size() * n);
        for (const auto& row : rows) {
            if (row.size() != n)
                throw ShapeMismatch("ragged matrix rows");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Matrix(std::move(ring), rows.size(), n, std::move(flat));
    }

    static Matrix identity(R ring, std::size_t n) {
        Matrix m(std::move(ring), n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = m.ring_.one();
        return m;
    }

    const R& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::span<const value_type> entries() const { return entries_; }

    const value_type& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    // Callers writing through this reference keep the entry canonical.
    value_type& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    void set(std::size_t i, std::size_t j, value_type v) {
        ring_.normalize(v);
        entries_[i * cols_ + j] = std::move(v);
    }

    std::vector<value_type> row(std::size_t i) const {
        return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    std::vector<value_type> column(std::size_t j) const {
        std::vector<value_type> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c.push_back((*this)(i, j));
        return c;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw ShapeMismatch("block outside matrix");
        Matrix b(ring_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw ShapeMismatch("block outside matrix");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix transpose() const {
        Matrix t(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!ring_.is_zero(e))
                return false;
        return true;
    }

    bool is_identity() const {
        if (!is_square())
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? ring_.one() : ring_.zero()))
                    return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            c.entries_[k] = a.ring_.add(a.entries_[k], b.entries_[k]);
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            c.entries_[k] = a.ring_.sub(a.entries_[k], b.entries_[k]);
        return c;
    }

    friend Matrix operator-(const Matrix& a) {
        Matrix c(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            c.entries_[k] = a.ring_.neg(a.entries_[k]);
        return c;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeMismatch("matrix product: inner dimensions differ (" + std::to_string(a.cols_) + " vs " +
                                std::to_string(b.rows_) + ")");
        Matrix c(a.ring_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (a.ring_.is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        for (auto& e : c.entries_)
            c.ring_.normalize(e);
        return c;
    }

    friend Matrix operator*(const value_type& s, const Matrix& a) {
        Matrix c(a.ring_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            c.entries_[k] = a.ring_.mul(s, a.entries_[k]);
        return c;
    }

    std::vector<value_type> apply(std::span<const value_type> v) const {
        if (v.size() != cols_)
            throw ShapeMismatch("vector length does not match matrix columns");
        std::vector<value_type> out(rows_, ring_.zero());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
            ring_.normalize(out[i]);
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j)
                    s += ", ";
                s += ring_.format((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void require_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw ShapeMismatch("matrix shapes differ");
    }

    R ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> entries_;
};

using IntMatrix = Matrix<Integers>;
using RationalMatrix = Matrix<Rationals>;

/// Side-by-side concatenation [a | b].
template <CoefficientRing R>
Matrix<R> hstack(const Matrix<R>& a, const Matrix<R>& b) {
    if (a.rows() != b.rows())
        throw ShapeMismatch("hstack: row counts differ");
    Matrix<R> c(a.ring(), a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

/// Vertical concatenation of blocks that share a column count.
template <CoefficientRing R>
Matrix<R> vstack(const R& ring, std::size_t cols, std::span<const Matrix<R>> parts) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols)
            throw ShapeMismatch("vstack: column counts differ");
        rows += p.rows();
    }
    Matrix<R> c(ring, rows, cols);
    std::size_t r = 0;
    for (const auto& p : parts) {
        c.set_block(r, 0, p);
        r += p.rows();
    }
    return c;
}

/// Integer determinant by fraction-free (Bareiss) elimination.
inline mpz_class determinant(const IntMatrix& m) {
    if (!m.is_square())
        throw ShapeMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Embeds an integer matrix into another ring (reduction or inclusion).
template <CoefficientRing R>
Matrix<R> convert(const IntMatrix& m, const R& ring) {
    std::vector<typename R::value_type> entries;
    entries.reserve(m.rows() * m.cols());
    for (const auto& e : m.entries())
        entries.push_back(ring.from_integer(e));
    return Matrix<R>(ring, m.rows(), m.cols(), std::move(entries));
}

} // namespace mono
