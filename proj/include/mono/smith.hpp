#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mono/matrix.hpp"

namespace mono {

/// Smith normal form `a == left * diagonal * right`.
///
/// `left` and `right` are unimodular; `left_inverse * a * right_inverse ==
/// diagonal`. The diagonal entries are nonnegative and form a divisibility
/// chain, with the `rank` nonzero ones first.
struct SmithForm {
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;
    IntMatrix left_inverse;
    IntMatrix right_inverse;
    std::size_t rank = 0;

    const mpz_class& factor(std::size_t i) const { return diagonal(i, i); }
};

namespace detail {

// M_i <- a M_i + b M_j ; M_j <- c M_i + d M_j
inline void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b,
                         const mpz_class& c, const mpz_class& d) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
        mpz_class x = m(i, k), y = m(j, k);
        m(i, k) = a * x + b * y;
        m(j, k) = c * x + d * y;
    }
}

// M[:,i] <- a M[:,i] + c M[:,j] ; M[:,j] <- b M[:,i] + d M[:,j]
inline void combine_cols(IntMatrix& m, std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b,
                         const mpz_class& c, const mpz_class& d) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        mpz_class x = m(k, i), y = m(k, j);
        m(k, i) = a * x + c * y;
        m(k, j) = b * x + d * y;
    }
}

class SmithReducer {
public:
    explicit SmithReducer(const IntMatrix& a)
        : d_(a), p_(IntMatrix::identity({}, a.rows())), p_inv_(p_), q_(IntMatrix::identity({}, a.cols())),
          q_inv_(q_) {}

    SmithForm run() {
        const std::size_t limit = std::min(d_.rows(), d_.cols());
        std::size_t k = 0;
        for (; k < limit; ++k) {
            if (!bring_pivot(k))
                break;
            for (;;) {
                clear_cross(k);
                auto bad = find_non_divisible(k);
                if (!bad)
                    break;
                // Fold the offending row into row k and clear again; the pivot strictly shrinks.
                row_op(k, *bad, 1, 1, 0, 1);
            }
            if (sgn(d_(k, k)) < 0)
                negate_row(k);
        }
        return {std::move(p_inv_), std::move(d_), std::move(q_inv_), std::move(p_), std::move(q_), k};
    }

private:
    // Row op E = [[a,b],[c,d]] on rows (i,j), det(E) = +-1.
    void row_op(std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b, const mpz_class& c,
                const mpz_class& d) {
        mpz_class det = a * d - b * c;
        combine_rows(d_, i, j, a, b, c, d);
        combine_rows(p_, i, j, a, b, c, d);
        combine_cols(p_inv_, i, j, det * d, -det * b, -det * c, det * a);
    }

    // Column op F = [[a,b],[c,d]] on columns (i,j), det(F) = +-1.
    void col_op(std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b, const mpz_class& c,
                const mpz_class& d) {
        mpz_class det = a * d - b * c;
        combine_cols(d_, i, j, a, b, c, d);
        combine_cols(q_, i, j, a, b, c, d);
        combine_rows(q_inv_, i, j, det * d, -det * b, -det * c, det * a);
    }

    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < d_.cols(); ++k)
            d_(i, k) = -d_(i, k);
        for (std::size_t k = 0; k < p_.cols(); ++k)
            p_(i, k) = -p_(i, k);
        for (std::size_t k = 0; k < p_inv_.rows(); ++k)
            p_inv_(k, i) = -p_inv_(k, i);
    }

    // Moves the smallest nonzero entry of the trailing submatrix to (k,k).
    bool bring_pivot(std::size_t k) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = k; i < d_.rows(); ++i)
            for (std::size_t j = k; j < d_.cols(); ++j)
                if (sgn(d_(i, j)) != 0 && (!best || abs(d_(i, j)) < abs(d_(best->first, best->second))))
                    best = {i, j};
        if (!best)
            return false;
        if (best->first != k)
            row_op(k, best->first, 0, 1, 1, 0);
        if (best->second != k)
            col_op(k, best->second, 0, 1, 1, 0);
        return true;
    }

    void clear_cross(std::size_t k) {
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = k + 1; i < d_.rows(); ++i) {
                if (sgn(d_(i, k)) == 0)
                    continue;
                mpz_class x = d_(k, k), y = d_(i, k);
                if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
                    row_op(k, i, 1, 0, -(y / x), 1);
                } else {
                    mpz_class g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    row_op(k, i, s, t, -(y / g), x / g);
                }
            }
            for (std::size_t j = k + 1; j < d_.cols(); ++j) {
                if (sgn(d_(k, j)) == 0)
                    continue;
                mpz_class x = d_(k, k), y = d_(k, j);
                if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
                    col_op(k, j, 1, -(y / x), 0, 1);
                } else {
                    mpz_class g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    col_op(k, j, s, -(y / g), t, x / g);
                    dirty = true;
                }
            }
        }
    }

    std::optional<std::size_t> find_non_divisible(std::size_t k) const {
        const mpz_class& pivot = d_(k, k);
        for (std::size_t i = k + 1; i < d_.rows(); ++i)
            for (std::size_t j = k + 1; j < d_.cols(); ++j)
                if (!mpz_divisible_p(d_(i, j).get_mpz_t(), pivot.get_mpz_t()))
                    return i;
        return std::nullopt;
    }

    IntMatrix d_, p_, p_inv_, q_, q_inv_;
};

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) { return detail::SmithReducer(a).run(); }

/// Some integer solution of `a x == b`, if one exists.
inline std::optional<std::vector<mpz_class>> solve_integer(const SmithForm& snf, const std::vector<mpz_class>& b) {
    const IntMatrix& p = snf.left_inverse;
    if (b.size() != p.cols())
        throw ShapeMismatch("right-hand side length does not match matrix rows");
    auto pb = p.apply(b);
    std::vector<mpz_class> y(snf.right_inverse.rows(), 0);
    for (std::size_t i = 0; i < pb.size(); ++i) {
        if (i < snf.rank) {
            if (!mpz_divisible_p(pb[i].get_mpz_t(), snf.factor(i).get_mpz_t()))
                return std::nullopt;
            y[i] = pb[i] / snf.factor(i);
        } else if (sgn(pb[i]) != 0) {
            return std::nullopt;
        }
    }
    return snf.right_inverse.apply(y);
}

inline std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& a, const std::vector<mpz_class>& b) {
    return solve_integer(smith_normal_form(a), b);
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
inline IntMatrix lattice_basis(const IntMatrix& gens) {
    auto snf = smith_normal_form(gens);
    IntMatrix basis({}, gens.rows(), snf.rank);
    for (std::size_t j = 0; j < snf.rank; ++j)
        for (std::size_t i = 0; i < gens.rows(); ++i)
            basis(i, j) = snf.left(i, j) * snf.factor(j);
    return basis;
}

/// Basis (as columns) of the integer kernel {x : a x == 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    auto snf = smith_normal_form(a);
    const std::size_t n = a.cols();
    return snf.right_inverse.block(0, snf.rank, n, n - snf.rank);
}

} // namespace mono
