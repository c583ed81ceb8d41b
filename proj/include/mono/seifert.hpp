#pragma once

#include <utility>

#include "mono/error.hpp"
#include "mono/field_linalg.hpp"
#include "mono/matrix.hpp"

namespace mono {

// Bilinear forms are matrices acting as (x, y) -> x^t L y. The relation
// L(1 - M) = S is read as the matrix product L * (I - M), i.e. the monodromy
// acts on the second argument.

inline bool is_unimodular(const IntMatrix& m) {
    if (!m.is_square())
        return false;
    auto d = determinant(m);
    return d == 1 || d == -1;
}

/// S = L (I - M).
inline IntMatrix intersection_from_seifert(const IntMatrix& seifert, const IntMatrix& monodromy) {
    if (!seifert.is_square() || !monodromy.is_square() || seifert.rows() != monodromy.rows())
        throw ShapeMismatch("Seifert form and monodromy must be square of equal size");
    return seifert * (IntMatrix::identity({}, monodromy.rows()) - monodromy);
}

struct SeifertDatum {
    IntMatrix seifert;      ///< L
    IntMatrix monodromy;    ///< M∞ in the middle degree
    IntMatrix intersection; ///< S
};

/// Validated datum: M must be unimodular; S is computed from L and M.
inline SeifertDatum make_seifert_datum(IntMatrix seifert, IntMatrix monodromy) {
    if (!is_unimodular(monodromy))
        throw InvalidArgument("monodromy is not unimodular");
    auto s = intersection_from_seifert(seifert, monodromy);
    return {std::move(seifert), std::move(monodromy), std::move(s)};
}

struct RecoveredMonodromy {
    RationalMatrix monodromy; ///< I - L^-1 S over Q
    bool integral;
    bool unimodular;          ///< integral with determinant ±1, i.e. realisable over Z
};

/// Inverts the relation when L is nondegenerate; throws DegenerateSeifertForm otherwise.
inline RecoveredMonodromy monodromy_from_seifert(const IntMatrix& seifert, const IntMatrix& intersection) {
    if (!seifert.is_square() || !intersection.is_square() || seifert.rows() != intersection.rows())
        throw ShapeMismatch("Seifert form and intersection form must be square of equal size");
    if (sgn(determinant(seifert)) == 0)
        throw DegenerateSeifertForm("Seifert form is degenerate; the monodromy is not determined by S");
    Rationals q;
    auto l_inv = inverse(convert(seifert, q));
    auto m = RationalMatrix::identity(q, seifert.rows()) - l_inv * convert(intersection, q);

    bool integral = true;
    for (const auto& e : m.entries())
        integral = integral && e.get_den() == 1;
    bool unimodular = false;
    if (integral) {
        auto d = determinant(m);
        unimodular = d == 1 || d == -1;
    }
    return {std::move(m), integral, unimodular};
}

struct SymmetryReport {
    bool symmetric;
    bool antisymmetric;
};

inline SymmetryReport symmetry_report(const IntMatrix& form) {
    if (!form.is_square())
        return {false, false};
    auto t = form.transpose();
    return {t == form, t == -form};
}

} // namespace mono
