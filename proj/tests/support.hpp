#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mono/abelian.hpp"
#include "mono/generator.hpp"
#include "mono/matrix.hpp"
#include "mono/star.hpp"
#include "mono/vector_space.hpp"

namespace testing_support {

using namespace mono;

using QSpace = VectorSpace<Rationals>;
using FSpace = VectorSpace<PrimeField>;

inline IntMatrix zmat(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<mpz_class>> r;
    for (const auto& row : rows)
        r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_rows({}, r);
}

/// Entries such as "3", "-1/2".
inline RationalMatrix qmat(const std::vector<std::vector<std::string>>& rows) {
    Rationals q;
    std::vector<std::vector<mpq_class>> r;
    for (const auto& row : rows) {
        r.emplace_back();
        for (const auto& e : row)
            r.back().push_back(q.parse(e));
    }
    return RationalMatrix::from_rows(q, r);
}

inline QSpace qspace(std::size_t n) { return QSpace{Rationals{}, n}; }

inline DecompositionPtr<QSpace> qdec(const std::vector<std::size_t>& dims, unsigned degree = 1) {
    std::vector<QSpace> s;
    for (auto d : dims)
        s.push_back(qspace(d));
    return make_decomposition<QSpace>(s, degree);
}

inline DecompositionPtr<FSpace> fdec(long p, const std::vector<std::size_t>& dims, unsigned degree = 1) {
    std::vector<FSpace> s;
    for (auto d : dims)
        s.push_back(FSpace{PrimeField(p), d});
    return make_decomposition<FSpace>(s, degree);
}

inline DecompositionPtr<DiagonalGroup> zdec(const std::vector<DiagonalGroup>& parts, unsigned degree = 1) {
    return make_decomposition<DiagonalGroup>(parts, degree);
}

/// Hand-rolled source of test cases, independent of the library's generator.
class Cases {
public:
    explicit Cases(std::uint64_t seed) : engine_(seed) {}

    long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

    IntMatrix int_matrix(std::size_t rows, std::size_t cols, long bound) {
        IntMatrix m({}, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = between(-bound, bound);
        return m;
    }

    RationalMatrix rational_matrix(std::size_t rows, std::size_t cols, long bound) {
        RationalMatrix m(Rationals{}, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                mpq_class v(between(-bound, bound), between(1, 3));
                v.canonicalize();
                m.set(i, j, v);
            }
        return m;
    }

    std::vector<mpz_class> int_vector(std::size_t n, long bound) {
        std::vector<mpz_class> v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(between(-bound, bound));
        return v;
    }

    std::uint64_t seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace testing_support
