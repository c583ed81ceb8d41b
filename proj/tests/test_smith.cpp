#include <gtest/gtest.h>

#include "mono/smith.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace mono;
using namespace testing_support;

namespace {

void expect_valid_smith(const IntMatrix& a) {
    auto snf = smith_normal_form(a);
    const auto& d = snf.diagonal;
    ASSERT_EQ(d.rows(), a.rows());
    ASSERT_EQ(d.cols(), a.cols());
    EXPECT_EQ(snf.left * d * snf.right, a);
    EXPECT_EQ(snf.left_inverse * a * snf.right_inverse, d);
    EXPECT_TRUE((snf.left * snf.left_inverse).is_identity());
    EXPECT_TRUE((snf.right * snf.right_inverse).is_identity());

    std::vector<mpz_class> factors;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j)
                EXPECT_EQ(d(i, j), 0) << a.to_string();
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
        EXPECT_GE(d(i, i), 0);
        if (i < snf.rank)
            factors.push_back(d(i, i));
        else
            EXPECT_EQ(d(i, i), 0);
    }
    for (std::size_t i = 1; i < factors.size(); ++i)
        EXPECT_TRUE(mpz_divisible_p(factors[i].get_mpz_t(), factors[i - 1].get_mpz_t())) << a.to_string();
    EXPECT_EQ(factors, oracle::invariant_factors(oracle::to_mat(a))) << a.to_string();
}

} // namespace

TEST(Smith, SmallExample) {
    auto snf = smith_normal_form(zmat({{2, 4}, {6, 8}}));
    EXPECT_EQ(snf.diagonal, zmat({{2, 0}, {0, 4}}));
    EXPECT_EQ(snf.rank, 2u);
}

TEST(Smith, DegenerateShapes) {
    expect_valid_smith(IntMatrix({}, 0, 3));
    expect_valid_smith(IntMatrix({}, 3, 0));
    expect_valid_smith(IntMatrix({}, 2, 2));
    expect_valid_smith(zmat({{0, 0, 7}}));
    expect_valid_smith(zmat({{-5}}));
}

TEST(Smith, RandomMatricesAgreeWithMinorOracle) {
    Cases cases(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto rows = static_cast<std::size_t>(cases.between(1, 4));
        auto cols = static_cast<std::size_t>(cases.between(1, 4));
        expect_valid_smith(cases.int_matrix(rows, cols, trial % 2 ? 9 : 3));
    }
}

TEST(Smith, SolveInteger) {
    Cases cases(22);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = cases.int_matrix(3, 4, 4);
        auto x = cases.int_vector(4, 5);
        auto b = a.apply(x);
        auto sol = solve_integer(a, b);
        ASSERT_TRUE(sol);
        EXPECT_EQ(a.apply(*sol), b);
    }
    EXPECT_FALSE(solve_integer(zmat({{2}}), std::vector<mpz_class>{1}));
    EXPECT_FALSE(solve_integer(zmat({{1, 1}, {1, 1}}), std::vector<mpz_class>{1, 2}));
}

TEST(Smith, IntegerKernelIsSaturated) {
    auto k = integer_kernel(zmat({{2, 4}}));
    ASSERT_EQ(k.cols(), 1u);
    // The kernel lattice is generated by (-2, 1), not by a multiple of it.
    auto g = mpz_class(abs(k(0, 0)));
    EXPECT_EQ(g, 2);
    EXPECT_EQ(abs(k(1, 0)), 1);

    Cases cases(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = cases.int_matrix(2, 4, 5);
        auto kern = integer_kernel(a);
        EXPECT_EQ(kern.cols(), 4 - oracle::rank(oracle::to_mat(a)));
        EXPECT_TRUE((a * kern).is_zero());
        // A saturated lattice of rank r has its r x r minors coprime.
        if (kern.cols() > 0)
            EXPECT_EQ(oracle::minors_gcd(oracle::to_mat(kern), kern.cols()), 1);
    }
}

TEST(Smith, LatticeBasisSpansSameLattice) {
    Cases cases(24);
    for (int trial = 0; trial < 100; ++trial) {
        auto gens = cases.int_matrix(3, 4, 4);
        auto basis = lattice_basis(gens);
        EXPECT_EQ(basis.cols(), oracle::rank(oracle::to_mat(gens)));
        for (std::size_t j = 0; j < gens.cols(); ++j)
            EXPECT_TRUE(solve_integer(basis, gens.column(j)));
        for (std::size_t j = 0; j < basis.cols(); ++j)
            EXPECT_TRUE(solve_integer(gens, basis.column(j)));
    }
}
