#include <gtest/gtest.h>

#include "mono/field_linalg.hpp"
#include "mono/matrix.hpp"
#include "mono/ring.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace mono;
using namespace testing_support;

TEST(RingDescriptor, ParsesAndPrints) {
    for (const char* text : {"Z", "Q", "Zn:6", "Fp:101"})
        EXPECT_EQ(RingDescriptor::parse(text).to_string(), text);
    EXPECT_TRUE(RingDescriptor::parse("Fp:7").is_field());
    EXPECT_FALSE(RingDescriptor::parse("Zn:7").is_field());
}

TEST(RingDescriptor, RejectsBadRings) {
    EXPECT_THROW(RingDescriptor::parse("R"), InvalidArgument);
    EXPECT_THROW(RingDescriptor::parse("Fp:4"), InvalidArgument);
    EXPECT_THROW(RingDescriptor::parse("Zn:1"), InvalidArgument);
    EXPECT_THROW(RingDescriptor::parse("Zn:x"), InvalidArgument);
}

TEST(Scalars, RationalsAreReduced) {
    Rationals q;
    EXPECT_EQ(q.format(q.parse("6/4")), "3/2");
    EXPECT_EQ(q.format(q.parse("-4/2")), "-2");
    EXPECT_EQ(q.format(q.parse("3/-6")), "-1/2");
    EXPECT_THROW(q.parse("1/0"), InvalidArgument);
    EXPECT_THROW(q.parse("1/"), InvalidArgument);
}

TEST(Scalars, PrimeFieldResidues) {
    PrimeField f(7);
    EXPECT_EQ(f.parse("-1"), 6);
    EXPECT_EQ(f.mul(f.inverse(3), 3), 1);
    EXPECT_THROW(f.inverse(0), NotInvertible);
    EXPECT_THROW(PrimeField(9), InvalidArgument);
}

TEST(Matrix, ProductMatchesOracle) {
    Cases cases(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = cases.rational_matrix(3, 4, 5);
        auto b = cases.rational_matrix(4, 2, 5);
        EXPECT_EQ(oracle::to_mat(a * b), oracle::multiply(oracle::to_mat(a), oracle::to_mat(b)));
    }
}

TEST(Matrix, BlocksAndStacks) {
    auto a = zmat({{1, 2}, {3, 4}});
    auto b = zmat({{5}, {6}});
    auto h = hstack(a, b);
    EXPECT_EQ(h, zmat({{1, 2, 5}, {3, 4, 6}}));
    EXPECT_EQ(h.block(0, 1, 2, 2), zmat({{2, 5}, {4, 6}}));
    IntMatrix parts[] = {a, zmat({{7, 8}})};
    EXPECT_EQ(vstack(Integers{}, 2, std::span<const IntMatrix>(parts)), zmat({{1, 2}, {3, 4}, {7, 8}}));
    EXPECT_EQ(a.transpose(), zmat({{1, 3}, {2, 4}}));
    EXPECT_THROW(hstack(a, zmat({{1}})), ShapeMismatch);
}

TEST(Matrix, EntriesStayCanonical) {
    PrimeField f(5);
    auto m = Matrix<PrimeField>::from_rows(f, {{7, -1}, {10, 3}});
    EXPECT_EQ(m.to_string(), "[[2, 4], [0, 3]]");
}

TEST(Determinant, BareissMatchesCofactorExpansion) {
    Cases cases(12);
    for (int trial = 0; trial < 100; ++trial) {
        auto n = static_cast<std::size_t>(cases.between(1, 5));
        auto a = cases.int_matrix(n, n, 4);
        EXPECT_EQ(mpq_class(determinant(a)), oracle::determinant(oracle::to_mat(a)));
    }
}

TEST(FieldLinalg, InverseAndRankOverQ) {
    Cases cases(13);
    for (int trial = 0; trial < 60; ++trial) {
        auto n = static_cast<std::size_t>(cases.between(1, 4));
        auto a = cases.rational_matrix(n, n, 3);
        auto r = rank(a);
        EXPECT_EQ(r, oracle::rank(oracle::to_mat(a)));
        if (r == n)
            EXPECT_TRUE((inverse(a) * a).is_identity());
        else
            EXPECT_THROW(inverse(a), NotInvertible);
    }
}

TEST(FieldLinalg, NullspaceIsExactKernel) {
    Cases cases(14);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = cases.rational_matrix(static_cast<std::size_t>(cases.between(1, 4)),
                                       static_cast<std::size_t>(cases.between(1, 5)), 2);
        auto basis = nullspace(a);
        EXPECT_EQ(basis.size(), a.cols() - rank(a));
        for (const auto& v : basis)
            for (const auto& x : a.apply(v))
                EXPECT_EQ(x, 0);
    }
}

TEST(FieldLinalg, InverseOverPrimeField) {
    PrimeField f(3);
    auto a = Matrix<PrimeField>::from_rows(f, {{1, 2}, {1, 1}});
    auto inv = inverse(a);
    EXPECT_TRUE((a * inv).is_identity());
    EXPECT_EQ(determinant(a), 2);
    auto singular = Matrix<PrimeField>::from_rows(f, {{1, 2}, {2, 1}});
    EXPECT_THROW(inverse(singular), NotInvertible);
}
