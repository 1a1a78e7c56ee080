#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "realm/moments.hpp"
#include "realm/realignment.hpp"
#include "test_util.hpp"

namespace realm {
namespace {

using test::max_abs_diff;

// Realignment with the rows in i-major order (row i*dA + j holds
// Vec(Z_{i,j})^T). Test-only: the alternative convention used to check that
// spectra do not depend on row ordering.
ComplexMatrix realign_i_major(const ComplexMatrix& m, const Dims& dims) {
    const auto dA = static_cast<Eigen::Index>(dims.dA);
    const auto dB = static_cast<Eigen::Index>(dims.dB);
    ComplexMatrix r(dA * dA, dB * dB);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index j = 0; j < dA; ++j) {
            ComplexMatrix z = m.block(i * dB, j * dB, dB, dB);
            r.row(i * dA + j) = Eigen::Map<Eigen::RowVectorXcd>(z.data(), dB * dB);
        }
    return r;
}

std::vector<double> sorted(const RealVector& v) {
    std::vector<double> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

double min_eig(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    return es.eigenvalues().minCoeff();
}

TEST(Vectorize, ColumnStacking) {
    ComplexMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    const ComplexMatrix v = vectorize(a);
    ASSERT_EQ(v.rows(), 4);
    ASSERT_EQ(v.cols(), 1);
    EXPECT_EQ(v(0, 0), complex(1.0));
    EXPECT_EQ(v(1, 0), complex(3.0));
    EXPECT_EQ(v(2, 0), complex(2.0));
    EXPECT_EQ(v(3, 0), complex(4.0));
}

TEST(Vectorize, IdentityAndZero) {
    const ComplexMatrix v = vectorize(ComplexMatrix::Identity(2, 2));
    EXPECT_EQ(v(0, 0), complex(1.0));
    EXPECT_EQ(v(1, 0), complex(0.0));
    EXPECT_EQ(v(2, 0), complex(0.0));
    EXPECT_EQ(v(3, 0), complex(1.0));
    EXPECT_EQ(vectorize(ComplexMatrix::Zero(3, 2)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Realign, RowOrderingIsBlockColumnMajor) {
    ComplexMatrix m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = r * 4 + c;
    const ComplexMatrix r = realign(m, {2, 2});
    ComplexMatrix expected(4, 4);
    expected << 0, 4, 1, 5,    // Z_{1,1}
        8, 12, 9, 13,          // Z_{2,1}
        2, 6, 3, 7,            // Z_{1,2}
        10, 14, 11, 15;        // Z_{2,2}
    EXPECT_EQ(max_abs_diff(r, expected), 0.0);
}

TEST(Realign, ShapeForUnequalDims) {
    const auto rho = random_density_matrix({2, 3}, 5);
    const ComplexMatrix r = realign(rho);
    EXPECT_EQ(r.rows(), 4);
    EXPECT_EQ(r.cols(), 9);
    EXPECT_THROW(realign(ComplexMatrix::Identity(5, 5), {2, 3}), dimension_error);
}

TEST(Realign, ProductIsOuterProductOfVectorizations) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto sa = random_density_matrix({3, 2}, seed); // 6x6, read as dA = 6
        const auto sb = random_density_matrix({2, 2}, seed + 50); // 4x4
        const Dims dims{6, 4};
        const ComplexMatrix r = realign(tensor_product(sa.matrix(), sb.matrix()), dims);
        const ComplexMatrix outer = vectorize(sa.matrix()) * vectorize(sb.matrix()).transpose();
        EXPECT_LT(max_abs_diff(r, outer), 1e-12);
        const double pa = (sa.matrix() * sa.matrix()).trace().real();
        const double pb = (sb.matrix() * sb.matrix()).trace().real();
        EXPECT_NEAR(trace_norm(r), std::sqrt(pa * pb), 1e-12);
    }
}

TEST(Realign, MaximallyMixedSpectrum) {
    const RealVector s = singular_values(realign(bell_noise_state(0.0)));
    ASSERT_EQ(s.size(), 4);
    EXPECT_NEAR(s(0), 0.5, 1e-15);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(s(i), 0.0, 1e-15);
}

TEST(Realign, BellNoiseSpectrum) {
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        const RealVector s = singular_values(realign(bell_noise_state(p)));
        std::vector<double> expected{0.5, p / 2, p / 2, p / 2};
        std::sort(expected.begin(), expected.end());
        const auto got = sorted(s);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-14) << p;
    }
}

TEST(Realign, Linearity) {
    for (const Dims& dims : test::test_dims()) {
        const ComplexMatrix x = test::random_hermitian(dims.total(), 10 + dims.total());
        const ComplexMatrix y = test::random_hermitian(dims.total(), 20 + dims.total());
        const double a = 0.7, b = -1.3;
        EXPECT_LT(max_abs_diff(realign(a * x + b * y, dims), a * realign(x, dims) + b * realign(y, dims)),
                  1e-12);
    }
}

TEST(Realign, SpectrumIndependentOfRowOrdering) {
    for (const Dims& dims : test::test_dims()) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto rho = random_density_matrix(dims, seed);
            const auto a = sorted(singular_values(realign(rho)));
            const auto b = sorted(singular_values(realign_i_major(rho.matrix(), dims)));
            ASSERT_EQ(a.size(), b.size());
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
        }
    }
}

TEST(Omega, RepeatedColumns) {
    const ComplexMatrix one = omega(ComplexMatrix::Identity(2, 2), 1);
    ASSERT_EQ(one.cols(), 1);
    EXPECT_EQ(max_abs_diff(one, vectorize(ComplexMatrix::Identity(2, 2))), 0.0);

    const ComplexMatrix x = test::random_complex(2, 3, 9);
    const ComplexMatrix three = omega(x, 3);
    ASSERT_EQ(three.rows(), 6);
    ASSERT_EQ(three.cols(), 3);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(max_abs_diff(three.col(c), vectorize(x)), 0.0);

    const ComplexMatrix none = omega(ComplexMatrix::Identity(2, 2), 0);
    EXPECT_EQ(none.rows(), 4);
    EXPECT_EQ(none.cols(), 0);
}

TEST(Bordered, ZeroBorderIsRealignmentExactly) {
    for (const Dims& dims : test::test_dims()) {
        const auto rho = random_density_matrix(dims, 77);
        const auto b = bordered_realignment(rho, 0.3, -1.7, 0);
        const ComplexMatrix r = realign(rho);
        ASSERT_EQ(b.matrix.rows(), r.rows());
        ASSERT_EQ(b.matrix.cols(), r.cols());
        EXPECT_TRUE(b.matrix == r); // bitwise
    }
}

TEST(Bordered, BlockStructure) {
    const auto rho = random_density_matrix({2, 3}, 8);
    const double alpha = 0.4, beta = -0.9;
    const auto b = bordered_realignment(rho, alpha, beta, 3);
    ASSERT_EQ(b.matrix.rows(), 3 + 4);
    ASSERT_EQ(b.matrix.cols(), 3 + 9);
    const ComplexMatrix tl = ComplexMatrix::Constant(3, 3, alpha * beta);
    EXPECT_EQ(max_abs_diff(b.matrix.topLeftCorner(3, 3), tl), 0.0);
    const ComplexMatrix vb = vectorize(reduced_b(rho)).transpose();
    const ComplexMatrix va = vectorize(reduced_a(rho));
    for (int r = 0; r < 3; ++r) EXPECT_LT(max_abs_diff(b.matrix.block(r, 3, 1, 9), alpha * vb), 1e-16);
    for (int c = 0; c < 3; ++c) EXPECT_LT(max_abs_diff(b.matrix.block(3, c, 4, 1), beta * va), 1e-16);
    EXPECT_EQ(max_abs_diff(b.matrix.bottomRightCorner(4, 9), realign(rho)), 0.0);
}

TEST(Bordered, TwoQubitShapeWithThreeBorder) {
    const auto b = bordered_realignment(bell_noise_state(0.5), 0.2, 0.2, 3);
    EXPECT_EQ(b.matrix.rows(), 7);
    EXPECT_EQ(b.matrix.cols(), 7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(b.matrix(i, j), complex(0.2 * 0.2));
}

TEST(Bordered, WernerHasThreeDegenerateSingularValues) {
    // Closed form: R(rho_W) has singular values {1/2, |2p-1|/6 x3}; the border
    // only couples to the identity component.
    for (double p : {-1.0, -0.5, -0.1637, 0.0, 0.3, 0.8}) {
        const RealVector s =
            singular_values(bordered_realignment(werner_state(2, p), 1.0 / 729, 1.0 / 729, 1).matrix);
        const double target = std::abs(2 * p - 1) / 6;
        int hits = 0;
        for (double v : s) hits += std::abs(v - target) <= 1e-10 ? 1 : 0;
        EXPECT_GE(hits, 3) << "p = " << p;
    }
}

TEST(Bordered, TraceNormBound) {
    EXPECT_DOUBLE_EQ(trace_norm_bound(0.0, 5.0, 0), 1.0);
    EXPECT_DOUBLE_EQ(trace_norm_bound(1.0, 1.0, 1), 2.0);
    EXPECT_DOUBLE_EQ(trace_norm_bound(0.5, 2.0, 4), std::sqrt(2.0 * 17.0));
}

TEST(PartialTranspose, ProductKeepsSpectrum) {
    const auto sa = random_density_matrix({2, 2}, 1);
    const auto sb = random_density_matrix({3, 2}, 2);
    const Dims dims{4, 6};
    const ComplexMatrix prod = tensor_product(sa.matrix(), sb.matrix());
    const ComplexMatrix pt = partial_transpose(prod, dims);
    EXPECT_LT(max_abs_diff(pt, tensor_product(sa.matrix(), sb.matrix().transpose())), 1e-15);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(prod), e2(pt);
    EXPECT_LT((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTranspose, BellProjectorMinusHalf) {
    EXPECT_NEAR(min_eig(partial_transpose(bell_noise_state(1.0))), -0.5, 1e-14);
}

TEST(PartialTranspose, BellNoiseMinEigenvalue) {
    for (double p = 0.0; p <= 1.0; p += 0.125) {
        EXPECT_NEAR(min_eig(partial_transpose(bell_noise_state(p))), (1 - 3 * p) / 4, 1e-14) << p;
    }
}

TEST(PartialTranspose, InvolutionHermitianUnitTrace) {
    for (const Dims& dims : test::test_dims()) {
        const auto rho = random_density_matrix(dims, 31);
        const ComplexMatrix pt = partial_transpose(rho);
        EXPECT_EQ(max_abs_diff(partial_transpose(pt, dims), rho.matrix()), 0.0);
        EXPECT_LT((pt - pt.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_NEAR(pt.trace().real(), 1.0, 1e-12);
    }
    EXPECT_THROW(partial_transpose(ComplexMatrix::Identity(3, 3), {2, 2}), dimension_error);
}

} // namespace
} // namespace realm
