#include <gtest/gtest.h>

#include <random>

#include "hermgeo/linalg.hpp"

using namespace hermgeo;

namespace {

CMat random_hermitian_pd(std::mt19937_64& eng, int n) {
    // A^H A + n*I is Hermitian positive definite with moderate conditioning
    auto u = [&eng]() {
        return static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    CMat a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cxd(u(), u());
    CMat m = mat_mul(a.conj_transpose(), a);
    for (int i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
    return m;
}

}  // namespace

TEST(CMat, arithmetic_and_conjugation) {
    CMat a(2);
    a(0, 0) = cxd(1, 2);
    a(0, 1) = cxd(0, -1);
    a(1, 0) = cxd(3, 0);
    a(1, 1) = cxd(-2, 5);
    EXPECT_EQ(a.conj_transpose().conj_transpose()(0, 1), a(0, 1));
    EXPECT_DOUBLE_EQ(max_abs_diff(a, a), 0.0);
    CMat s = a + a - a;
    EXPECT_DOUBLE_EQ(max_abs_diff(s, a), 0.0);
    CMat t = a * cxd(2.0);
    EXPECT_DOUBLE_EQ(std::abs(t(1, 1) - cxd(-4, 10)), 0.0);
}

TEST(CMat, hermitian_check) {
    CMat h(2);
    h(0, 0) = 2.0;
    h(0, 1) = cxd(0, 1);
    h(1, 0) = cxd(0, -1);
    h(1, 1) = 2.0;
    EXPECT_TRUE(h.is_hermitian(1e-14));
    h(1, 0) = cxd(0, -1.1);
    EXPECT_FALSE(h.is_hermitian(1e-14));
}

TEST(Determinant, known_values) {
    CMat m(2);
    m(0, 0) = 2.0;
    m(0, 1) = cxd(0, 1);
    m(1, 0) = cxd(0, -1);
    m(1, 1) = 2.0;
    // 2*2 - (i)(-i) = 4 - 1 = 3
    EXPECT_NEAR(std::abs(determinant(m) - cxd(3.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(determinant(CMat::identity(4)) - cxd(1.0)), 0.0, 1e-15);
}

TEST(LuInverse, identity_and_diagonal) {
    CMat id = CMat::identity(3);
    EXPECT_NEAR(max_abs_diff(lu_inverse(id), id), 0.0, 1e-15);

    CMat d(2);
    d(0, 0) = 1.0;
    d(1, 1) = 0.5;
    CMat dinv = invert_metric(d);
    EXPECT_NEAR(std::abs(dinv(0, 0) - cxd(1.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(dinv(1, 1) - cxd(2.0)), 0.0, 1e-14);
}

// The metric inverse satisfies sum_q G(i,q) * M(k,q) = delta_ik (indices as
// stored: G(i,q) plays g^{i qbar}, M(k,q) plays g_{k qbar}).  For Hermitian M
// that makes G the entrywise conjugate of the plain inverse; checked here on
// a hand-worked example.
TEST(InvertMetric, index_convention) {
    CMat m(2);
    m(0, 0) = 2.0;
    m(0, 1) = cxd(0, 1);
    m(1, 0) = cxd(0, -1);
    m(1, 1) = 2.0;
    CMat g = invert_metric(m);
    // plain inverse is (1/3)[[2,-i],[i,2]]; conjugate: (1/3)[[2,i],[-i,2]]
    EXPECT_NEAR(std::abs(g(0, 0) - cxd(2.0 / 3, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(g(0, 1) - cxd(0, 1.0 / 3)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(g(1, 0) - cxd(0, -1.0 / 3)), 0.0, 1e-14);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            cxd acc;
            for (int q = 0; q < 2; ++q) acc += g(i, q) * m(k, q);
            EXPECT_NEAR(std::abs(acc - (i == k ? cxd(1.0) : cxd{})), 0.0, 1e-14);
        }
}

TEST(InvertMetric, random_contraction_residual) {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(eng() % 3);
        CMat m = random_hermitian_pd(eng, n);
        CMat g = invert_metric(m);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                cxd acc;
                for (int q = 0; q < n; ++q) acc += g(i, q) * m(k, q);
                worst = std::max(worst, std::abs(acc - (i == k ? cxd(1.0) : cxd{})));
            }
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(Cholesky, detects_definiteness) {
    std::mt19937_64 eng(11);
    CMat m = random_hermitian_pd(eng, 3);
    EXPECT_TRUE(cholesky_positive_definite(m));
    CMat neg = m * cxd(-1.0);
    EXPECT_FALSE(cholesky_positive_definite(neg));
    CMat indef = m;
    indef(0, 0) = -5.0;
    EXPECT_FALSE(cholesky_positive_definite(indef));
}

TEST(InvertMetric, degenerate_reported) {
    CMat z(2);  // all zero
    EXPECT_THROW(invert_metric(z), DegenerateMetricError);
    CMat sing(2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 1.0;
    sing(1, 0) = 1.0;
    sing(1, 1) = 1.0;  // rank one
    EXPECT_THROW(invert_metric(sing), DegenerateMetricError);
}
