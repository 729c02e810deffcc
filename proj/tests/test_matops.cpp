#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ncpmap/errors.hpp"
#include "ncpmap/families.hpp"
#include "ncpmap/matops.hpp"
#include "oracles.hpp"

using namespace ncpmap;
using std::numbers::pi;

TEST(matops, eig_diagonal_keeps_values_and_basis) {
    const auto d = CMat4::diagonal({2.0, -1.12409, 0.669258, 0.130742});
    const auto eig = eig_hermitian(d);
    EXPECT_DOUBLE_EQ(eig.eigenvalues[0], 2.0);
    EXPECT_DOUBLE_EQ(eig.eigenvalues[1], 0.669258);
    EXPECT_DOUBLE_EQ(eig.eigenvalues[2], 0.130742);
    EXPECT_DOUBLE_EQ(eig.eigenvalues[3], -1.12409);
    // Eigenvector of 2.0 is e0, of -1.12409 is e1.
    EXPECT_DOUBLE_EQ(std::abs(eig.eigenvectors[0][0]), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(eig.eigenvectors[3][1]), 1.0);
}

TEST(matops, eig_bncp_matches_printed_spectrum) {
    const auto eig = eig_hermitian(bncp_example().B);
    const std::array<double, 4> expected{2.32409, 0.669258, 0.130742, -1.12409};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(eig.eigenvalues[i], expected[i], 1e-5) << i;
}

TEST(matops, eig_cnot_choi_at_pi_over_6) {
    const auto eig = eig_hermitian(oracle::cnot_b2_closed_form(pi / 6));
    EXPECT_NEAR(eig.eigenvalues[0], 3.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues[1], 0.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues[2], 0.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues[3], -1.0, 1e-12);
    const auto closed = oracle::cnot_choi_eigenvalues(pi / 6);
    EXPECT_NEAR(closed[0], 3.0, 1e-12);
    EXPECT_NEAR(closed[1], -1.0, 1e-12);
}

TEST(matops, eig_rejects_non_hermitian) {
    CMat4 m = CMat4::identity();
    m(0, 1) = 1.0;
    EXPECT_THROW(eig_hermitian(m), NotHermitian);
}

TEST(matops, eig_random_hermitian_properties) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const CMat4 h = oracle::random_hermitian4(rng);
        const auto eig = eig_hermitian(h);
        EXPECT_LE(max_abs_diff(eig.reconstruct(), h), 1e-10);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            sum += eig.eigenvalues[i];
            if (i > 0) EXPECT_GE(eig.eigenvalues[i - 1], eig.eigenvalues[i]);
            // Each eigenvalue is a root of the characteristic polynomial.
            EXPECT_LE(oracle::char_poly_residual(h, eig.eigenvalues[i]), 1e-9);
            for (int j = 0; j < 4; ++j) {
                cplx dot = 0.0;
                for (int r = 0; r < 4; ++r) dot += std::conj(eig.eigenvectors[i][r]) * eig.eigenvectors[j][r];
                EXPECT_NEAR(std::abs(dot - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);
            }
        }
        EXPECT_NEAR(sum, h.trace().real(), 1e-10);
    }
}

TEST(matops, eig_is_deterministic_with_degenerate_spectrum) {
    const CMat4 m = CMat4::identity() * 0.5;
    const auto a = eig_hermitian(m);
    const auto b = eig_hermitian(m);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(matops, inverse_of_identity) {
    EXPECT_EQ(inverse4(CMat4::identity()), CMat4::identity());
}

TEST(matops, inverse_of_bit_flip_matches_closed_form) {
    const CMat4 a1 = cnot_first_map(pi / 6).A;
    const CMat4 a2 = inverse4(a1);
    EXPECT_LE(max_abs_diff(a2, oracle::cnot_a2_closed_form(pi / 6)), 1e-12);
    // sec(pi/3) {cos^2, -sin^2} = {1.5, -0.5}
    EXPECT_NEAR(a2(0, 0).real(), 1.5, 1e-12);
    EXPECT_NEAR(a2(0, 3).real(), -0.5, 1e-12);
    EXPECT_LE(max_abs_diff(a1 * a2, CMat4::identity()), 1e-10);
}

TEST(matops, inverse_reports_singularity_with_determinant) {
    try {
        inverse4(cnot_first_map(pi / 4).A);
        FAIL() << "expected SingularMatrix";
    } catch (const SingularMatrix &e) {
        EXPECT_LT(e.abs_det(), 1e-20);
    }
    EXPECT_THROW(inverse4(CMat4{}), SingularMatrix);
}

TEST(matops, inverse_random_round_trip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const CMat4 m = oracle::random_cmat4(rng);
        const CMat4 inv = inverse4(m);
        EXPECT_LE(max_abs_diff(m * inv, CMat4::identity()), 1e-10);
    }
}

TEST(matops, reshuffle_maps_cnot_superop_to_choi) {
    for (double theta : {pi / 12, pi / 6, pi / 5}) {
        const CMat4 b = reshuffle(oracle::cnot_a2_closed_form(theta));
        EXPECT_LE(max_abs_diff(b, oracle::cnot_b2_closed_form(theta)), 1e-12) << theta;
    }
}

TEST(matops, reshuffle_is_an_involution) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const CMat4 m = oracle::random_cmat4(rng);
        EXPECT_EQ(reshuffle(reshuffle(m)), m);
    }
}

TEST(matops, reshuffle_of_identity_is_maximally_entangled_projector) {
    const CMat4 b = reshuffle(CMat4::identity());
    const CVec4 phi{1.0, 0.0, 0.0, 1.0};  // sqrt(2) |Phi+>
    EXPECT_EQ(b, outer(phi, phi));
    const auto eig = eig_hermitian(b);
    EXPECT_NEAR(eig.eigenvalues[0], 2.0, 1e-14);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(eig.eigenvalues[i], 0.0, 1e-14);
}

TEST(matops, trace_of_reshuffle_sums_diagonal_blocks) {
    std::mt19937_64 rng(5);
    const CMat4 a = oracle::random_cmat4(rng);
    cplx expected = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) expected += a(3 * i, 3 * j);
    EXPECT_NEAR(std::abs(reshuffle(a).trace() - expected), 0.0, 1e-14);
}

TEST(matops, partial_traces) {
    EXPECT_EQ(partial_trace(CMat4::identity(), 1), CMat2::identity() * 2.0);
    EXPECT_EQ(partial_trace(CMat4::identity(), 2), CMat2::identity() * 2.0);
    const CMat4 b = bncp_example().B;
    EXPECT_LE(max_abs_diff(partial_trace(b, 1), CMat2::identity()), 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace(b, 2), CMat2::identity()), 1e-12);
    // kron(P, Q): tr_1 = tr(P) Q, tr_2 = tr(Q) P.
    const CMat2 p{1.0, 2.0, 3.0, 4.0};
    const CMat2 q{0.5, cplx{0, 1}, 0.0, -1.0};
    EXPECT_LE(max_abs_diff(partial_trace(kron(p, q), 1), q * 5.0), 1e-14);
    EXPECT_LE(max_abs_diff(partial_trace(kron(p, q), 2), p * (-0.5)), 1e-14);
    EXPECT_THROW(partial_trace(b, 3), OutOfRange);
}

TEST(matops, kron_basics) {
    EXPECT_EQ(kron(CMat2::identity(), CMat2::identity()), CMat4::identity());
    const CMat4 xx = kron(pauli::x(), pauli::x());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) EXPECT_EQ(xx(r, c), (r + c == 3) ? cplx{1.0} : cplx{0.0});
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const CMat2 u = haar_unitary2(rng);
        const CMat2 v = haar_unitary2(rng);
        EXPECT_TRUE(is_unitary(u));
        EXPECT_TRUE(is_unitary(kron(u, v)));
    }
}

TEST(matops, vec_unvec_row_major) {
    const CMat2 m{1.0, 2.0, 3.0, 4.0};
    const CVec4 v = vec(m);
    EXPECT_EQ(v[1], cplx{2.0});
    EXPECT_EQ(v[2], cplx{3.0});
    EXPECT_EQ(unvec(v), m);
}
