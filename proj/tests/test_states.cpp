#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ncpmap/channels.hpp"
#include "ncpmap/errors.hpp"
#include "ncpmap/families.hpp"
#include "ncpmap/states.hpp"

using namespace ncpmap;

TEST(states, bloch_to_state_explicit_form) {
    EXPECT_EQ(bloch_to_state({0, 0, 0}).rho, CMat2::identity() * 0.5);
    EXPECT_EQ(bloch_to_state({0, 0, 1}).rho, (CMat2{1.0, 0.0, 0.0, 0.0}));
    const auto s = bloch_to_state({0.05, 0.1, 0.5}).rho;
    const CMat2 expected = CMat2{1.5, cplx{0.05, -0.1}, cplx{0.05, 0.1}, 0.5} * 0.5;
    EXPECT_LE(max_abs_diff(s, expected), 1e-15);
}

TEST(states, state_to_bloch_inverts) {
    const auto a = state_to_bloch({CMat2::identity() * 0.5});
    EXPECT_EQ(a, (BlochVector{0, 0, 0}));
    const auto z = state_to_bloch({CMat2{1.0, 0.0, 0.0, 0.0}});
    EXPECT_EQ(z, (BlochVector{0, 0, 1}));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const BlochVector p{u(rng), u(rng), u(rng)};
        const auto back = state_to_bloch(bloch_to_state(p));
        EXPECT_NEAR(back.a1, p.a1, 1e-12);
        EXPECT_NEAR(back.a2, p.a2, 1e-12);
        EXPECT_NEAR(back.a3, p.a3, 1e-12);
        const auto rho = bloch_to_state(p).rho;
        EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-15);
        EXPECT_TRUE(is_hermitian(rho));
    }
}

TEST(states, physicality_matches_ball_membership) {
    EXPECT_TRUE(is_physical(bloch_to_state({0, 0, 0})).physical);
    const auto outside = is_physical(bloch_to_state({0, 0, 1.2}));
    EXPECT_FALSE(outside.physical);
    EXPECT_NEAR(outside.min_eigenvalue, -0.1, 1e-15);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int i = 0; i < 2000; ++i) {
        const BlochVector p{u(rng), u(rng), u(rng)};
        const double r = p.norm();
        if (std::abs(r - 1.0) < 1e-9) continue;
        const auto phys = is_physical(bloch_to_state(p));
        EXPECT_EQ(phys.physical, in_ball(p));
        EXPECT_NEAR(phys.min_eigenvalue, 0.5 * (1.0 - r), 1e-14);
    }
}

TEST(states, pure_boundary_states_are_physical) {
    // Rounding on the sphere must not reject pure states.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto p = sample_ball_point(rng);
        p = (1.0 / p.norm()) * p;
        EXPECT_TRUE(is_physical(bloch_to_state(p)).physical);
    }
}

TEST(states, bncp_output_at_example_point_is_physical) {
    const auto op = superop_from_choi(bncp_example());
    EXPECT_TRUE(is_physical(apply(op, BlochVector{0.05, 0.1, 0.5})).physical);
}

TEST(states, sample_ball_is_uniform_and_deterministic) {
    const std::size_t n = 20000;
    const auto pts = sample_ball(42, n);
    ASSERT_EQ(pts.size(), n);
    double sum_r = 0.0;
    for (const auto &p : pts) {
        EXPECT_TRUE(in_ball(p));
        sum_r += p.norm();
    }
    // Uniform ball: E r = 3/4, Var r = 3/5 - 9/16 = 3/80.
    const double sigma = std::sqrt(3.0 / 80.0 / n);
    EXPECT_NEAR(sum_r / n, 0.75, 3.0 * sigma);

    EXPECT_EQ(sample_ball(42, 1000), sample_ball(42, 1000));
    EXPECT_NE(sample_ball(42, 10), sample_ball(43, 10));
    const auto prefix = sample_ball(42, 100);
    EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), pts.begin()));
    EXPECT_THROW(sample_ball(0, 0), OutOfRange);
}

TEST(states, csv_round_trip) {
    const BlochVector p{0.123456789012, -0.5, 1e-7};
    const auto row = to_csv(p);
    EXPECT_EQ(row, "0.123456789012,-0.5,1e-07");
    EXPECT_EQ(bloch_from_csv(row), p);
    EXPECT_THROW(bloch_from_csv("1,2"), IoError);
    EXPECT_THROW(bloch_from_csv("a,b,c"), IoError);
}
