#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "popuc/reference.hpp"
#include "popuc/zeros.hpp"
#include "test_util.hpp"

using popuc::cplx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(PhaseFunction, DegreeOneCosine) {
    // c_1 = 0: R_1 = z + 1, f_1(theta) = 2 cos(theta/2), zero at pi
    const auto pair = popuc::generate_rq(std::vector<double>{0.0}, std::vector<double>{0.25}, 1);
    for (double th : {0.1, 1.0, 2.5, 4.0, 6.0})
        EXPECT_NEAR(popuc::phase_function(pair.R(1), 1, th), 2.0 * std::cos(0.5 * th), 1e-14);
    EXPECT_NEAR(popuc::phase_function(pair.R(1), 1, kPi), 0.0, 1e-15);
}

TEST(PhaseFunction, Example1LevelTwoIsTwoCosine) {
    // c = 0: R_2 = z^2 + 1, f_2 = 2 cos(theta), zeros at pi/2, 3pi/2
    const popuc::reference::Example1 ex{0.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(2), ex.d_seq(2), 2);
    for (double th : {0.3, 1.2, 3.3, 5.1})
        EXPECT_NEAR(popuc::phase_function(pair.R(2), 2, th), 2.0 * std::cos(th), 1e-14);
}

TEST(PhaseFunction, PositiveAtZeroAngle) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = testutil::random_chain(rng, 12);
        const auto pair = popuc::generate_rq(in.c, in.d, 12);
        for (std::size_t n = 1; n <= 12; ++n)
            EXPECT_GT(popuc::phase_function(pair.R(n), n, 0.0), 0.0);
    }
}

TEST(PhaseFunction, RejectsNonSelfInversive) {
    const popuc::ComplexPoly p{cplx(1.0), cplx(2.0, 0.5)}; // not conjugate reciprocal
    EXPECT_THROW((void)popuc::phase_function(p, 1, 1.0), popuc::ConsistencyError);
}

TEST(FindZeros, Example1KnownAngles) {
    // c = 0, n = 3: z^3 = -1 -> {pi/3, pi, 5pi/3}
    const popuc::reference::Example1 ex{0.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(3), ex.d_seq(3), 3);
    const auto zs = popuc::find_zeros(pair, 3);
    ASSERT_EQ(zs.angles.size(), 3u);
    EXPECT_NEAR(zs.angles[0], kPi / 3.0, 1e-12);
    EXPECT_NEAR(zs.angles[1], kPi, 1e-12);
    EXPECT_NEAR(zs.angles[2], 5.0 * kPi / 3.0, 1e-12);
}

TEST(FindZeros, Example1WithNonzeroC) {
    // c = 1, n = 2: z^2 = -(1-i)/(1+i) = i -> {pi/4, 5pi/4}
    const popuc::reference::Example1 ex{1.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(2), ex.d_seq(2), 2);
    const auto zs = popuc::find_zeros(pair, 2);
    ASSERT_EQ(zs.angles.size(), 2u);
    EXPECT_NEAR(zs.angles[0], kPi / 4.0, 1e-12);
    EXPECT_NEAR(zs.angles[1], 5.0 * kPi / 4.0, 1e-12);
}

TEST(FindZeros, SymmetryHoldsIffCVanishes) {
    // real (c = 0) data: zeros symmetric under theta -> 2pi - theta
    const popuc::reference::Example2 ex{0.0};
    std::vector<double> c(12, 0.0), d(12, 0.25);
    d[0] = 0.3;
    d[1] = 0.5;
    const auto pair = popuc::generate_rq(c, d, 12);
    const auto zs = popuc::find_zeros(pair, 12);
    for (std::size_t j = 0; j < 12; ++j)
        EXPECT_NEAR(zs.angles[j] + zs.angles[11 - j], 2.0 * kPi, 1e-10);

    // with c != 0 the symmetry breaks
    std::vector<double> c2(12, 0.4);
    const auto pair2 = popuc::generate_rq(c2, d, 12);
    const auto zs2 = popuc::find_zeros(pair2, 12);
    double max_asym = 0.0;
    for (std::size_t j = 0; j < 12; ++j)
        max_asym = std::max(max_asym, std::abs(zs2.angles[j] + zs2.angles[11 - j] - 2.0 * kPi));
    EXPECT_GT(max_asym, 1e-3);
}

TEST(FindZeros, LadderInterlacesAndResidualsSmall) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t N = 5 + rng() % 20;
        const auto in = testutil::random_chain(rng, N);
        const auto pair = popuc::generate_rq(in.c, in.d, N);
        const auto ladder = popuc::zero_ladder(pair, N);
        for (std::size_t n = 1; n <= N; ++n) {
            const auto& zs = ladder[n - 1];
            ASSERT_EQ(zs.angles.size(), n);
            EXPECT_GT(zs.angles.front(), 0.0);
            EXPECT_LT(zs.angles.back(), 2.0 * kPi);
            const double scale = pair.R(n).max_coeff_magnitude();
            for (double r : zs.residuals) EXPECT_LT(r, 1e-10 * scale);
            if (n >= 2) {
                const auto& prev = ladder[n - 2];
                for (std::size_t j = 0; j + 1 < n; ++j) {
                    EXPECT_LT(zs.angles[j], prev.angles[j]);
                    EXPECT_LT(prev.angles[j], zs.angles[j + 1]);
                }
            }
        }
    }
}

TEST(Wronskian, SingleLevelByHand) {
    // n = 1, c_1 = 0: zero at pi, V_1 = R_1' = 1, value z/(z-1) at z = -1 is 1/2
    const auto pair = popuc::generate_rq(std::vector<double>{0.0}, std::vector<double>{0.25}, 1);
    const auto zs = popuc::find_zeros(pair, 1);
    const auto w = popuc::wronskian_check(pair, zs);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_NEAR(w[0], 0.5, 1e-12);
}

TEST(Wronskian, Example1ClosedFormLevels) {
    const popuc::reference::Example1 ex{0.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(3), ex.d_seq(3), 3);
    const auto ladder = popuc::zero_ladder(pair, 3);
    for (std::size_t n = 2; n <= 3; ++n) {
        const auto w = popuc::wronskian_check(pair, ladder[n - 1]);
        for (double v : w) EXPECT_GT(v, 0.0);
    }
}

TEST(Wronskian, PositiveOnRandomChains) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t N = 5 + rng() % 21;
        const auto in = testutil::random_chain(rng, N);
        const auto pair = popuc::generate_rq(in.c, in.d, N);
        const auto ladder = popuc::zero_ladder(pair, N);
        for (std::size_t n = 1; n <= N; ++n) {
            const auto w = popuc::wronskian_check(pair, ladder[n - 1]);
            for (double v : w) EXPECT_GT(v, 0.0);
        }
    }
}

TEST(DgTransform, ValuesAndZeros) {
    const popuc::reference::Example1 ex{0.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(4), ex.d_seq(4), 4);
    // x = 1 is theta = 0: G_n(1) = 4^{-n/2} R_n(1) > 0
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_NEAR(popuc::dg_transform(pair, n, 1.0),
                    std::pow(2.0, -double(n)) * pair.R_at_one(n), 1e-13);
        EXPECT_GT(popuc::dg_transform(pair, n, 1.0), 0.0);
    }
    // c = 0, n = 2: zeros of G_2 at +-cos(pi/4)
    const double x0 = std::cos(kPi / 4.0);
    EXPECT_NEAR(popuc::dg_transform(pair, 2, x0), 0.0, 1e-12);
    EXPECT_NEAR(popuc::dg_transform(pair, 2, -x0), 0.0, 1e-12);
    // zeros found by find_zeros map through x = cos(theta/2)
    const auto zs = popuc::find_zeros(pair, 4);
    for (double th : zs.angles)
        EXPECT_NEAR(popuc::dg_transform(pair, 4, std::cos(0.5 * th)), 0.0, 1e-11);
    EXPECT_THROW((void)popuc::dg_transform(pair, 1, 1.5), std::invalid_argument);
}
