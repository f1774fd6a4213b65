#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "popuc/reference.hpp"
#include "popuc/transforms.hpp"
#include "test_util.hpp"

using popuc::ComplexPoly;
using popuc::cplx;
using popuc::VerblunskySeq;

TEST(Szego, FreeCaseAndOneStep) {
    // all alpha = 0: S_n = z^n
    const auto S = popuc::szego_polynomials(VerblunskySeq::zeros(6), 6);
    for (std::size_t n = 0; n <= 6; ++n)
        EXPECT_LT(popuc::poly_distance(S[n], ComplexPoly::monomial(n)), 1e-15);

    // alpha_0 = -1/2: S_1 = z + 1/2
    const auto S1 = popuc::szego_advance(ComplexPoly::one(), cplx(-0.5));
    EXPECT_LT(popuc::poly_distance(S1, ComplexPoly({cplx(0.5), cplx(1.0)})), 1e-15);

    EXPECT_THROW((void)popuc::szego_advance(ComplexPoly::one(), cplx(1.0)), std::invalid_argument);
}

TEST(Szego, Example3HatPolynomials) {
    const popuc::reference::Example3 ex(0.5, 1.0);
    std::vector<cplx> ah(10);
    for (std::size_t i = 0; i < 10; ++i) ah[i] = ex.alpha_hat(i);
    const auto S = popuc::szego_polynomials(VerblunskySeq(ah), 10);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uphi(0.0, 6.283185307179586);
    for (std::size_t n = 1; n <= 10; ++n) {
        for (int k = 0; k < 10; ++k) {
            const cplx z = std::polar(1.0, uphi(rng));
            const cplx want = ex.S_hat_eval(n, z);
            EXPECT_LT(std::abs(S[n].eval(z) - want) / std::max(1.0, std::abs(want)), 1e-11)
                << "n=" << n;
        }
    }
}

TEST(RhoTau, RealAlphaWithMinusOneIsFixed) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(-0.9, 0.9);
    std::vector<cplx> a(20);
    for (auto& x : a) x = cplx(ua(rng));
    const auto rt = popuc::rho_tau_sequence(VerblunskySeq(a), cplx(-1.0), 20);
    for (const cplx& r : rt.rho) EXPECT_LT(std::abs(r - cplx(-1.0)), 1e-14);
    EXPECT_TRUE(rt.relation_ok);
}

TEST(RhoTau, Example2ClosedForm) {
    for (double t : {0.0, 0.5, -0.5, 1.0}) {
        const popuc::reference::Example2 ex{t};
        std::vector<cplx> a(40);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = ex.alpha(i);
        const cplx rho0 = -(cplx(0.5) + cplx(0.0, t)) / (cplx(0.5) - cplx(0.0, t));
        const auto rt = popuc::rho_tau_sequence(VerblunskySeq(a), rho0, 40);
        for (std::size_t n = 0; n <= 40; ++n)
            EXPECT_LT(std::abs(rt.rho[n] - ex.rho(n)), 1e-13) << "t=" << t << " n=" << n;
    }
    // spot value: rho_1(0.5) = -(1+3i)/(1-3i)
    const popuc::reference::Example2 ex{0.5};
    EXPECT_LT(std::abs(ex.rho(1) - (-cplx(1.0, 3.0) / cplx(1.0, -3.0))), 1e-15);
}

TEST(RhoTau, Example3AtTZero) {
    const popuc::reference::Example3 ex(0.5, 1.0);
    std::vector<cplx> a(20);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ex.alpha_hat(i);
    const cplx rho0 = -ex.I() / std::conj(ex.I());
    const auto rt = popuc::rho_tau_sequence(VerblunskySeq(a), rho0, 20);
    for (std::size_t n = 0; n <= 20; ++n)
        EXPECT_LT(std::abs(rt.rho[n] - ex.rho_t0(n)), 1e-12) << "n=" << n;
}

TEST(RhoTau, StepIdentityAndValidation) {
    std::mt19937_64 rng(7);
    const auto a = testutil::random_alpha(rng, 30);
    const cplx rho0 = testutil::random_rho0(rng);
    const auto rt = popuc::rho_tau_sequence(VerblunskySeq(a), rho0, 30);
    EXPECT_TRUE(rt.relation_ok);
    for (std::size_t n = 1; n <= 30; ++n) {
        EXPECT_LT(std::abs(std::abs(rt.rho[n]) - 1.0), 1e-13);
        // (1 + rho_n alpha_{n-1})(1 - rho_{n-1} alpha_{n-1}) = 1 - |alpha_{n-1}|^2
        const cplx lhs = (cplx(1.0) + rt.rho[n] * a[n - 1]) * (cplx(1.0) - rt.rho[n - 1] * a[n - 1]);
        EXPECT_LT(std::abs(lhs - cplx(1.0 - std::norm(a[n - 1]))), 1e-13) << "n=" << n;
        // rho_n = -tau_{n+1}
        EXPECT_EQ(rt.rho[n], -rt.tau_at(n + 1));
    }
    EXPECT_THROW((void)popuc::rho_tau_sequence(VerblunskySeq(a), cplx(1.0), 5),
                 std::invalid_argument);
    EXPECT_THROW((void)popuc::rho_tau_sequence(VerblunskySeq(a), cplx(0.5), 5),
                 std::invalid_argument);
}

TEST(Dg1FromOpuc, SymmetricReduction) {
    // real alpha with rho_0 = -1: c = 0 and d = the symmetric first-kind pairs
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(-0.9, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t N = 5 + rng() % 25;
        std::vector<cplx> a(N);
        std::vector<double> ar(N);
        for (std::size_t i = 0; i < N; ++i) {
            ar[i] = ua(rng);
            a[i] = cplx(ar[i]);
        }
        const auto dg1 = popuc::dg1_from_opuc(VerblunskySeq(a), cplx(-1.0), N);
        for (double c : dg1.c) EXPECT_LT(std::abs(c), 1e-14);
        for (std::size_t n = 1; n <= N; ++n) {
            const double am2 = n >= 2 ? ar[n - 2] : -1.0;
            const double want = 0.25 * (1.0 - am2) * (1.0 + ar[n - 1]);
            EXPECT_NEAR(dg1.d_tail[n - 1], want, 1e-13) << "n=" << n;
        }
    }
}

TEST(Dg1FromOpuc, FreeCase) {
    // alpha = 0, rho0 = -1: mfrak = (0, 1/2, 1/2, ...), d tail (1/2, 1/4, ...)
    const auto dg1 = popuc::dg1_from_opuc(VerblunskySeq::zeros(8), cplx(-1.0), 8);
    EXPECT_DOUBLE_EQ(dg1.m[0], 0.0);
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_DOUBLE_EQ(dg1.m[n], 0.5);
    EXPECT_DOUBLE_EQ(dg1.d_tail[0], 0.5);
    for (std::size_t n = 2; n <= 8; ++n) EXPECT_DOUBLE_EQ(dg1.d_tail[n - 1], 0.25);
}

TEST(Dg1FromOpuc, Example2ClosedForms) {
    for (double t : {0.0, 0.5, -0.5, 1.0}) {
        const popuc::reference::Example2 ex{t};
        const std::size_t N = 60;
        std::vector<cplx> a(N);
        for (std::size_t i = 0; i < N; ++i) a[i] = ex.alpha(i);
        const auto dg1 = popuc::t_family(VerblunskySeq(a), cplx(0.5), t, N);
        for (std::size_t k = 1; k <= N + 1; ++k)
            EXPECT_NEAR(dg1.c[k - 1], ex.c(k), 1e-12 * std::max(1.0, std::abs(ex.c(k))))
                << "t=" << t << " k=" << k;
        for (std::size_t n = 0; n <= N; ++n)
            EXPECT_NEAR(dg1.m[n], ex.mfrak(n), 1e-12) << "t=" << t << " n=" << n;
    }
}

TEST(TFamily, LebesgueAndValidation) {
    const auto dg1 = popuc::t_family(VerblunskySeq::zeros(10), cplx(0.5), 0.5, 10);
    EXPECT_DOUBLE_EQ(dg1.c[0], -1.0);
    for (std::size_t k = 2; k <= 11; ++k) EXPECT_LT(std::abs(dg1.c[k - 1]), 1e-14);
    EXPECT_DOUBLE_EQ(dg1.d_tail[0], 0.5);
    for (std::size_t n = 2; n <= 10; ++n) EXPECT_DOUBLE_EQ(dg1.d_tail[n - 1], 0.25);

    // t = 0 with a symmetric measure: rho_n(0) = -1 for all n
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ua(-0.8, 0.8);
    std::vector<cplx> a(12);
    for (auto& x : a) x = cplx(ua(rng));
    const auto rt = popuc::rho_tau_sequence(VerblunskySeq(a), -cplx(0.5) / cplx(0.5), 12);
    for (const auto& r : rt.rho) EXPECT_LT(std::abs(r + 1.0), 1e-14);

    EXPECT_THROW((void)popuc::t_family(VerblunskySeq::zeros(4), cplx(0.4), 0.0, 4),
                 std::invalid_argument);
}

TEST(OpucFromDg1, Example1IsFreeCase) {
    const popuc::reference::Example1 ex{1.0, 0.25};
    const std::size_t N = 12;
    const auto pair = popuc::generate_rq(ex.c_seq(N + 1), ex.d_seq(N + 1), N + 1);
    const auto res = popuc::opuc_from_dg1(pair, N);
    for (std::size_t i = 0; i < N; ++i) EXPECT_LT(std::abs(res.alpha[i]), 1e-13);
    for (std::size_t n = 0; n <= N; ++n)
        EXPECT_LT(popuc::poly_distance(res.s_hat[n], ComplexPoly::monomial(n)), 1e-12);
}

TEST(OpucFromDg1, Example3ClosedForm) {
    const popuc::reference::Example3 ex(0.5, 1.0);
    const std::size_t N = 15;
    const auto pair = popuc::generate_rq(ex.c_seq(N + 1), ex.d_seq(N + 1), N + 1);
    const auto res = popuc::opuc_from_dg1(pair, N);
    for (std::size_t i = 0; i < N; ++i)
        EXPECT_LT(std::abs(res.alpha[i] - ex.alpha_hat(i)), 1e-12) << "i=" << i;
    // alpha_hat_{n-1} = -conj(S_hat_n(0)) by definition
    for (std::size_t n = 1; n <= N; ++n)
        EXPECT_LT(std::abs(res.alpha[n - 1] + std::conj(res.s_hat[n].eval(cplx(0.0)))), 1e-11);
    // normalization kappa_hat_n^{-2} = (1 - mfrak_n) prod 4 d_{k+1}/(1+c_{k+1}^2)
    const auto dfull = ex.d_seq(N + 1);
    double prod = 1.0;
    for (std::size_t n = 1; n <= 5; ++n) {
        prod *= 4.0 * dfull[n] / (1.0 + ex.c(n + 1) * ex.c(n + 1));
        EXPECT_NEAR(res.kappa_inv_sq[n], (1.0 - ex.mfrak(n)) * prod, 1e-12);
    }
}

TEST(OpucFromDg1, RoundTripOnRandomData) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t N = 3 + rng() % 30;
        const auto a = testutil::random_alpha(rng, N);
        const cplx rho0 = testutil::random_rho0(rng);
        const auto dg1 = popuc::dg1_from_opuc(VerblunskySeq(a), rho0, N);
        const auto pair = popuc::dg1_to_recurrence(dg1, 0.25, N + 1);
        const auto res = popuc::opuc_from_dg1(pair, N);
        for (std::size_t i = 0; i < N; ++i)
            EXPECT_LT(std::abs(res.alpha[i] - a[i]), 1e-10) << "trial=" << trial << " i=" << i;
    }
}

TEST(OpucFromDg1, PopucLinkageAndDualForms) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t N = 4 + rng() % 16;
        const auto in = testutil::random_chain(rng, N + 1, 1.0);
        const auto pair = popuc::generate_rq(in.c, in.d, N + 1);
        const auto res = popuc::opuc_from_dg1(pair, N);
        cplx tau(1.0);
        for (std::size_t n = 0; n <= N; ++n) {
            const cplx tau_next = tau * std::conj(cplx(1.0, in.c[n])) / cplx(1.0, in.c[n]);
            // R_{n+1} / prod_{k<=n+1}(1+ic_k) = z S_hat_n + tau_{n+1} S_hat_n^*
            const ComplexPoly lhs = pair.R(n + 1) * (cplx(1.0) / pair.leading(n + 1));
            const ComplexPoly rhs =
                res.s_hat[n].times_z() + res.s_hat[n].star(n) * tau_next;
            EXPECT_LT(popuc::poly_distance(lhs, rhs), 1e-11) << "n=" << n;
            if (n >= 1) {
                // the two closed forms of mfrak_n agree
                const cplx w1 = tau * res.alpha[n - 1];
                const cplx w2 = tau_next * res.alpha[n - 1];
                const double m1 = 0.5 * std::norm(cplx(1.0) + w1) / (1.0 + w1.real());
                const double m2 = 0.5 * (1.0 - std::norm(w2)) / (1.0 - w2.real());
                EXPECT_NEAR(m1, m2, 1e-12);
                EXPECT_NEAR(m1, pair.minimal_param(n), 1e-11);
            }
            tau = tau_next;
        }
    }
}

TEST(OpucTilde, ConstantQuarterChain) {
    // c = 0, d = 1/4: m_n = n/(2(n+1)), alpha_tilde_{n-1} = 1/(n+1), M_0 = 1/2
    const std::size_t N = 10, levels = 64;
    const std::vector<double> c(levels, 0.0);
    const std::vector<double> d(levels, 0.25);
    const auto pair = popuc::generate_rq(c, d, levels);
    const auto res = popuc::opuc_tilde_from_dg2(pair, N);
    for (std::size_t n = 1; n <= N; ++n)
        EXPECT_NEAR(res.alpha[n - 1].real(), 1.0 / double(n + 1), 1e-13) << "n=" << n;
    // S_tilde_1 = z - conj(alpha_tilde_0)
    EXPECT_LT(popuc::poly_distance(res.s_tilde[1],
                                   ComplexPoly({-std::conj(res.alpha[0]), cplx(1.0)})),
              1e-13);
    EXPECT_NEAR(res.M0, 0.5, 2e-3); // horizon limited by the pair's data
}

TEST(OpucTilde, RequiresFullChain) {
    const popuc::reference::Example1 ex{0.0, 0.25};
    const auto pair = popuc::generate_rq(ex.c_seq(8), ex.d_seq(8), 8);
    EXPECT_THROW((void)popuc::opuc_tilde_from_dg2(pair, 8), popuc::ChainError);
}

TEST(WeightForward, LebesgueGivesExample2) {
    const auto ah = popuc::weight_transform_forward(VerblunskySeq::zeros(31), 30);
    for (std::size_t i = 0; i < 30; ++i)
        EXPECT_NEAR(ah[i].real(), -1.0 / double(i + 2), 1e-13) << "i=" << i;
}

TEST(WeightForward, Example2GivesExample3AtBOne) {
    const popuc::reference::Example2 ex2{0.0};
    const popuc::reference::Example3 ex3(1.0, 0.0);
    const std::size_t N = 20;
    std::vector<cplx> a(N + 1);
    for (std::size_t i = 0; i <= N; ++i) a[i] = ex2.alpha(i);
    const auto ah = popuc::weight_transform_forward(VerblunskySeq(a), N);
    for (std::size_t i = 0; i < N; ++i)
        EXPECT_LT(std::abs(ah[i] - ex3.alpha_hat(i)), 1e-13) << "i=" << i;
    // and the Szego polynomials built from them match the closed form
    const auto S = popuc::szego_polynomials(ah, 8);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uphi(0.0, 6.283185307179586);
    for (std::size_t n = 1; n <= 8; ++n) {
        const cplx z = std::polar(1.0, uphi(rng));
        EXPECT_LT(std::abs(S[n].eval(z) - ex3.S_hat_eval(n, z)), 1e-11);
    }
}

TEST(WeightInverse, InvertsForwardOnLebesgue) {
    // alpha_hat_{n-1} = -1/(n+1) with M_0 = 0 recovers alpha = 0;
    // a long tail sharpens the maximal-parameter horizon
    const std::size_t tail = 5000, N = 30;
    std::vector<cplx> ah(tail);
    for (std::size_t i = 0; i < tail; ++i) ah[i] = cplx(-1.0 / double(i + 2));
    const auto at =
        popuc::weight_transform_inverse(VerblunskySeq(ah), 0.0, cplx(0.5), N);
    for (std::size_t i = 0; i < N; ++i) EXPECT_LT(std::abs(at[i]), 1e-9) << "i=" << i;
}

TEST(WeightInverse, MassVariantsStayAdmissible) {
    const std::size_t tail = 3000, N = 25;
    std::vector<cplx> ah(tail);
    for (std::size_t i = 0; i < tail; ++i) ah[i] = cplx(-1.0 / double(i + 2));
    for (double M0 : {0.0, 0.3}) {
        const auto at =
            popuc::weight_transform_inverse(VerblunskySeq(ah), M0, cplx(0.5), N);
        for (std::size_t i = 0; i < N; ++i) {
            EXPECT_LT(std::abs(at[i]), 1.0);
            EXPECT_LT(std::abs(at[i].imag()), 1e-12); // real input stays real
        }
    }
}

TEST(WeightInverse, RefusesSppcsChain) {
    // Lebesgue (alpha = 0): J does not exist, the built chain is SPPCS
    EXPECT_THROW((void)popuc::weight_transform_inverse(VerblunskySeq::zeros(200), 0.0,
                                                       cplx(0.5), 20),
                 popuc::SppcsRefusal);
}

TEST(DgSymmetric, FreeCaseAndConsistency) {
    const std::vector<double> zero_alpha(12, 0.0);
    const auto coeffs = popuc::dg_symmetric_coeffs(zero_alpha, 11);
    EXPECT_DOUBLE_EQ(coeffs.d1_seq[0], 0.5);
    for (std::size_t i = 1; i < 11; ++i) EXPECT_DOUBLE_EQ(coeffs.d1_seq[i], 0.25);
    for (std::size_t i = 0; i < 11; ++i) EXPECT_DOUBLE_EQ(coeffs.d2_seq[i], 0.25);

    // d^(1) equals the dg1_from_opuc chain at rho_0 = -1
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ua(-0.85, 0.85);
    std::vector<double> ar(12);
    std::vector<cplx> ac(12);
    for (std::size_t i = 0; i < 12; ++i) {
        ar[i] = ua(rng);
        ac[i] = cplx(ar[i]);
    }
    const auto c2 = popuc::dg_symmetric_coeffs(ar, 11);
    const auto dg1 = popuc::dg1_from_opuc(VerblunskySeq(ac), cplx(-1.0), 11);
    for (std::size_t i = 0; i < 11; ++i)
        EXPECT_NEAR(c2.d1_seq[i], dg1.d_tail[i], 1e-14) << "i=" << i;
}

TEST(DivergenceSeries, ThreeRegimes) {
    // alpha = 0: terms are 1, series diverges, J does not exist
    const std::vector<double> zeros_a(101, 0.0);
    const auto r0 = popuc::divergence_series(zeros_a, 100);
    EXPECT_EQ(r0.verdict, popuc::SeriesVerdict::diverges);
    ASSERT_TRUE(r0.j_exists.has_value());
    EXPECT_FALSE(*r0.j_exists);
    EXPECT_NEAR(r0.partial_sums.back(), 100.0, 1e-12);

    // alpha_{n-1} = -1/(n+1): sum telescopes to 1, J exists
    std::vector<double> neg(5001);
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -1.0 / double(i + 2);
    const auto r1 = popuc::divergence_series(neg, 5000);
    EXPECT_EQ(r1.verdict, popuc::SeriesVerdict::converges);
    EXPECT_TRUE(*r1.j_exists);
    EXPECT_NEAR(r1.partial_sums.back(), 1.0, 1e-3);

    // alpha_{n-1} = +1/(n+1): terms grow, diverges
    std::vector<double> pos(2001);
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = 1.0 / double(i + 2);
    const auto r2 = popuc::divergence_series(pos, 2000);
    EXPECT_EQ(r2.verdict, popuc::SeriesVerdict::diverges);
    EXPECT_FALSE(*r2.j_exists);
}
