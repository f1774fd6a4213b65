#ifndef POPUC_TEST_UTIL_HPP
#define POPUC_TEST_UTIL_HPP

#include <complex>
#include <random>
#include <vector>

#include "popuc/complex_poly.hpp"

namespace testutil {

using popuc::cplx;

struct ChainInput {
    std::vector<double> c; // c[i] = c_{i+1}
    std::vector<double> d; // d[i] = d_{i+1}, d[0] = d_1 != 0
};

/// Random (c, d) with the tail {d_2, d_3, ...} a positive chain sequence by
/// construction (built from a random parameter sequence).
inline ChainInput random_chain(std::mt19937_64& rng, std::size_t N, double c_range = 2.0,
                               double g_lo = 0.1, double g_hi = 0.9) {
    std::uniform_real_distribution<double> uc(-c_range, c_range);
    std::uniform_real_distribution<double> ug(g_lo, g_hi);
    std::uniform_real_distribution<double> ud(0.1, 0.9);
    ChainInput in;
    in.c.resize(N);
    in.d.resize(N);
    for (auto& x : in.c) x = uc(rng);
    in.d[0] = ud(rng);
    double g_prev = 0.0;
    for (std::size_t n = 1; n < N; ++n) {
        const double g = ug(rng);
        in.d[n] = (1.0 - g_prev) * g;
        g_prev = g;
    }
    return in;
}

/// Random (c, d) where the whole {d_1, d_2, ...} is a positive chain
/// sequence (parameter sequence with g_0 > 0), as the tilde-side ops need.
inline ChainInput random_full_chain(std::mt19937_64& rng, std::size_t N, double c_range = 1.0) {
    std::uniform_real_distribution<double> uc(-c_range, c_range);
    std::uniform_real_distribution<double> ug(0.15, 0.85);
    ChainInput in;
    in.c.resize(N);
    in.d.resize(N);
    for (auto& x : in.c) x = uc(rng);
    double g_prev = ug(rng); // g_0 > 0
    for (std::size_t n = 0; n < N; ++n) {
        const double g = ug(rng);
        in.d[n] = (1.0 - g_prev) * g;
        g_prev = g;
    }
    return in;
}

inline std::vector<cplx> random_alpha(std::mt19937_64& rng, std::size_t N, double rmax = 0.9) {
    std::uniform_real_distribution<double> ur(0.0, rmax);
    std::uniform_real_distribution<double> uphi(0.0, 6.283185307179586);
    std::vector<cplx> a(N);
    for (auto& x : a) x = std::polar(ur(rng), uphi(rng));
    return a;
}

inline cplx random_rho0(std::mt19937_64& rng, double min_dist_from_one = 0.1) {
    std::uniform_real_distribution<double> uphi(0.0, 6.283185307179586);
    for (;;) {
        const cplx r = std::polar(1.0, uphi(rng));
        if (std::abs(r - cplx(1.0)) > min_dist_from_one) return r;
    }
}

} // namespace testutil

#endif
