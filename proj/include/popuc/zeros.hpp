#ifndef POPUC_ZEROS_HPP
#define POPUC_ZEROS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "popuc/complex_poly.hpp"
#include "popuc/errors.hpp"
#include "popuc/recurrence.hpp"
#include "popuc/special.hpp"

namespace popuc {

inline constexpr double kPhaseImagTol = 1e-10;
inline constexpr double kWronskianImagTol = 1e-9;
inline constexpr double kBisectionTolTheta = 1e-13;
inline constexpr int kBisectionMaxIter = 200;
inline constexpr int kNewtonPolishSteps = 5;
inline constexpr double kZeroResidualTol = 1e-10;

/// All n zeros of R_n, as strictly increasing angles in (0, 2pi).
/// z = 1 is never a zero because R_n(1) > 0.
struct ZeroSet {
    std::size_t level = 0;
    std::vector<double> angles;
    std::vector<double> residuals; // |R_n(e^{i theta})| per zero
};

namespace detail {

inline double value_scale_on_circle(const ComplexPoly& p) {
    double s = 0.0;
    for (const cplx& c : p.coeffs()) s += std::abs(c);
    return std::max(s, 1.0);
}

} // namespace detail

/// Real phase function f_n(theta) = e^{-i n theta / 2} R_n(e^{i theta}).
/// Self-inversiveness makes this value real; its zeros on (0, 2pi) are
/// exactly the zeros of R_n on the circle. Root finding happens in theta,
/// never in z, so iterates stay on the circle by construction.
inline double phase_function(const ComplexPoly& Rn, std::size_t n, double theta) {
    const cplx z = std::polar(1.0, theta);
    const cplx v = std::polar(1.0, -0.5 * double(n) * theta) * Rn.eval(z);
    if (std::abs(v.imag()) > kPhaseImagTol * detail::value_scale_on_circle(Rn))
        throw ConsistencyError("phase_function: polynomial is not self-inversive");
    return v.real();
}

/// d/dtheta of the phase function, from R_n' analytically.
inline double phase_derivative(const ComplexPoly& Rn, const ComplexPoly& Rn_prime,
                               std::size_t n, double theta) {
    const cplx z = std::polar(1.0, theta);
    const cplx rot = std::polar(1.0, -0.5 * double(n) * theta);
    const cplx v = rot * (cplx(0.0, 1.0) * z * Rn_prime.eval(z) -
                          cplx(0.0, 0.5 * double(n)) * Rn.eval(z));
    return v.real();
}

namespace detail {

struct PhaseEval {
    const ComplexPoly* R;
    const ComplexPoly* Rp;
    std::size_t n;
    double operator()(double theta) const { return phase_function(*R, n, theta); }
    double deriv(double theta) const { return phase_derivative(*R, *Rp, n, theta); }
};

inline double refine_bracket(const PhaseEval& f, double lo, double hi, double flo) {
    // bisection to the angle tolerance
    double fl = flo;
    for (int it = 0; it < kBisectionMaxIter && hi - lo > kBisectionTolTheta; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fl > 0.0) == (fm > 0.0)) {
            lo = mid;
            fl = fm;
        } else {
            hi = mid;
        }
    }
    // Newton polish, kept inside the bracket
    double theta = 0.5 * (lo + hi);
    double best = theta;
    double best_abs = std::abs(f(theta));
    for (int it = 0; it < kNewtonPolishSteps; ++it) {
        const double fv = f(theta);
        const double dv = f.deriv(theta);
        if (dv == 0.0) break;
        const double next = theta - fv / dv;
        if (next <= lo || next >= hi) break;
        theta = next;
        const double a = std::abs(f(theta));
        if (a < best_abs) {
            best_abs = a;
            best = theta;
        }
    }
    return best;
}

} // namespace detail

/// Locate the n zeros of R_n using sign-change brackets built from the
/// interlacing zeros of R_{n-1} (walls at 0 and 2pi come from R_n(1) > 0).
/// `prev` may be null, in which case the ladder is computed from level 1.
inline ZeroSet find_zeros(const RecurrencePair& pair, std::size_t n, const ZeroSet* prev = nullptr) {
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("find_zeros: level out of range");

    ZeroSet computed_prev;
    if (n > 1 && prev == nullptr) {
        computed_prev = find_zeros(pair, n - 1, nullptr);
        prev = &computed_prev;
    }
    if (n > 1 && (prev->level != n - 1 || prev->angles.size() != n - 1))
        throw std::invalid_argument("find_zeros: prev must be the level n-1 zero set");

    const ComplexPoly& R = pair.R(n);
    const ComplexPoly Rp = R.derivative();
    const detail::PhaseEval f{&R, &Rp, n};
    const double two_pi = 2.0 * std::numbers::pi;
    const double wall0 = pair.R_at_one(n);                        // f_n(0)
    const double wall2pi = (n % 2 == 0) ? wall0 : -wall0;         // f_n(2pi)

    std::vector<double> walls;
    walls.reserve(n + 1);
    walls.push_back(0.0);
    if (n > 1) walls.insert(walls.end(), prev->angles.begin(), prev->angles.end());
    walls.push_back(two_pi);

    ZeroSet out;
    out.level = n;
    out.angles.reserve(n);
    out.residuals.reserve(n);
    const double scale = R.max_coeff_magnitude();

    for (std::size_t j = 0; j < n; ++j) {
        double lo = walls[j];
        double hi = walls[j + 1];
        double flo = (j == 0) ? wall0 : f(lo);
        double fhi = (j == n - 1) ? wall2pi : f(hi);
        if (flo == 0.0) { lo += 1e-15 * (hi - lo); flo = f(lo); }
        if (fhi == 0.0) { hi -= 1e-15 * (hi - lo); fhi = f(hi); }

        if ((flo > 0.0) == (fhi > 0.0)) {
            // numerical degeneracy: scan the subinterval on a fine grid
            const std::size_t res = 8 * n;
            bool found = false;
            double plo = lo, pf = flo;
            for (std::size_t k = 1; k <= res; ++k) {
                const double t = lo + (hi - lo) * double(k) / double(res + 1);
                const double ft = f(t);
                if ((pf > 0.0) != (ft > 0.0)) {
                    lo = plo;
                    flo = pf;
                    hi = t;
                    found = true;
                    break;
                }
                plo = t;
                pf = ft;
            }
            if (!found)
                throw ZeroIsolationError("find_zeros: no sign change in bracket " +
                                         std::to_string(j + 1) + " of level " + std::to_string(n));
        }

        const double theta = detail::refine_bracket(f, lo, hi, flo);
        const double resid = std::abs(R.eval(std::polar(1.0, theta)));
        if (resid > kZeroResidualTol * scale)
            throw ZeroIsolationError("find_zeros: residual above tolerance at level " +
                                     std::to_string(n));
        out.angles.push_back(theta);
        out.residuals.push_back(resid);
    }

    for (std::size_t j = 0; j + 1 < out.angles.size(); ++j)
        if (!(out.angles[j] < out.angles[j + 1]))
            throw ConsistencyError("find_zeros: angles not strictly increasing");
    if (n > 1) {
        // strict interlacing with the previous level
        for (std::size_t j = 0; j < n - 1; ++j)
            if (!(out.angles[j] < prev->angles[j] && prev->angles[j] < out.angles[j + 1]))
                throw ConsistencyError("find_zeros: interlacing violated at level " +
                                       std::to_string(n));
    }
    return out;
}

/// Zero sets for levels 1..N, each built on the previous one.
inline std::vector<ZeroSet> zero_ladder(const RecurrencePair& pair, std::size_t N) {
    std::vector<ZeroSet> ladder;
    ladder.reserve(N);
    for (std::size_t n = 1; n <= N; ++n)
        ladder.push_back(find_zeros(pair, n, n > 1 ? &ladder[n - 2] : nullptr));
    return ladder;
}

/// The n real quantities z^{-(n-2)} (z-1)^{-1} V_n(z) at the zeros of R_n,
/// with V_n = R_n' R_{n-1} - R_{n-1}' R_n. Positivity of every value is the
/// zero-interlacing lemma; a nonpositive value means the upstream numerics
/// failed, not that the lemma broke.
inline std::vector<double> wronskian_check(const RecurrencePair& pair, const ZeroSet& zset) {
    const std::size_t n = zset.level;
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("wronskian_check: level out of range");
    const ComplexPoly& Rn = pair.R(n);
    const ComplexPoly& Rm = pair.R(n - 1);
    const ComplexPoly Rnp = Rn.derivative();
    const ComplexPoly Rmp = Rm.derivative();

    std::vector<double> vals;
    vals.reserve(n);
    for (double theta : zset.angles) {
        const cplx z = std::polar(1.0, theta);
        // extended-precision evaluation: V can sit many orders below the
        // coefficient scale, and realness of the rotated value must not be
        // judged against plain-double cancellation noise
        const cplx a = detail::eval_dd(Rnp, z) * detail::eval_dd(Rm, z);
        const cplx b = detail::eval_dd(Rmp, z) * detail::eval_dd(Rn, z);
        const cplx V = a - b;
        const cplx w = std::polar(1.0, -(double(n) - 2.0) * theta) * V / (z - 1.0);
        if (std::abs(w.imag()) > kWronskianImagTol * std::max(1.0, std::abs(w)))
            throw ConsistencyError("wronskian_check: value is not real");
        if (!(w.real() > 0.0))
            throw LemmaViolation("wronskian_check: nonpositive value at level " +
                                 std::to_string(n));
        vals.push_back(w.real());
    }
    return vals;
}

/// The transformation 2x = z^{1/2} + z^{-1/2} maps e^{i theta} to
/// cos(theta/2); on [-1,1] the value (4z)^{-n/2} R_n(z) is real and its
/// zeros sit at cos(theta_{n,j}/2).
inline double dg_transform(const RecurrencePair& pair, std::size_t n, double x) {
    if (x < -1.0 || x > 1.0) throw std::invalid_argument("dg_transform: x outside [-1,1]");
    const double theta = 2.0 * std::acos(x);
    return std::pow(2.0, -double(n)) * phase_function(pair.R(n), n, theta);
}

} // namespace popuc

#endif
