#ifndef POPUC_MEASURES_HPP
#define POPUC_MEASURES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "popuc/chain_sequence.hpp"
#include "popuc/complex_poly.hpp"
#include "popuc/errors.hpp"
#include "popuc/recurrence.hpp"
#include "popuc/special.hpp"
#include "popuc/zeros.hpp"

namespace popuc {

/// Modified moments nu_n of the functional N, plus the derived mu-hat and
/// mu-tilde moment maps. scale is the factor (1+c_1^2)/(4 d_1) relating N
/// to the hat measure; it is always reported explicitly.
struct MomentTable {
    std::map<int, cplx> nu;       // indices -K .. K+1
    std::map<int, cplx> mu_hat;   // indices -K .. K once filled
    std::map<int, cplx> mu_tilde; // indices -K .. K once filled
    double scale = 0.0;
    double d1 = 0.0;
    int K = 0;
};

/// Extract nu_1..nu_{K+1} from the Taylor expansion of Q_N/R_N at the
/// origin with N = K+2; the correspondence order guarantees those
/// coefficients are already exact at that level. nu_0 = 2 d_1/(1+i c_1),
/// negative indices follow from nu_n = -conj(nu_{-n+1}). The long division
/// is benign because |R_N(0)| = prod sqrt(1+c_k^2) >= 1.
inline MomentTable nu_table(const RecurrencePair& pair, int K) {
    if (K < 1) throw std::invalid_argument("nu_table: K must be >= 1");
    const std::size_t N = std::size_t(K) + 2;
    if (pair.levels() < N)
        throw std::invalid_argument("nu_table: pair must be populated through K+2");

    const auto& q = pair.Q(N).coeffs();
    const auto& r = pair.R(N).coeffs();
    if (std::abs(r[0]) < 1.0 - 1e-9)
        throw ConsistencyError("nu_table: |R_N(0)| < 1, corrupted recurrence data");

    // e_k: Taylor coefficients of Q_N / R_N at the origin
    std::vector<cplx> e(std::size_t(K) + 1);
    for (std::size_t k = 0; k < e.size(); ++k) {
        cplx acc = k < q.size() ? q[k] : cplx(0.0);
        for (std::size_t j = 1; j <= std::min(k, r.size() - 1); ++j) acc -= r[j] * e[k - j];
        e[k] = acc / r[0];
    }

    MomentTable t;
    t.K = K;
    t.d1 = pair.d(1);
    t.scale = (1.0 + pair.c(1) * pair.c(1)) / (4.0 * pair.d(1));
    t.nu[0] = 2.0 * pair.d(1) / cplx(1.0, pair.c(1));
    for (int n = 1; n <= K + 1; ++n) t.nu[n] = -e[std::size_t(n) - 1];
    for (int n = -K; n <= 0; ++n) t.nu[n] = -std::conj(t.nu.at(1 - n));
    return t;
}

/// mu-hat moments: mu_hat_n = scale * (nu_n - nu_{n+1}) for n >= 1,
/// mu_hat_0 = 1 (the same formula reproduces it; checked), negatives by
/// conjugation.
inline MomentTable& mu_hat_moments(MomentTable& t) {
    if (t.nu.empty()) throw std::invalid_argument("mu_hat_moments: nu table not filled");
    const cplx zeroth = t.scale * (t.nu.at(0) - t.nu.at(1));
    if (std::abs(zeroth - cplx(1.0)) > 1e-10)
        throw ConsistencyError("mu_hat_moments: scale*(nu_0 - nu_1) != 1");
    t.mu_hat[0] = cplx(1.0);
    for (int n = 1; n <= t.K; ++n) {
        t.mu_hat[n] = t.scale * (t.nu.at(n) - t.nu.at(n + 1));
        t.mu_hat[-n] = std::conj(t.mu_hat[n]);
    }
    return t;
}

/// mu-tilde moments: mu_tilde_n = 1 + sum_{j<=n} nu_j, the mirror side by
/// conjugate symmetry (cross-checked against the partial sums of nu at
/// negative indices).
inline MomentTable& mu_tilde_moments(MomentTable& t) {
    if (t.nu.empty()) throw std::invalid_argument("mu_tilde_moments: nu table not filled");
    t.mu_tilde[0] = cplx(1.0);
    cplx acc_pos(0.0), acc_neg(0.0);
    for (int n = 1; n <= t.K; ++n) {
        acc_pos += t.nu.at(n);
        acc_neg += t.nu.at(-n + 1);
        t.mu_tilde[n] = cplx(1.0) + acc_pos;
        t.mu_tilde[-n] = cplx(1.0) - acc_neg;
        if (std::abs(t.mu_tilde[n] - std::conj(t.mu_tilde[-n])) >
            1e-13 * std::max(1.0, std::abs(t.mu_tilde[n])))
            throw ConsistencyError("mu_tilde_moments: conjugate symmetry violated");
    }
    return t;
}

inline constexpr double kLOrthMiddleTol = 1e-9;  // relative to |gamma_n|
inline constexpr double kLOrthEndTol = 1e-11;    // relative

/// Residuals of the sliding-window orthogonality N[z^{-n+j} R_n] for
/// j = -1, 0, ..., n. Middle entries must vanish; j = n gives gamma_n and
/// j = -1 gives -conj(gamma_n). Report-only: callers decide what to assert.
struct LOrthReport {
    std::size_t n = 0;
    std::vector<cplx> values;  // j = -1 .. n
    cplx gamma_n{};
    double max_middle_abs = 0.0;
    double end_hi_rel = 0.0; // |value(j=n) - gamma_n| / |gamma_n|
    double end_lo_rel = 0.0; // |value(j=-1) + conj(gamma_n)| / |gamma_n|
    bool pass = false;
};

inline LOrthReport l_orthogonality_check(const RecurrencePair& pair, const MomentTable& t,
                                         std::size_t n) {
    if (n < 1 || n >= pair.levels())
        throw std::invalid_argument("l_orthogonality_check: need pair populated past n");
    if (t.K < int(n))
        throw std::invalid_argument("l_orthogonality_check: table too short, need K >= n");

    LOrthReport rep;
    rep.n = n;
    rep.gamma_n = pair.gamma(n);

    const auto& r = pair.R(n).coeffs();
    for (long j = -1; j <= long(n); ++j) {
        // double-double accumulation: the sum cancels down to gamma_n, which
        // shrinks geometrically with n while the terms do not
        detail::cdd acc;
        for (std::size_t k = 0; k < r.size(); ++k)
            acc = detail::cdd_add(
                acc, detail::cdd_mul(detail::cdd(r[k]),
                                     detail::cdd(t.nu.at(int(long(n) - j - long(k))))));
        const cplx v = acc.to_cplx();
        rep.values.push_back(v);
        if (j >= 0 && j < long(n)) rep.max_middle_abs = std::max(rep.max_middle_abs, std::abs(v));
    }
    const double g = std::abs(rep.gamma_n);
    rep.end_hi_rel = std::abs(rep.values.back() - rep.gamma_n) / g;
    rep.end_lo_rel = std::abs(rep.values.front() + std::conj(rep.gamma_n)) / g;
    rep.pass = rep.max_middle_abs < kLOrthMiddleTol * g && rep.end_hi_rel < kLOrthEndTol &&
               rep.end_lo_rel < kLOrthEndTol;
    return rep;
}

enum class RuleKind { hat, tilde };

inline constexpr double kWeightImagTol = 1e-10;
inline constexpr double kWeightSumTol = 1e-10;

/// Interpolatory quadrature rule on the unit circle: node angles from a
/// ZeroSet, positive weights, and (for tilde rules) a point mass at angle 0.
struct QuadratureRule {
    std::size_t level = 0;
    std::vector<double> angles;
    std::vector<double> weights;
    std::optional<double> mass_at_one;
    RuleKind kind = RuleKind::hat;

    cplx moment(int k) const {
        cplx acc = mass_at_one ? cplx(*mass_at_one) : cplx(0.0);
        for (std::size_t j = 0; j < angles.size(); ++j)
            acc += weights[j] * std::polar(1.0, double(k) * angles[j]);
        return acc;
    }

    double total_mass() const {
        double s = mass_at_one.value_or(0.0);
        for (double w : weights) s += w;
        return s;
    }
};

/// Quadrature from the hat decomposition: weights A_hat_n(z)/R_n'(z) at the
/// zeros of R_n. They are strictly positive and sum to one; the resulting
/// step function reproduces mu_hat_{-k} for |k| <= n-2.
inline QuadratureRule quadrature_hat(const RecurrencePair& pair, const ZeroSet& zset) {
    const std::size_t n = zset.level;
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("quadrature_hat: level out of range");
    const ComplexPoly A = a_hat(pair, n);
    const ComplexPoly Rp = pair.R(n).derivative();

    QuadratureRule rule;
    rule.level = n;
    rule.kind = RuleKind::hat;
    rule.angles = zset.angles;
    rule.weights.reserve(n);
    for (double theta : zset.angles) {
        const cplx z = std::polar(1.0, theta);
        const cplx lam = detail::eval_dd(A, z) / detail::eval_dd(Rp, z);
        if (std::abs(lam.imag()) > kWeightImagTol || !(lam.real() > -kWeightImagTol))
            throw LemmaViolation("quadrature_hat: weight not real positive");
        rule.weights.push_back(lam.real());
    }
    if (std::abs(rule.total_mass() - 1.0) > kWeightSumTol)
        throw LemmaViolation("quadrature_hat: weights do not sum to 1");
    return rule;
}

/// Quadrature from the tilde decomposition, which needs the stronger
/// hypothesis that {d_n} including d_1 is a positive chain sequence. The
/// rule carries the mass 1 - Q_n(1)/R_n(1) at angle 0; that mass decreases
/// to the maximal parameter M_0 of {d_n}.
inline QuadratureRule quadrature_tilde(const RecurrencePair& pair, const ZeroSet& zset) {
    const std::size_t n = zset.level;
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("quadrature_tilde: level out of range");
    auto chk = is_positive_chain(pair.d_seq(), pair.levels());
    if (!chk.ok)
        throw ChainError("quadrature_tilde: {d_n} with d_1 is not a positive chain sequence",
                         chk.fail_index);

    QuadratureRule rule;
    rule.level = n;
    rule.kind = RuleKind::tilde;
    rule.angles = zset.angles;

    const double mass = 1.0 - pair.Q(n).eval(cplx(1.0)).real() / pair.R_at_one(n);
    if (!(mass > 0.0) || !(mass < 1.0))
        throw LemmaViolation("quadrature_tilde: mass at z=1 outside (0,1)");
    rule.mass_at_one = mass;

    const ComplexPoly& Rn = pair.R(n);
    const ComplexPoly& Rm = pair.R(n - 1);
    const ComplexPoly& Qn = pair.Q(n);
    const ComplexPoly& Qm = pair.Q(n - 1);
    const ComplexPoly Rnp = Rn.derivative();
    const ComplexPoly Rmp = Rm.derivative();
    for (double theta : zset.angles) {
        const cplx z = std::polar(1.0, theta);
        const cplx U = detail::eval_dd(Qn, z) * detail::eval_dd(Rm, z) -
                       detail::eval_dd(Qm, z) * detail::eval_dd(Rn, z);
        const cplx V = detail::eval_dd(Rnp, z) * detail::eval_dd(Rm, z) -
                       detail::eval_dd(Rmp, z) * detail::eval_dd(Rn, z);
        const cplx lam = U / ((1.0 - z) * V);
        if (std::abs(lam.imag()) > kWeightImagTol || !(lam.real() > -kWeightImagTol))
            throw LemmaViolation("quadrature_tilde: weight not real positive");
        rule.weights.push_back(lam.real());
    }
    if (std::abs(rule.total_mass() - 1.0) > kWeightSumTol)
        throw LemmaViolation("quadrature_tilde: total mass is not 1");
    return rule;
}

/// Principal value integral I of zeta/(zeta-1), the optional integral J of
/// zeta/((1-zeta)(zeta-1)), and the rotation constant t = -Im[(1+ic_1) I].
struct MeasureIntegrals {
    cplx I{};
    std::optional<double> J;
    std::optional<double> t;
};

inline double t_from_I(cplx I, double c1) { return -(cplx(1.0, c1) * I).imag(); }

enum class BuiltinMeasure { lebesgue, point_mass_mix, example2_weight, example3_weight };

struct MeasureSpec {
    BuiltinMeasure id = BuiltinMeasure::lebesgue;
    double delta = 0.0;  // point_mass_mix: mass at z = i
    double lambda = 0.0; // example3_weight
    double eta = 0.0;    // example3_weight
};

/// Closed forms for the built-in measures. J is absent when the integral
/// does not exist (Lebesgue-type behaviour at z = 1).
inline MeasureIntegrals pv_integral(const MeasureSpec& spec,
                                    std::optional<double> c1 = std::nullopt) {
    MeasureIntegrals out;
    switch (spec.id) {
        case BuiltinMeasure::lebesgue:
            out.I = cplx(0.5);
            break;
        case BuiltinMeasure::point_mass_mix:
            if (spec.delta < 0.0 || spec.delta >= 1.0)
                throw std::invalid_argument("pv_integral: delta must be in [0,1)");
            out.I = cplx(0.5, -0.5 * spec.delta);
            break;
        case BuiltinMeasure::example2_weight:
            out.I = cplx(0.5);
            out.J = 0.5;
            break;
        case BuiltinMeasure::example3_weight: {
            if (!(spec.lambda > -1.0))
                throw std::invalid_argument("pv_integral: lambda must be > -1");
            const cplx b(spec.lambda, spec.eta);
            out.I = (std::conj(b) + 1.0) / (b + std::conj(b) + 2.0);
            if (spec.lambda > -0.5) {
                const double l = spec.lambda, e = spec.eta;
                out.J = ((l + 1.0) * (l + 1.0) + e * e) / ((2.0 * l + 1.0) * (2.0 * l + 2.0));
            }
            break;
        }
    }
    if (c1) out.t = t_from_I(out.I, *c1);
    return out;
}

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1]
inline constexpr double kGL16X[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double kGL16W[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
cplx gl16_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx acc(0.0);
    for (int i = 0; i < 8; ++i) {
        acc += kGL16W[i] * (f(c + h * kGL16X[i]) + f(c - h * kGL16X[i]));
    }
    return acc * h;
}

/// Integrate f over [eps, 2pi - eps] on panels graded geometrically toward
/// both excision points; the kernel behaves like 1/theta there.
template <class F>
cplx graded_integral(const F& f, double eps) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> pts;
    for (double a = eps; a < std::numbers::pi; a *= 2.0) pts.push_back(a);
    pts.push_back(std::numbers::pi);
    cplx acc(0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        // split each graded panel in two for margin
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        acc += gl16_panel(f, pts[i], mid) + gl16_panel(f, mid, pts[i + 1]);
        const double ma = two_pi - pts[i + 1], mb = two_pi - pts[i];
        const double mmid = 0.5 * (ma + mb);
        acc += gl16_panel(f, ma, mmid) + gl16_panel(f, mmid, mb);
    }
    return acc;
}

} // namespace detail

inline constexpr double kPvSpreadTol = 1e-6;

/// Best-effort numeric principal value for a user-supplied smooth density
/// w(theta): symmetric epsilon-excision with Richardson extrapolation over
/// eps in {1e-2, 5e-3, 2.5e-3}. J is attempted the same way and flagged
/// absent when the extrapolation does not settle (non-integrable kernel).
inline MeasureIntegrals pv_integral_density(const std::function<double(double)>& w,
                                            std::optional<double> c1 = std::nullopt) {
    const auto kernelI = [&](double theta) -> cplx {
        const cplx z = std::polar(1.0, theta);
        return z / (z - 1.0) * w(theta);
    };
    const auto kernelJ = [&](double theta) -> cplx {
        const double s = std::sin(0.5 * theta);
        return cplx(w(theta) / (4.0 * s * s));
    };

    const double eps[3] = {1e-2, 5e-3, 2.5e-3};
    cplx Iv[3];
    cplx Jv[3];
    for (int i = 0; i < 3; ++i) {
        Iv[i] = detail::graded_integral(kernelI, eps[i]);
        Jv[i] = detail::graded_integral(kernelJ, eps[i]);
    }
    // the excision error of I is linear in eps for a smooth density
    const cplx A1 = 2.0 * Iv[1] - Iv[0];
    const cplx A2 = 2.0 * Iv[2] - Iv[1];
    if (std::abs(A2 - A1) > kPvSpreadTol)
        throw PvDivergenceError("pv_integral_density: extrapolation spread too large");

    MeasureIntegrals out;
    out.I = A2;
    // J converges at an order set by how fast the density vanishes at
    // theta = 0, so extrapolate order-agnostically (Aitken) and accept only
    // a contracting tail; a non-integrable kernel makes the differences
    // expand instead and J stays absent.
    const double d1 = Jv[1].real() - Jv[0].real();
    const double d2 = Jv[2].real() - Jv[1].real();
    if (std::abs(d2) < 0.8 * std::abs(d1) && std::abs(d2 - d1) > 0.0) {
        const double rho = d2 / d1;
        out.J = Jv[2].real() + d2 * rho / (1.0 - rho);
    }
    if (c1) out.t = t_from_I(out.I, *c1);
    return out;
}

/// I from a moment table declared to converge: on the circle
/// zeta/(zeta-1) = 1/2 - (i/2) cot(theta/2), and the cotangent pairs with
/// the moments as 2 sum_k Im(mu_hat_k); the series is summed with Cesaro
/// averaging so measures with point masses (oscillating tails) still
/// settle. J is never derivable from finitely many moments.
inline MeasureIntegrals pv_integral_moments(const std::map<int, cplx>& mu_hat,
                                            std::optional<double> c1 = std::nullopt) {
    int kmax = 0;
    for (const auto& [k, v] : mu_hat) kmax = std::max(kmax, k);
    if (kmax < 4) throw std::invalid_argument("pv_integral_moments: need moments through k >= 4");
    std::vector<double> cesaro;
    double s = 0.0, csum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        s += mu_hat.at(k).imag();
        csum += s;
        cesaro.push_back(csum / double(k));
    }
    const double tail = cesaro[std::size_t(kmax) - 1];
    const double half = cesaro[std::size_t(kmax / 2) - 1];
    if (std::abs(tail - half) > kPvSpreadTol)
        throw PvDivergenceError("pv_integral_moments: Cesaro means did not settle");
    MeasureIntegrals out;
    out.I = cplx(0.5, tail);
    if (c1) out.t = t_from_I(out.I, *c1);
    return out;
}

} // namespace popuc

#endif
