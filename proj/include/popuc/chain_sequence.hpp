#ifndef POPUC_CHAIN_SEQUENCE_HPP
#define POPUC_CHAIN_SEQUENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "popuc/errors.hpp"

namespace popuc {

inline constexpr double kChainTolDefault = 1e-10;
inline constexpr std::size_t kChainHorizonCap = std::size_t(1) << 20;

/// Minimal parameter sequence of {d_n}: m_0 = 0, m_n = d_n / (1 - m_{n-1}).
/// Input d[i] holds d_{i+1}; the result holds m_0..m_N. Throws ChainError at
/// the first index where m_n leaves (0,1), i.e. where d stops being a
/// positive chain sequence.
inline std::vector<double> minimal_params(std::span<const double> d, std::size_t N) {
    if (N < 1) throw std::invalid_argument("minimal_params: N must be >= 1");
    if (d.size() < N) throw std::invalid_argument("minimal_params: need d_1..d_N");
    std::vector<double> m(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(d[n - 1] > 0.0))
            throw ChainError("minimal_params: nonpositive d_n", n);
        m[n] = d[n - 1] / (1.0 - m[n - 1]);
        if (!(m[n] > 0.0) || !(m[n] < 1.0))
            throw ChainError("minimal_params: parameter left (0,1)", n);
    }
    return m;
}

struct ChainCheck {
    bool ok = false;
    std::size_t fail_index = 0; // 0 when ok
    double fail_value = 0.0;    // the offending m_n
};

/// True iff minimal_params succeeds through index N.
inline ChainCheck is_positive_chain(std::span<const double> d, std::size_t N) noexcept {
    ChainCheck r;
    if (N < 1 || d.size() < N) return r;
    double prev = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(d[n - 1] > 0.0)) {
            r.fail_index = n;
            r.fail_value = d[n - 1];
            return r;
        }
        const double m = d[n - 1] / (1.0 - prev);
        if (!(m > 0.0) || !(m < 1.0)) {
            r.fail_index = n;
            r.fail_value = m;
            return r;
        }
        prev = m;
    }
    r.ok = true;
    return r;
}

namespace detail {

/// One pass of Aitken's delta-squared; exact for sequences whose error is a
/// single geometric mode, which covers both the geometric and the C/H tails
/// of the backward chain recursion sampled at doubling horizons.
inline std::vector<double> aitken_pass(const std::vector<double>& s) {
    std::vector<double> t;
    if (s.size() < 3) return t;
    t.reserve(s.size() - 2);
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
        const double d1 = s[i + 1] - s[i];
        const double d2 = s[i + 2] - s[i + 1];
        const double den = d2 - d1;
        if (std::abs(den) < 1e-300 * (std::abs(d1) + std::abs(d2)) || den == 0.0)
            t.push_back(s[i + 2]);
        else
            t.push_back(s[i + 2] - d2 * d2 / den);
    }
    return t;
}

inline double aitken_limit(std::vector<double> s) {
    while (s.size() >= 3) {
        auto t = aitken_pass(s);
        if (t.empty()) break;
        s = std::move(t);
    }
    return s.back();
}

} // namespace detail

struct MaximalParams {
    std::vector<double> M; // M_0..M_N, extrapolated estimates
    bool converged = false;
    std::size_t horizon = 0; // largest horizon actually used
};

/// Maximal parameter estimates by backward recursion M_{k-1} = 1 - d_k / M_k
/// from the terminal value M_H = 1, with the horizon H doubled from ~4N up
/// to `horizon_cap`. The raw M_0^(H) values converge like C/H on chains at
/// the single-parameter boundary, so the doubling samples are accelerated
/// with iterated Aitken and convergence is judged on the accelerated values.
///
/// `d` is a generator: d(k) must return d_k for 1 <= k <= horizon_cap.
template <class DGen>
MaximalParams maximal_params_gen(DGen&& d, std::size_t N, double tol = kChainTolDefault,
                                 std::size_t horizon_cap = kChainHorizonCap) {
    if (horizon_cap < N + 1)
        throw std::invalid_argument("maximal_params: horizon cap below N+1");

    MaximalParams out;
    std::vector<std::vector<double>> history(N + 1); // per-index doubling samples
    std::vector<double> run(N + 1, 0.0);
    double prev_accel = std::numeric_limits<double>::quiet_NaN();
    bool any_run = false;

    // clean doublings only: a final partial step would break the geometric
    // error pattern the Aitken acceleration relies on
    std::size_t H = std::min(std::max<std::size_t>(N + 1, 16), horizon_cap);
    for (;;) {
        // one backward sweep at horizon H
        double Mk = 1.0;
        bool rejected = false;
        for (std::size_t k = H; k >= 1; --k) {
            const double next = 1.0 - d(k) / Mk;
            if (k <= N) run[k] = Mk; // store M_k before moving past it
            Mk = next;
            if (!(Mk > 0.0) && k > 1) { rejected = true; break; }
        }
        if (!rejected) {
            run[0] = Mk;
            if (!(Mk >= 0.0)) rejected = true;
        }
        if (!rejected) {
            any_run = true;
            for (std::size_t k = 0; k <= N; ++k) history[k].push_back(run[k]);
            const double accel = detail::aitken_limit(history[0]);
            if (!std::isnan(prev_accel) && std::abs(accel - prev_accel) < tol) {
                out.converged = true;
                out.horizon = H;
                break;
            }
            prev_accel = accel;
        }
        if (2 * H > horizon_cap) {
            out.horizon = H;
            break;
        }
        H *= 2;
    }

    if (!any_run)
        throw ChainError("maximal_params: backward recursion left (0,1] at every horizon", 0);

    out.M.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) out.M[k] = detail::aitken_limit(history[k]);
    // the limit of a decreasing-in-H positive sequence; clamp rounding spill
    for (double& v : out.M) v = std::clamp(v, 0.0, 1.0);
    return out;
}

/// Span convenience overload: the horizon cannot exceed the data, so the
/// converged flag reports honestly whether the doubling settled before the
/// data ran out.
inline MaximalParams maximal_params(std::span<const double> d, std::size_t N,
                                    double tol = kChainTolDefault) {
    if (d.size() < N + 1)
        throw std::invalid_argument("maximal_params: need data at least through d_{N+1}");
    const std::size_t cap = std::min(kChainHorizonCap, d.size());
    return maximal_params_gen([d](std::size_t k) { return d[k - 1]; }, N, tol, cap);
}

enum class SppcsVerdict { sppcs, not_sppcs, inconclusive };

inline const char* to_string(SppcsVerdict v) {
    switch (v) {
        case SppcsVerdict::sppcs: return "sppcs";
        case SppcsVerdict::not_sppcs: return "not_sppcs";
        default: return "inconclusive";
    }
}

struct WallReport {
    SppcsVerdict verdict = SppcsVerdict::inconclusive;
    std::vector<double> partial_sums; // S_1..S_N, saturated at 1e300
    double decay_exponent = 0.0;      // fitted p in term_n ~ n^{-p}
    bool saturated = false;
};

inline constexpr double kWallSumSaturation = 1e300;
// Wall's series sums n^{-p} terms; divergence holds for p <= 1. The gap
// (1.01, 1.10) is reported as inconclusive rather than guessed.
inline constexpr double kWallSlopeSppcs = 1.01;
inline constexpr double kWallSlopeNotSppcs = 1.10;

/// Wall's criterion: {d_n} determines its parameters uniquely (SPPCS) iff
/// sum_n prod_{k<=n} m_k/(1-m_k) diverges, m being the minimal parameters.
/// Finitely many terms cannot decide divergence, so the verdict is a
/// heuristic on the decay exponent of the terms, with partial sums returned
/// so callers can apply sharper analytic knowledge. Cumulative logs keep the
/// cubically growing terms of the t != 0 family finite.
inline WallReport wall_sppcs_test(std::span<const double> m, std::size_t N) {
    if (N < 10) throw std::invalid_argument("wall_sppcs_test: N must be >= 10");
    if (m.size() < N + 1) throw std::invalid_argument("wall_sppcs_test: need m_0..m_N");

    WallReport rep;
    rep.partial_sums.resize(N);
    std::vector<double> logterm(N + 1, 0.0); // log of prod_{k<=n} m_k/(1-m_k)
    double sum = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(m[n] > 0.0) || !(m[n] < 1.0))
            throw std::invalid_argument("wall_sppcs_test: m_n outside (0,1)");
        logterm[n] = logterm[n - 1] + std::log(m[n] / (1.0 - m[n]));
        if (!rep.saturated) {
            const double t = logterm[n] < 690.0 ? std::exp(logterm[n]) : kWallSumSaturation;
            sum += t;
            if (sum >= kWallSumSaturation) {
                sum = kWallSumSaturation;
                rep.saturated = true;
            }
        }
        rep.partial_sums[n - 1] = sum;
    }

    const std::size_t half = std::max<std::size_t>(N / 2, 1);
    rep.decay_exponent = -(logterm[N] - logterm[half]) /
                         (std::log(double(N)) - std::log(double(half)));
    if (rep.decay_exponent <= kWallSlopeSppcs)
        rep.verdict = SppcsVerdict::sppcs;
    else if (rep.decay_exponent >= kWallSlopeNotSppcs)
        rep.verdict = SppcsVerdict::not_sppcs;
    else
        rep.verdict = SppcsVerdict::inconclusive;
    return rep;
}

/// Bundled analysis of one positive chain sequence {d_n}.
struct ChainAnalysis {
    std::vector<double> d;
    std::vector<double> minimal;
    std::vector<double> maximal_estimate;
    bool maximal_converged = false;
    SppcsVerdict sppcs = SppcsVerdict::inconclusive;
    std::vector<double> wall_partial_sums;
};

inline ChainAnalysis analyze_chain(std::span<const double> d, std::size_t N) {
    ChainAnalysis a;
    a.d.assign(d.begin(), d.begin() + std::min<std::size_t>(d.size(), N));
    a.minimal = minimal_params(d, N);
    if (d.size() >= N + 1) {
        auto mp = maximal_params(d, N);
        a.maximal_estimate = std::move(mp.M);
        a.maximal_converged = mp.converged;
    }
    if (N >= 10) {
        auto w = wall_sppcs_test(a.minimal, N);
        a.sppcs = w.verdict;
        a.wall_partial_sums = std::move(w.partial_sums);
    }
    return a;
}

} // namespace popuc

#endif
