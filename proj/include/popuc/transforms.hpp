#ifndef POPUC_TRANSFORMS_HPP
#define POPUC_TRANSFORMS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "popuc/chain_sequence.hpp"
#include "popuc/complex_poly.hpp"
#include "popuc/errors.hpp"
#include "popuc/recurrence.hpp"

namespace popuc {

/// The n = 0 convention: every formula referencing alpha_{n-1} at n = 0
/// reads alpha_{-1} = -1, which forces mfrak_0 = 0.
inline constexpr cplx kAlphaMinusOne{-1.0, 0.0};

/// Verblunsky coefficients alpha_0, alpha_1, ...; each strictly inside the
/// unit disk. at_conv(-1) yields the alpha_{-1} = -1 convention.
class VerblunskySeq {
public:
    VerblunskySeq() = default;

    explicit VerblunskySeq(std::vector<cplx> a) : a_(std::move(a)) {
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!(std::abs(a_[i]) < 1.0))
                throw std::invalid_argument("VerblunskySeq: |alpha_" + std::to_string(i) +
                                            "| >= 1");
    }

    static VerblunskySeq zeros(std::size_t n) { return VerblunskySeq(std::vector<cplx>(n, cplx(0.0))); }

    std::size_t size() const noexcept { return a_.size(); }
    cplx operator[](std::size_t i) const { return a_.at(i); }
    const std::vector<cplx>& values() const noexcept { return a_; }

    cplx at_conv(long i) const {
        if (i == -1) return kAlphaMinusOne;
        return a_.at(std::size_t(i));
    }

    bool all_real(double tol = 0.0) const noexcept {
        for (const cplx& a : a_)
            if (std::abs(a.imag()) > tol) return false;
        return true;
    }

private:
    std::vector<cplx> a_;
};

inline constexpr double kSzegoConsistencyTol = 1e-11;

/// One Szego step: S_n = z S_{n-1} - conj(alpha) S_{n-1}^*. The equivalent
/// form S_n = (1-|alpha|^2) z S_{n-1} - conj(alpha) S_n^* is evaluated as a
/// consistency assertion on every call.
inline ComplexPoly szego_advance(const ComplexPoly& S, cplx alpha) {
    if (!(std::abs(alpha) < 1.0))
        throw std::invalid_argument("szego_advance: |alpha| must be < 1");
    const std::size_t deg = S.degree();
    const ComplexPoly next = S.times_z() - S.star(deg) * std::conj(alpha);
    const ComplexPoly alt =
        S.times_z() * cplx(1.0 - std::norm(alpha)) - next.star(deg + 1) * std::conj(alpha);
    const double scale = std::max(1.0, next.max_coeff_magnitude());
    if (poly_distance(next, alt) > kSzegoConsistencyTol * scale)
        throw ConsistencyError("szego_advance: the two recurrence forms disagree");
    return next;
}

/// Monic OPUC S_0..S_N from Verblunsky coefficients.
inline std::vector<ComplexPoly> szego_polynomials(const VerblunskySeq& alpha, std::size_t N) {
    if (alpha.size() < N) throw std::invalid_argument("szego_polynomials: need alpha_0..alpha_{N-1}");
    std::vector<ComplexPoly> S;
    S.reserve(N + 1);
    S.push_back(ComplexPoly::one());
    for (std::size_t n = 1; n <= N; ++n) S.push_back(szego_advance(S.back(), alpha[n - 1]));
    return S;
}

/// Unimodular companions: rho_n by the Moebius recursion seeded at rho_0,
/// and tau_{n+1} = -rho_n. Each step renormalizes to the unit circle; the
/// recursion preserves modulus analytically, renormalizing just stops drift
/// over long runs.
struct RhoTauSeq {
    std::vector<cplx> rho;      // rho_0 .. rho_N
    std::vector<cplx> tau;      // tau_1 .. tau_{N+1}, tau_at(k) = tau_k
    bool relation_ok = false;   // rho_n == -tau_{n+1} and tau recursion verified

    cplx tau_at(std::size_t k) const { return tau.at(k - 1); }
};

inline constexpr double kMoebiusDenomTol = 1e-14;

inline RhoTauSeq rho_tau_sequence(const VerblunskySeq& alpha, cplx rho0, std::size_t N) {
    if (std::abs(std::abs(rho0) - 1.0) > 1e-12)
        throw std::invalid_argument("rho_tau_sequence: |rho0| must be 1");
    if (std::abs(rho0 - cplx(1.0)) <= 1e-12)
        throw std::invalid_argument("rho_tau_sequence: rho0 = 1 is excluded");
    if (alpha.size() < N) throw std::invalid_argument("rho_tau_sequence: need alpha_0..alpha_{N-1}");

    RhoTauSeq out;
    out.rho.reserve(N + 1);
    out.rho.push_back(rho0 / std::abs(rho0));
    for (std::size_t n = 1; n <= N; ++n) {
        const cplx a = alpha[n - 1];
        const cplx denom = cplx(1.0) - out.rho.back() * a;
        if (std::abs(denom) < kMoebiusDenomTol)
            throw ConsistencyError("rho_tau_sequence: Moebius denominator vanished");
        cplx r = (out.rho.back() - std::conj(a)) / denom;
        r /= std::abs(r);
        out.rho.push_back(r);
    }
    out.tau.reserve(N + 1);
    for (const cplx& r : out.rho) out.tau.push_back(-r);

    // independent tau recursion as a cross-check
    out.relation_ok = true;
    for (std::size_t n = 1; n < out.tau.size(); ++n) {
        const cplx a = alpha[n - 1];
        const cplx expect = (out.tau[n - 1] + std::conj(a)) / (cplx(1.0) + out.tau[n - 1] * a);
        if (std::abs(expect - out.tau[n]) > 1e-12) {
            out.relation_ok = false;
            break;
        }
    }
    return out;
}

enum class Dg1Provenance { opuc_map, t_family, weight_inverse, symmetric };

/// Recurrence data (c_n, chain part d_{1,n}, minimal parameters mfrak_n)
/// produced by one of the coefficient maps.
struct Dg1Data {
    std::vector<double> c;      // c[i] = c_{i+1}
    std::vector<double> d_tail; // d_tail[i] = d_{1,i+1} = d_{i+2}
    std::optional<double> d1;
    std::vector<double> m;      // m[i] = mfrak_i, m[0] = 0
    Dg1Provenance provenance = Dg1Provenance::opuc_map;
};

/// OPUC -> recurrence data: c_1 = i(rho_0+1)/(rho_0-1),
/// c_{n+1} = -Im(rho_n alpha_{n-1}) / (1 + Re(rho_n alpha_{n-1})),
/// mfrak_n = (1 - |rho_n alpha_{n-1}|^2) / (2 (1 + Re(rho_n alpha_{n-1}))),
/// d_{1,n} = (1 - mfrak_{n-1}) mfrak_n. Consumes alpha_0..alpha_{N-1} and
/// emits c_1..c_{N+1}, mfrak_0..mfrak_N, d_{1,1}..d_{1,N}.
inline Dg1Data dg1_from_opuc(const VerblunskySeq& alpha, cplx rho0, std::size_t N) {
    const RhoTauSeq rt = rho_tau_sequence(alpha, rho0, N);

    Dg1Data out;
    out.provenance = Dg1Provenance::opuc_map;
    out.c.resize(N + 1);
    out.m.resize(N + 1);
    out.d_tail.resize(N);

    const cplx r0 = rt.rho[0];
    out.c[0] = (cplx(0.0, 1.0) * (r0 + 1.0) / (r0 - 1.0)).real();
    out.m[0] = 0.0; // rho_0 alpha_{-1} = -rho_0, unimodular
    for (std::size_t n = 1; n <= N; ++n) {
        const cplx w = rt.rho[n] * alpha[n - 1];
        const double den = 1.0 + w.real();
        if (!(den > 0.0))
            throw ConsistencyError("dg1_from_opuc: 1 + Re(rho alpha) not positive");
        out.c[n] = -w.imag() / den;
        out.m[n] = 0.5 * (1.0 - std::norm(w)) / den;
        out.d_tail[n - 1] = (1.0 - out.m[n - 1]) * out.m[n];
    }
    return out;
}

/// Assemble the recurrence pair for Dg1Data with a chosen d_1 (the tail is
/// the data's chain part). Level M may go up to c.size().
inline RecurrencePair dg1_to_recurrence(const Dg1Data& dg1, double d1, std::size_t M) {
    if (M > dg1.c.size())
        throw std::invalid_argument("dg1_to_recurrence: level exceeds available c data");
    if (M >= 2 && M - 1 > dg1.d_tail.size())
        throw std::invalid_argument("dg1_to_recurrence: level exceeds available d data");
    std::vector<double> d_full(M);
    d_full[0] = d1;
    for (std::size_t i = 1; i < M; ++i) d_full[i] = dg1.d_tail[i - 1];
    return generate_rq(std::span<const double>(dg1.c.data(), M), d_full, M);
}

inline constexpr double kDivisionResidualTol = 1e-10;

/// The inverse map of Thm-Main1 style: monic OPUC and Verblunsky
/// coefficients of the hat measure recovered from the recurrence pair.
struct OpucFromDg1 {
    VerblunskySeq alpha;            // alpha_hat_0 .. alpha_hat_{N-1}
    std::vector<ComplexPoly> s_hat; // S_hat_0 .. S_hat_N, monic
    std::vector<double> kappa_inv_sq; // kappa_hat_n^{-2}, n = 0..N-1
};

/// Recover the hat-measure OPUC from {R_n}:
///   S_hat_n = [R_{n+1} - 2(1-mfrak_n) R_n] / ((z-1) prod_{k<=n+1}(1+ic_k)),
///   alpha_hat_{n-1} = -(1/tau_n) (1-2 mfrak_n - i c_{n+1})/(1 - i c_{n+1}),
/// with mfrak_n read off the recurrence values at z = 1. The division by
/// (z-1) must be exact; the reflected representation of S_hat_n^* is
/// asserted against star(S_hat_n).
inline OpucFromDg1 opuc_from_dg1(const RecurrencePair& pair, std::size_t N) {
    if (N < 1 || pair.levels() < N + 1)
        throw std::invalid_argument("opuc_from_dg1: pair must be populated through N+1");

    OpucFromDg1 out;
    out.s_hat.reserve(N + 1);
    std::vector<cplx> ah;
    ah.reserve(N);

    cplx tau(1.0); // tau_n, running product of (1-ic_k)/(1+ic_k)
    double kappa = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        const double mf = pair.minimal_param(n);
        // S_hat_n
        const ComplexPoly num = pair.R(n + 1) - pair.R(n) * cplx(2.0 * (1.0 - mf));
        auto [quot, rem] = divmod_linear(num, cplx(1.0));
        const double scale = std::max(1.0, num.max_coeff_magnitude());
        if (std::abs(rem) > kDivisionResidualTol * scale)
            throw ConsistencyError("opuc_from_dg1: division by (z-1) left a residue");
        const ComplexPoly shat = quot * (cplx(1.0) / pair.leading(n + 1));
        // reflected representation must agree with star(S_hat_n)
        const ComplexPoly num2 = pair.R(n + 1) - pair.R(n).times_z() * cplx(2.0 * (1.0 - mf));
        auto [quot2, rem2] = divmod_linear(num2, cplx(1.0));
        if (std::abs(rem2) > kDivisionResidualTol * scale)
            throw ConsistencyError("opuc_from_dg1: reflected division left a residue");
        const ComplexPoly shat_star_direct =
            quot2 * (cplx(-1.0) / std::conj(pair.leading(n + 1)));
        if (poly_distance(shat_star_direct, shat.star(n)) > 1e-10 * scale)
            throw ConsistencyError("opuc_from_dg1: reflected OPUC form mismatch");
        out.s_hat.push_back(shat);

        if (n >= 1) {
            const cplx cn1(1.0, pair.c(n + 1)); // 1 + i c_{n+1}
            tau *= std::conj(cplx(1.0, pair.c(n))) / cplx(1.0, pair.c(n));
            const cplx a = -(cplx(1.0 - 2.0 * mf, -pair.c(n + 1)) / std::conj(cn1)) / tau;
            if (!(std::abs(a) < 1.0))
                throw ConsistencyError("opuc_from_dg1: |alpha_hat| >= 1");
            ah.push_back(a);
            kappa *= 4.0 * pair.d(n + 1) / (1.0 + pair.c(n + 1) * pair.c(n + 1));
            out.kappa_inv_sq.push_back((1.0 - mf) * kappa);
        } else {
            out.kappa_inv_sq.push_back(1.0 - mf); // kappa_hat_0^{-2} = 1 - mfrak_0 = 1
        }
    }
    out.alpha = VerblunskySeq(std::move(ah));
    return out;
}

/// OPUC of the tilde measure from a full chain {d_n} (including d_1):
///   S_tilde_n prod_{k<=n}(1+ic_k) = R_n - 2(1-m_n) R_{n-1},
///   alpha_tilde_{n-1} = (1/tau_n)(1-2m_n-ic_n)/(1+ic_n),
/// with m the minimal parameters of {d_n}; the measure carries mass M_0
/// (maximal parameter of {d_n}) at z = 1.
struct TildeResult {
    VerblunskySeq alpha;
    std::vector<ComplexPoly> s_tilde; // S_tilde_0 .. S_tilde_N
    double M0 = 0.0;
    bool M0_converged = false;
};

inline TildeResult opuc_tilde_from_dg2(const RecurrencePair& pair, std::size_t N) {
    if (N < 1 || pair.levels() < N)
        throw std::invalid_argument("opuc_tilde_from_dg2: pair must be populated through N");
    auto chk = is_positive_chain(pair.d_seq(), pair.levels());
    if (!chk.ok)
        throw ChainError("opuc_tilde_from_dg2: {d_n} with d_1 is not a positive chain sequence",
                         chk.fail_index);
    const auto m = minimal_params(pair.d_seq(), N);

    TildeResult out;
    out.s_tilde.reserve(N + 1);
    out.s_tilde.push_back(ComplexPoly::one());
    std::vector<cplx> at;
    at.reserve(N);
    cplx tau(1.0);
    for (std::size_t n = 1; n <= N; ++n) {
        out.s_tilde.push_back((pair.R(n) - pair.R(n - 1) * cplx(2.0 * (1.0 - m[n]))) *
                              (cplx(1.0) / pair.leading(n)));
        const cplx cn(1.0, pair.c(n));
        tau *= std::conj(cn) / cn;
        const cplx a = (cplx(1.0 - 2.0 * m[n], -pair.c(n)) / cn) / tau;
        if (!(std::abs(a) < 1.0))
            throw ConsistencyError("opuc_tilde_from_dg2: |alpha_tilde| >= 1");
        at.push_back(a);
    }
    out.alpha = VerblunskySeq(std::move(at));

    auto mp = maximal_params(pair.d_seq(), 0);
    out.M0 = mp.M[0];
    out.M0_converged = mp.converged;
    return out;
}

/// The t-parametrized family: rho_0(t) = -(I+it)/(conj(I)-it) seeds the
/// OPUC -> DG1 map. c_1(t) is computed both from rho_0(t) and as
/// -2(t + Im I); the two must agree.
inline Dg1Data t_family(const VerblunskySeq& alpha, cplx I, double t, std::size_t N) {
    if (std::abs(I.real() - 0.5) > 1e-10)
        throw std::invalid_argument("t_family: Re(I) must be 1/2 for a probability measure");
    if (!std::isfinite(t)) throw std::invalid_argument("t_family: t must be finite");
    const cplx it(0.0, t);
    const cplx rho0 = -(I + it) / (std::conj(I) - it);
    Dg1Data out = dg1_from_opuc(alpha, rho0, N);
    const double c1_direct = -2.0 * (t + I.imag());
    if (std::abs(out.c[0] - c1_direct) > 1e-12 * std::max(1.0, std::abs(c1_direct)))
        throw ConsistencyError("t_family: the two c_1(t) routes disagree");
    out.c[0] = c1_direct;
    out.provenance = Dg1Provenance::t_family;
    return out;
}

inline constexpr double kSingularTransformTol = 1e-13;

/// Verblunsky coefficients of d mu_hat = (zeta-1)(1-zeta)/zeta d mu from
/// those of mu, through the DG2-side rho^(2) recursion seeded at 1.
/// Consumes alpha_0..alpha_N and emits alpha_hat_0..alpha_hat_{N-1}.
inline VerblunskySeq weight_transform_forward(const VerblunskySeq& alpha, std::size_t N) {
    if (alpha.size() < N + 1)
        throw std::invalid_argument("weight_transform_forward: need alpha_0..alpha_N");

    std::vector<cplx> rho2(N + 1);
    std::vector<double> c(N + 2);  // c[k] = c_{k}, 1-based use
    std::vector<double> g(N + 1);  // g[k] = g_{1,k}
    rho2[0] = cplx(1.0);
    for (std::size_t k = 0; k <= N; ++k) {
        const cplx w = rho2[k] * alpha[k];
        const cplx one_minus = cplx(1.0) - w;
        if (std::abs(one_minus) < kSingularTransformTol)
            throw SingularTransformError("weight_transform_forward: rho^(2) alpha reached 1");
        const double den = 1.0 - w.real();
        c[k + 1] = -w.imag() / den;
        g[k] = 0.5 * std::norm(one_minus) / den;
        if (k < N) {
            cplx r = (rho2[k] - std::conj(alpha[k])) / one_minus;
            r /= std::abs(r);
            rho2[k + 1] = r;
        }
    }

    std::vector<double> m(N + 1);
    m[0] = 0.0;
    std::vector<cplx> ah(N);
    for (std::size_t n = 1; n <= N; ++n) {
        m[n] = (1.0 - g[n - 1]) * g[n] / (1.0 - m[n - 1]);
        const cplx cn1(1.0, c[n + 1]);
        const cplx a = -(cplx(1.0 - 2.0 * m[n], -c[n + 1]) / std::conj(cn1)) / rho2[n];
        if (!(std::abs(a) < 1.0))
            throw ConsistencyError("weight_transform_forward: |alpha_hat| >= 1");
        ah[n - 1] = a;
    }
    return VerblunskySeq(std::move(ah));
}

/// Inverse weight modification: Verblunsky coefficients of the measure with
/// mass M0 at z = 1 and density proportional to zeta/((1-zeta)(zeta-1))
/// against mu. Requires the built chain {d_{1,n}} to be non-SPPCS (that is
/// what makes J exist and M_1 positive); refuses otherwise. Extra alpha
/// data beyond N sharpens the M_1 horizon, so pass as much as is available.
inline VerblunskySeq weight_transform_inverse(const VerblunskySeq& alpha, double M0, cplx I,
                                              std::size_t N) {
    if (M0 < 0.0 || M0 >= 1.0)
        throw std::invalid_argument("weight_transform_inverse: M0 must be in [0,1)");
    if (alpha.size() < N)
        throw std::invalid_argument("weight_transform_inverse: need alpha_0..alpha_{N-1}");
    const cplx rho0 = -I / std::conj(I);

    const std::size_t Na = alpha.size(); // use the whole tail for the chain analysis
    Dg1Data dg1 = dg1_from_opuc(alpha, rho0, Na);

    if (Na >= 10) {
        const auto wall = wall_sppcs_test(dg1.m, Na);
        if (wall.verdict == SppcsVerdict::sppcs)
            throw SppcsRefusal("weight_transform_inverse: chain is SPPCS, J does not exist");
    }
    auto mp = maximal_params(dg1.d_tail, 0);
    if (!mp.converged)
        throw InconclusiveError("weight_transform_inverse: M_1 estimate did not converge");
    const double M1 = mp.M[0];
    if (!(M1 > 0.0))
        throw SppcsRefusal("weight_transform_inverse: M_1 = 0, J does not exist");

    // minimal parameters of the full chain {d_1 = (1-M0) M_1, d_2, ...}
    std::vector<double> m(N + 1);
    m[1] = (1.0 - M0) * M1;
    for (std::size_t n = 1; n < N; ++n) {
        m[n + 1] = dg1.d_tail[n - 1] / (1.0 - m[n]);
        if (!(m[n + 1] > 0.0) || !(m[n + 1] < 1.0))
            throw ConsistencyError("weight_transform_inverse: parameter left (0,1)");
    }

    const RhoTauSeq rt = rho_tau_sequence(alpha, rho0, N);
    std::vector<cplx> at(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const cplx cn(1.0, dg1.c[n - 1]);
        const cplx a = -(cplx(1.0 - 2.0 * m[n], -dg1.c[n - 1]) / cn) / rt.rho[n - 1];
        if (!(std::abs(a) < 1.0))
            throw ConsistencyError("weight_transform_inverse: |alpha_tilde| >= 1");
        at[n - 1] = a;
    }
    return VerblunskySeq(std::move(at));
}

/// The symmetric-measure coefficient pairs with alpha_{-1} = -1:
///   d1_of(n) = (1-alpha_{n-2})(1+alpha_{n-1})/4,
///   d2_of(n) = (1+alpha_{n-1})(1-alpha_n)/4,  n >= 1.
struct DgSymmetricCoeffs {
    std::vector<double> d1_seq; // entry i is d^(1)_{i+2}
    std::vector<double> d2_seq; // entry i is d^(2)_{i+2}
};

inline DgSymmetricCoeffs dg_symmetric_coeffs(std::span<const double> alpha, std::size_t N) {
    if (alpha.size() < N + 1)
        throw std::invalid_argument("dg_symmetric_coeffs: need alpha_0..alpha_N");
    for (double a : alpha)
        if (!(std::abs(a) < 1.0))
            throw std::invalid_argument("dg_symmetric_coeffs: |alpha| must be < 1");

    DgSymmetricCoeffs out;
    out.d1_seq.resize(N);
    out.d2_seq.resize(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const double am2 = (n >= 2) ? alpha[n - 2] : -1.0;
        out.d1_seq[n - 1] = 0.25 * (1.0 - am2) * (1.0 + alpha[n - 1]);
        out.d2_seq[n - 1] = 0.25 * (1.0 + alpha[n - 1]) * (1.0 - alpha[n]);
    }
    auto c1 = is_positive_chain(out.d1_seq, N);
    auto c2 = is_positive_chain(out.d2_seq, N);
    if (!c1.ok) throw ChainError("dg_symmetric_coeffs: d^(1) not a chain", c1.fail_index);
    if (!c2.ok) throw ChainError("dg_symmetric_coeffs: d^(2) not a chain", c2.fail_index);
    return out;
}

enum class SeriesVerdict { diverges, converges, inconclusive };

/// Divergence test for sum_n prod_{k<=n} (1+alpha_{k-1})/(1-alpha_{k-1})
/// over real Verblunsky coefficients. For the symmetric case this is Wall's
/// series for the DG1 chain (mfrak_n = (1+alpha_{n-1})/2 under rho = -1),
/// so the same heuristic applies; J exists iff the series converges.
struct DivergenceReport {
    std::vector<double> partial_sums;
    SeriesVerdict verdict = SeriesVerdict::inconclusive;
    std::optional<bool> j_exists;
    double decay_exponent = 0.0;
};

inline DivergenceReport divergence_series(std::span<const double> alpha, std::size_t N) {
    if (alpha.size() < N) throw std::invalid_argument("divergence_series: need alpha_0..alpha_{N-1}");
    std::vector<double> m(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(std::abs(alpha[n - 1]) < 1.0))
            throw std::invalid_argument("divergence_series: |alpha| must be < 1");
        m[n] = 0.5 * (1.0 + alpha[n - 1]);
    }
    const WallReport wall = wall_sppcs_test(m, N);

    DivergenceReport rep;
    rep.partial_sums = wall.partial_sums;
    rep.decay_exponent = wall.decay_exponent;
    switch (wall.verdict) {
        case SppcsVerdict::sppcs:
            rep.verdict = SeriesVerdict::diverges;
            rep.j_exists = false;
            break;
        case SppcsVerdict::not_sppcs:
            rep.verdict = SeriesVerdict::converges;
            rep.j_exists = true;
            break;
        default:
            rep.verdict = SeriesVerdict::inconclusive;
            break;
    }
    return rep;
}

} // namespace popuc

#endif
