#ifndef POPUC_RECURRENCE_HPP
#define POPUC_RECURRENCE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "popuc/chain_sequence.hpp"
#include "popuc/complex_poly.hpp"
#include "popuc/errors.hpp"
#include "popuc/special.hpp"

namespace popuc {

/// Gamma normalization constants: gamma_0 = 2 d_1 / (1 + i c_1) and
/// gamma_n = 4 d_{n+1} gamma_{n-1} / (1 + i c_{n+1}). Returns gamma_0..gamma_{N-1}.
inline std::vector<cplx> gamma_sequence(std::span<const double> c, std::span<const double> d,
                                        std::size_t N) {
    if (N < 1) throw std::invalid_argument("gamma_sequence: N must be >= 1");
    if (c.size() < N || d.size() < N)
        throw std::invalid_argument("gamma_sequence: need c_1..c_N and d_1..d_N");
    if (d[0] == 0.0) throw std::invalid_argument("gamma_sequence: d_1 must be nonzero");
    std::vector<cplx> g(N);
    g[0] = 2.0 * d[0] / cplx(1.0, c[0]);
    for (std::size_t n = 1; n < N; ++n) g[n] = 4.0 * d[n] * g[n - 1] / cplx(1.0, c[n]);
    return g;
}

/// The coupled sequences {R_n, Q_n} of the three term recurrence
///   P_{n+1} = [(1+ic_{n+1}) z + (1-ic_{n+1})] P_n - 4 d_{n+1} z P_{n-1}
/// with R_0 = 1, R_1 = (1+ic_1) z + (1-ic_1), Q_0 = 0, Q_1 = 2 d_1.
/// Polynomials are stored unnormalized (leading coefficient prod(1+ic_k)),
/// which keeps every identity below literal; magnitudes grow like
/// prod sqrt(1+c_k^2), fine in double precision for the n <= ~200 range.
class RecurrencePair {
public:
    /// c[i] = c_{i+1}, d[i] = d_{i+1} (so d[0] = d_1). Requires d_1 != 0 and
    /// the tail {d_2, d_3, ...} to be a positive chain sequence through N.
    static RecurrencePair generate(std::span<const double> c, std::span<const double> d,
                                   std::size_t N) {
        if (N < 1) throw std::invalid_argument("generate_rq: N must be >= 1");
        if (c.size() < N || d.size() < N)
            throw std::invalid_argument("generate_rq: need c_1..c_N and d_1..d_N");
        if (d[0] == 0.0) throw std::invalid_argument("generate_rq: d_1 must be nonzero");
        std::vector<double> mfrak{0.0}; // minimal parameters of the tail {d_{n+1}}
        if (N >= 2) {
            try {
                mfrak = minimal_params(d.subspan(1), N - 1);
            } catch (const ChainError& e) {
                throw ChainError("generate_rq: {d_{n+1}} is not a positive chain sequence",
                                 e.index() + 1);
            }
        }

        RecurrencePair p;
        p.c_.assign(c.begin(), c.begin() + N);
        p.d_.assign(d.begin(), d.begin() + N);
        p.r_.reserve(N + 1);
        p.q_.reserve(N + 1);
        p.r_.push_back(ComplexPoly::one());
        p.q_.push_back(ComplexPoly::zero());
        p.r_.push_back(ComplexPoly({cplx(1.0, -c[0]), cplx(1.0, c[0])}));
        p.q_.push_back(ComplexPoly::constant(cplx(2.0 * d[0])));
        for (std::size_t n = 1; n < N; ++n) {
            const cplx a(1.0, c[n]);  // 1 + i c_{n+1}
            const cplx b(1.0, -c[n]); // 1 - i c_{n+1}
            const double four_d = 4.0 * d[n];
            p.r_.push_back(p.r_[n].times_linear(a, b) - p.r_[n - 1].times_z() * cplx(four_d));
            p.q_.push_back(p.q_[n].times_linear(a, b) - p.q_[n - 1].times_z() * cplx(four_d));
        }
        p.gamma_ = gamma_sequence(c, d, N);
        p.leading_.resize(N + 1);
        p.leading_[0] = cplx(1.0);
        for (std::size_t n = 1; n <= N; ++n) p.leading_[n] = p.leading_[n - 1] * cplx(1.0, c[n - 1]);
        // R_n(1) through the exact identity R_{n+1}(1) = 2 (1 - mfrak_n) R_n(1):
        // the product form has no cancellation, unlike Horner at z = 1 when
        // the minimal parameters approach 1.
        p.mfrak_ = std::move(mfrak);
        p.r_at_one_.resize(N + 1);
        p.r_at_one_[0] = 1.0;
        for (std::size_t n = 1; n <= N; ++n)
            p.r_at_one_[n] = 2.0 * (1.0 - p.mfrak_[n - 1]) * p.r_at_one_[n - 1];
        return p;
    }

    std::size_t levels() const noexcept { return r_.size() - 1; }

    /// Paper-indexed accessors: c(k) is c_k, d(k) is d_k, both 1-based.
    double c(std::size_t k) const { return c_.at(k - 1); }
    double d(std::size_t k) const { return d_.at(k - 1); }
    std::span<const double> c_seq() const noexcept { return c_; }
    std::span<const double> d_seq() const noexcept { return d_; }

    const ComplexPoly& R(std::size_t n) const { return r_.at(n); }
    const ComplexPoly& Q(std::size_t n) const { return q_.at(n); }

    /// gamma_n, 0 <= n <= N-1
    cplx gamma(std::size_t n) const { return gamma_.at(n); }

    /// r_{n,n} = prod_{k<=n} (1 + i c_k)
    cplx leading(std::size_t n) const { return leading_.at(n); }

    double R_at_one(std::size_t n) const { return r_at_one_.at(n); }

    /// Minimal parameter of {d_{n+1}}: mfrak_n = 1 - R_{n+1}(1) / (2 R_n(1)),
    /// valid for 0 <= n <= N-1.
    double minimal_param(std::size_t n) const {
        if (n >= mfrak_.size()) throw std::out_of_range("minimal_param: index out of range");
        return mfrak_[n];
    }

private:
    std::vector<double> c_, d_;
    std::vector<ComplexPoly> r_, q_;
    std::vector<cplx> gamma_;
    std::vector<cplx> leading_;
    std::vector<double> r_at_one_;
    std::vector<double> mfrak_;
};

inline RecurrencePair generate_rq(std::span<const double> c, std::span<const double> d,
                                  std::size_t N) {
    return RecurrencePair::generate(c, d, N);
}

/// Wronskian-type determinant U_n = Q_n R_{n-1} - Q_{n-1} R_n, which must
/// collapse to the monomial 2^{2n-1} d_1...d_n z^{n-1}.
inline ComplexPoly determinant_un(const RecurrencePair& pair, std::size_t n) {
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("determinant_un: level out of range");
    return pair.Q(n) * pair.R(n - 1) - pair.Q(n - 1) * pair.R(n);
}

inline constexpr double kAHatResidualTol = 1e-11;

/// Auxiliary polynomials of the second recovered measure:
/// A_hat_n = (1+ic_1)/(2z) [ R_n + (1-ic_1)/(2 d_1) (z-1) Q_n ].
/// The division by z is a coefficient shift; the constant term of the
/// bracket vanishes identically, and a residue above tolerance signals
/// corrupted upstream coefficients.
inline ComplexPoly a_hat(const RecurrencePair& pair, std::size_t n) {
    if (n < 1 || n > pair.levels())
        throw std::invalid_argument("a_hat: level out of range");
    const cplx c1(0.0, pair.c(1));
    const cplx w = (cplx(1.0) - c1) / (2.0 * pair.d(1));
    const ComplexPoly bracket = pair.R(n) + pair.Q(n).times_linear(w, -w);
    const double scale = std::max(bracket.max_coeff_magnitude(), 1.0);
    if (std::abs(bracket.coeff(0)) > kAHatResidualTol * scale)
        throw ConsistencyError("a_hat: nonzero constant term before division by z");
    return bracket.shifted_down() * ((cplx(1.0) + c1) / 2.0);
}

} // namespace popuc

#endif
