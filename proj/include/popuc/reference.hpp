#ifndef POPUC_REFERENCE_HPP
#define POPUC_REFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "popuc/complex_poly.hpp"
#include "popuc/special.hpp"

namespace popuc::reference {

/// Closed forms for the constant-tail system c_1 = c, c_{n+1} = 0,
/// d_2 = 1/2, d_{n+2} = 1/4 (d_1 free). Everything below is a direct
/// formula; nothing here touches the recurrence pipeline.
struct Example1 {
    double c = 0.0;
    double d1 = 0.25;

    std::vector<double> c_seq(std::size_t N) const {
        std::vector<double> v(N, 0.0);
        if (N >= 1) v[0] = c;
        return v;
    }
    std::vector<double> d_seq(std::size_t N) const {
        std::vector<double> v(N, 0.25);
        if (N >= 1) v[0] = d1;
        if (N >= 2) v[1] = 0.5;
        return v;
    }

    /// R_n = (1+ic) z^n + (1-ic)
    ComplexPoly R(std::size_t n) const {
        if (n == 0) return ComplexPoly::one();
        std::vector<cplx> a(n + 1, cplx(0.0));
        a[0] = cplx(1.0, -c);
        a[n] = cplx(1.0, c);
        return ComplexPoly(std::move(a));
    }

    /// Q_n = 2 d_1 (z^n - 1)/(z - 1) = 2 d_1 (1 + z + ... + z^{n-1})
    ComplexPoly Q(std::size_t n) const {
        if (n == 0) return ComplexPoly::zero();
        return ComplexPoly(std::vector<cplx>(n, cplx(2.0 * d1)));
    }

    /// A_hat_n = (1+ic) z^{n-1}
    ComplexPoly a_hat(std::size_t n) const {
        if (n < 1) throw std::invalid_argument("Example1::a_hat: n >= 1");
        return ComplexPoly::monomial(n - 1, cplx(1.0, c));
    }

    cplx nu(int n) const {
        if (n >= 1) return -2.0 * d1 / cplx(1.0, -c);
        return 2.0 * d1 / cplx(1.0, c); // nu_{-n+1}, n >= 1, incl. nu_0
    }

    cplx gamma(std::size_t n) const {
        if (n == 0) return 2.0 * d1 / cplx(1.0, c);
        return 4.0 * d1 / cplx(1.0, c);
    }

    double weight(std::size_t n) const { return 1.0 / double(n); }

    /// Zeros solve z^n = -(1-ic)/(1+ic) (note the sign: direct algebra on
    /// (1+ic) z^n + (1-ic) = 0).
    std::vector<double> zero_angles(std::size_t n) const {
        const cplx rhs = -(cplx(1.0, -c)) / cplx(1.0, c);
        double phi = std::arg(rhs);
        const double two_pi = 2.0 * std::numbers::pi;
        if (phi < 0.0) phi += two_pi;
        std::vector<double> th(n);
        for (std::size_t k = 0; k < n; ++k) {
            double t = (phi + two_pi * double(k)) / double(n);
            while (t >= two_pi) t -= two_pi;
            th[k] = t;
        }
        std::sort(th.begin(), th.end());
        return th;
    }

    /// t-family of the underlying Lebesgue measure: c_1(t) = -2t, zero
    /// tail, d_2(t) = 1/2, d_{n+2}(t) = 1/4.
    double c1_of_t(double t) const { return -2.0 * t; }
};

/// Closed forms for the measure with Verblunsky coefficients
/// alpha_{n-1} = -1/(n+1) (density sin^2(theta/2)/pi). The c_{n+1}(t)
/// denominator follows the Moebius recursion, 1 + n(n+1)^2(n+2) t^2.
struct Example2 {
    double t = 0.0;

    cplx alpha(std::size_t i) const { return cplx(-1.0 / double(i + 2)); } // alpha_i
    static constexpr double I_value = 0.5;
    static constexpr double J_value = 0.5;

    cplx rho(std::size_t n) const {
        const double u = double(n + 1) * double(n + 2) * t;
        return -cplx(1.0, u) / cplx(1.0, -u);
    }

    /// c_{n+1}(t), n >= 0 (so c_1(t) = -2t)
    double c(std::size_t np1) const {
        const double n = double(np1 - 1);
        return -2.0 * (n + 1.0) * t / (1.0 + n * (n + 1.0) * (n + 1.0) * (n + 2.0) * t * t);
    }

    double mfrak(std::size_t n) const {
        const double x = double(n);
        const double num = 1.0 + (x + 1.0) * (x + 1.0) * (x + 2.0) * (x + 2.0) * t * t;
        const double den = 1.0 + x * (x + 1.0) * (x + 1.0) * (x + 2.0) * t * t;
        return x / (2.0 * (x + 1.0)) * num / den;
    }

    /// n-th term of Wall's series: (2/(1+4t^2)) [1/((n+1)(n+2)) + (n+1)(n+2) t^2]
    double wall_term(std::size_t n) const {
        const double x = double(n);
        return 2.0 / (1.0 + 4.0 * t * t) *
               (1.0 / ((x + 1.0) * (x + 2.0)) + (x + 1.0) * (x + 2.0) * t * t);
    }

    /// density of the measure, sin^2(theta/2)/pi
    static double density(double theta) {
        const double s = std::sin(0.5 * theta);
        return s * s / std::numbers::pi;
    }
};

/// Closed forms for the hypergeometric family with b = lambda + i eta,
/// lambda > -1.
struct Example3 {
    double lambda = 0.5;
    double eta = 1.0;
    double d1 = 0.25;

    Example3(double lambda_, double eta_, double d1_ = 0.25)
        : lambda(lambda_), eta(eta_), d1(d1_) {
        if (!(lambda > -1.0)) throw std::invalid_argument("Example3: lambda must be > -1");
    }

    cplx b() const { return cplx(lambda, eta); }

    double c(std::size_t n) const { return eta / (lambda + double(n)); } // c_n, n >= 1

    /// d_{n+1} = n(2 lambda + n + 1) / (4 (lambda+n)(lambda+n+1)), n >= 1
    double d_next(std::size_t n) const {
        const double x = double(n);
        return 0.25 * x * (2.0 * lambda + x + 1.0) /
               ((lambda + x) * (lambda + x + 1.0));
    }

    std::vector<double> c_seq(std::size_t N) const {
        std::vector<double> v(N);
        for (std::size_t k = 1; k <= N; ++k) v[k - 1] = c(k);
        return v;
    }
    /// d_1, d_2, ..., d_N with the free d_1 in front
    std::vector<double> d_seq(std::size_t N) const {
        std::vector<double> v(N);
        if (N >= 1) v[0] = d1;
        for (std::size_t k = 2; k <= N; ++k) v[k - 1] = d_next(k - 1);
        return v;
    }

    double mfrak(std::size_t n) const { return double(n) / (2.0 * (lambda + double(n) + 1.0)); }

    /// Maximal parameters M_{1,n} of the tail chain; valid for lambda > -1/2.
    double M1(std::size_t n) const {
        if (!(lambda > -0.5)) throw std::domain_error("Example3::M1: needs lambda > -1/2");
        const double x = double(n);
        return 0.5 * (2.0 * lambda + x + 1.0) / (lambda + x + 1.0);
    }

    /// R_n(z) = ((2 lambda + 2)_n / (lambda+1)_n) 2F1(-n, b+1; b+conj(b)+2; 1-z)
    cplx R_eval(std::size_t n, cplx z) const {
        const cplx pref = pochhammer(cplx(2.0 * lambda + 2.0), long(n)) /
                          pochhammer(cplx(lambda + 1.0), long(n));
        return pref * hyp2f1_terminating(long(n), b() + 1.0, cplx(2.0 * lambda + 2.0), 1.0 - z);
    }

    /// S_hat_n(z) = ((b+conj(b)+3)_n / (b+2)_n) 2F1(-n, b+2; b+conj(b)+3; 1-z)
    cplx S_hat_eval(std::size_t n, cplx z) const {
        const cplx pref = pochhammer(cplx(2.0 * lambda + 3.0), long(n)) /
                          pochhammer(b() + 2.0, long(n));
        return pref * hyp2f1_terminating(long(n), b() + 2.0, cplx(2.0 * lambda + 3.0), 1.0 - z);
    }

    /// nu_n = d_1 ((b+conj(b)+2)/(b+1)) (-b-1)_n / (conj(b)+1)_n, any integer n
    cplx nu(int n) const {
        return d1 * cplx(2.0 * lambda + 2.0) / (b() + 1.0) * pochhammer(-b() - 1.0, n) /
               pochhammer(std::conj(b()) + 1.0, n);
    }

    /// mu_hat_n = (-b-1)_n / (conj(b)+2)_n, n >= 0; conjugate for n < 0
    cplx mu_hat(int n) const {
        if (n < 0) return std::conj(mu_hat(-n));
        return pochhammer(-b() - 1.0, n) / pochhammer(std::conj(b()) + 2.0, n);
    }

    /// alpha_hat_{n-1} = -(b+1)_n / (conj(b)+2)_n; argument is 0-based i = n-1
    cplx alpha_hat(std::size_t i) const {
        const long n = long(i) + 1;
        return -pochhammer(b() + 1.0, n) / pochhammer(std::conj(b()) + 2.0, n);
    }

    cplx I() const { return (std::conj(b()) + 1.0) / cplx(2.0 * lambda + 2.0); }

    std::optional<double> J() const {
        if (!(lambda > -0.5)) return std::nullopt;
        return ((lambda + 1.0) * (lambda + 1.0) + eta * eta) /
               ((2.0 * lambda + 1.0) * (2.0 * lambda + 2.0));
    }

    /// rho_n(0) = -(conj(b)+1)_{n+1} / (b+1)_{n+1}
    cplx rho_t0(std::size_t n) const {
        return -pochhammer(std::conj(b()) + 1.0, long(n) + 1) /
               pochhammer(b() + 1.0, long(n) + 1);
    }

    /// n-th term of Wall's series, (1)_n / (2 lambda + 3)_n;
    /// the sum converges iff lambda > -1/2
    double wall_term(std::size_t n) const {
        return (pochhammer(cplx(1.0), long(n)) / pochhammer(cplx(2.0 * lambda + 3.0), long(n)))
            .real();
    }
};

} // namespace popuc::reference

#endif
