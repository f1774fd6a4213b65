#ifndef POPUC_COMPLEX_POLY_HPP
#define POPUC_COMPLEX_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "popuc/errors.hpp"

namespace popuc {

using cplx = std::complex<double>;

/// Dense complex polynomial with coefficients stored in ascending degree
/// order. Immutable value type: every operation returns a fresh polynomial.
/// The zero polynomial is represented by a single zero coefficient.
class ComplexPoly {
public:
    ComplexPoly() : coeffs_{cplx(0.0)} {}

    explicit ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(cplx(0.0));
        trim_exact_zeros();
    }

    ComplexPoly(std::initializer_list<cplx> coeffs) : ComplexPoly(std::vector<cplx>(coeffs)) {}

    static ComplexPoly zero() { return ComplexPoly(); }
    static ComplexPoly one() { return constant(cplx(1.0)); }

    static ComplexPoly constant(cplx value) { return ComplexPoly(std::vector<cplx>{value}); }

    /// coeff * z^k
    static ComplexPoly monomial(std::size_t k, cplx coeff = cplx(1.0)) {
        std::vector<cplx> c(k + 1, cplx(0.0));
        c[k] = coeff;
        return ComplexPoly(std::move(c));
    }

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }

    cplx coeff(std::size_t j) const noexcept {
        return j < coeffs_.size() ? coeffs_[j] : cplx(0.0);
    }

    bool is_zero() const noexcept {
        return coeffs_.size() == 1 && coeffs_[0] == cplx(0.0);
    }

    double max_coeff_magnitude() const noexcept {
        double m = 0.0;
        for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Horner evaluation; the reference semantics for every other module.
    cplx eval(cplx z) const noexcept {
        cplx acc(0.0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    cplx operator()(cplx z) const noexcept { return eval(z); }

    ComplexPoly derivative() const {
        if (coeffs_.size() == 1) return zero();
        std::vector<cplx> d(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = double(j) * coeffs_[j];
        return ComplexPoly(std::move(d));
    }

    /// Degree-n reversed conjugate: result coefficient j is conj(coeff(n-j)).
    /// For a degree-n self-inversive polynomial this is the identity.
    ComplexPoly star(std::size_t n) const {
        if (n < degree() && !is_zero())
            throw std::invalid_argument("star: n must be >= degree of the polynomial");
        std::vector<cplx> s(n + 1, cplx(0.0));
        for (std::size_t j = 0; j <= n; ++j) s[j] = std::conj(coeff(n - j));
        return ComplexPoly(std::move(s));
    }

    ComplexPoly operator+(const ComplexPoly& rhs) const {
        std::vector<cplx> s(std::max(coeffs_.size(), rhs.coeffs_.size()), cplx(0.0));
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = coeff(j) + rhs.coeff(j);
        return ComplexPoly(std::move(s));
    }

    ComplexPoly operator-(const ComplexPoly& rhs) const {
        std::vector<cplx> s(std::max(coeffs_.size(), rhs.coeffs_.size()), cplx(0.0));
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = coeff(j) - rhs.coeff(j);
        return ComplexPoly(std::move(s));
    }

    ComplexPoly operator*(cplx scalar) const {
        std::vector<cplx> s(coeffs_);
        for (cplx& c : s) c *= scalar;
        return ComplexPoly(std::move(s));
    }

    ComplexPoly operator*(const ComplexPoly& rhs) const {
        if (is_zero() || rhs.is_zero()) return zero();
        std::vector<cplx> s(coeffs_.size() + rhs.coeffs_.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
                s[i + j] += coeffs_[i] * rhs.coeffs_[j];
        return ComplexPoly(std::move(s));
    }

    /// z * p
    ComplexPoly times_z() const {
        if (is_zero()) return zero();
        std::vector<cplx> s(coeffs_.size() + 1, cplx(0.0));
        std::copy(coeffs_.begin(), coeffs_.end(), s.begin() + 1);
        return ComplexPoly(std::move(s));
    }

    /// (a z + b) * p; the step kernel of the three term recurrences.
    ComplexPoly times_linear(cplx a, cplx b) const {
        if (is_zero()) return zero();
        std::vector<cplx> s(coeffs_.size() + 1, cplx(0.0));
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            s[j] += b * coeffs_[j];
            s[j + 1] += a * coeffs_[j];
        }
        return ComplexPoly(std::move(s));
    }

    /// p / z as a coefficient shift. The caller is responsible for checking
    /// that the constant term is (numerically) zero; it is dropped here.
    ComplexPoly shifted_down() const {
        if (coeffs_.size() == 1) return zero();
        return ComplexPoly(std::vector<cplx>(coeffs_.begin() + 1, coeffs_.end()));
    }

private:
    void trim_exact_zeros() {
        while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
    }

    std::vector<cplx> coeffs_;
};

/// Synthetic division of p by (z - root). Returns {quotient, remainder};
/// remainder equals p(root).
inline std::pair<ComplexPoly, cplx> divmod_linear(const ComplexPoly& p, cplx root) {
    const auto& a = p.coeffs();
    if (a.size() == 1) return {ComplexPoly::zero(), a[0]};
    const std::size_t m = a.size() - 1;
    std::vector<cplx> q(m, cplx(0.0));
    q[m - 1] = a[m];
    for (std::size_t j = m - 1; j >= 1; --j) q[j - 1] = a[j] + root * q[j];
    const cplx rem = a[0] + root * q[0];
    return {ComplexPoly(std::move(q)), rem};
}

/// Coefficientwise distance scaled by the larger max-magnitude; used by
/// tests and internal consistency assertions.
inline double poly_distance(const ComplexPoly& a, const ComplexPoly& b) {
    const std::size_t n = std::max(a.degree(), b.degree());
    double d = 0.0;
    for (std::size_t j = 0; j <= n; ++j) d = std::max(d, std::abs(a.coeff(j) - b.coeff(j)));
    return d;
}

} // namespace popuc

#endif
