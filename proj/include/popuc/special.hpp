#ifndef POPUC_SPECIAL_HPP
#define POPUC_SPECIAL_HPP

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>

#include "popuc/complex_poly.hpp"

namespace popuc {

namespace detail {

/// Double-double arithmetic (Dekker/Knuth error-free transforms). The
/// terminating hypergeometric sums below cancel catastrophically for
/// |x| near 2 and n around 30 -- terms reach (1+|x|)^n while the sum stays
/// O(1) -- so the accumulation is carried at ~1e-32 working precision.
struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    const dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul({q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul({q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return dd_add(q, {q3, 0.0});
}

/// complex double-double
struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    explicit cdd(cplx z) : re{z.real(), 0.0}, im{z.imag(), 0.0} {}
    cplx to_cplx() const { return {re.hi + re.lo, im.hi + im.lo}; }
};

inline cdd cdd_add(cdd a, cdd b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }
inline cdd cdd_sub(cdd a, cdd b) { return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)}; }
inline cdd cdd_mul(cdd a, cdd b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}
inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}
inline cdd cdd_scale(cdd a, double s) { return {dd_mul_d(a.re, s), dd_mul_d(a.im, s)}; }
inline cdd cdd_div(cdd a, cdd b) {
    const dd nrm = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
    const cdd num = cdd_mul(a, {b.re, dd_neg(b.im)});
    return {dd_div(num.re, nrm), dd_div(num.im, nrm)};
}

/// Horner evaluation with double-double accumulation; used where a value
/// near a zero of the polynomial must keep absolute accuracy.
inline cplx eval_dd(std::span<const cplx> coeffs, cplx z) {
    cdd acc;
    const cdd zz(z);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = cdd_add(cdd_mul(acc, zz), cdd(*it));
    return acc.to_cplx();
}

inline cplx eval_dd(const ComplexPoly& p, cplx z) { return eval_dd(std::span(p.coeffs()), z); }

} // namespace detail

/// Pochhammer symbol (a)_n for any integer n, with the convention
/// (a)_n = Gamma(a+n)/Gamma(a):
///   (a)_0 = 1,  (a)_n = a(a+1)...(a+n-1)  for n > 0,
///   (a)_{-m} = 1/((a-1)(a-2)...(a-m))     for m > 0.
inline cplx pochhammer(cplx a, long n) {
    cplx p(1.0);
    if (n >= 0) {
        for (long k = 0; k < n; ++k) p *= a + double(k);
        return p;
    }
    for (long k = 1; k <= -n; ++k) {
        const cplx f = a - double(k);
        if (f == cplx(0.0))
            throw std::domain_error("pochhammer: pole at negative shift");
        p /= f;
    }
    return p;
}

/// Terminating Gauss sum 2F1(-n, b; c; x) = sum_{k=0}^{n} (-n)_k (b)_k /
/// ((c)_k k!) x^k. Accumulated in double-double: the terms alternate and
/// cancel severely for x near 2, which is exactly the z near -1 regime of
/// the hypergeometric polynomial families.
inline cplx hyp2f1_terminating(long n, cplx b, cplx c, cplx x) {
    if (n < 0) throw std::invalid_argument("hyp2f1_terminating: n must be >= 0");
    using namespace detail;
    cdd sum;
    cdd term(cplx(1.0));
    const cdd xx(x);
    for (long k = 0;; ++k) {
        sum = cdd_add(sum, term);
        if (k == n) break;
        const cplx cfac = c + double(k);
        if (cfac == cplx(0.0))
            throw std::domain_error("hyp2f1_terminating: denominator pole in (c)_k");
        term = cdd_mul(term, cdd(cplx(double(-n + k))));
        term = cdd_mul(term, cdd(b + double(k)));
        term = cdd_div(term, cdd(cfac));
        term = cdd_div(term, cdd(cplx(double(k + 1))));
        term = cdd_mul(term, xx);
    }
    return sum.to_cplx();
}

} // namespace popuc

#endif
