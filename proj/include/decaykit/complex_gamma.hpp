#pragma once

// Branch-aware complex elementary and special functions.
//
// upper_incomplete_gamma evaluates the principal branch of Gamma(a, z) for
// real order a and complex z off the negative real axis, by four regimes:
// Kummer-type series in a strip along the cut and in the small-|z| disk,
// the Legendre continued fraction elsewhere at moderate |z|, and the
// Poincare expansion at large |z|.  Near-integer a <= 0 merges the singular
// series term with Gamma(a) so their poles cancel analytically.
// upper_incomplete_gamma_sheet continues the result across the cut
// (DLMF 8.2.10), which the closed-form survival amplitude needs once
// Arg(-z_s) + Arg(b + it) crosses pi.

#include <cmath>
#include <complex>
#include <limits>

#include "decaykit/errors.hpp"

namespace decaykit::special {

template <typename Real>
using Cplx = std::complex<Real>;

using cplx = std::complex<double>;

namespace detail {

template <typename Real>
constexpr Real euler_gamma_v = Real(0.577215664901532860606512090082402431L);

template <typename Real>
constexpr Real pi_v = Real(3.141592653589793238462643383279502884L);

template <typename Real>
Cplx<Real> principal_pow(Cplx<Real> z, Real p)
{
    return std::exp(p * std::log(z));
}

// -log(sin(x)/x) for real x via the sinc Taylor series; |x| < 1 assumed.
template <typename Real>
Real neg_log_sinc(Real x)
{
    const Real t = x * x;
    Real sum = 0, term = 1;
    for (int k = 1; k < 16; ++k) {
        term *= -t / Real((2 * k) * (2 * k + 1));
        sum += term;
        if (std::abs(term) < Real(1e-21)) break;
    }
    return -std::log1p(sum);
}

// expm1 for complex arguments: series below |w| = 0.5, else exp - 1
template <typename Real>
Cplx<Real> expm1c(Cplx<Real> w)
{
    if (std::abs(w) > Real(0.5)) return std::exp(w) - Real(1);
    Cplx<Real> sum = 0, term = 1;
    for (int k = 1; k < 24; ++k) {
        term *= w / Real(k);
        sum += term;
        if (std::abs(term) <= std::numeric_limits<Real>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

template <typename Real>
Real digamma_int(int n) // psi(n), n >= 1
{
    Real s = -euler_gamma_v<Real>;
    for (int j = 1; j < n; ++j) s += Real(1) / Real(j);
    return s;
}

// lgamma(1+k-eps) - lgamma(1+k) by the polygamma Taylor series, |eps| <= 0.13
template <typename Real>
Real lgamma_shift(int k, Real eps)
{
    // zeta(2..18)
    static const Real zeta[17] = {
        Real(1.6449340668482264364724151666460252L), Real(1.2020569031595942853997381615114500L),
        Real(1.0823232337111381915160036965411679L), Real(1.0369277551433699263313654864570342L),
        Real(1.0173430619844491397145179297909205L), Real(1.0083492773819228268397975498497968L),
        Real(1.0040773561979443393786852385086525L), Real(1.0020083928260822144178527692324121L),
        Real(1.0009945751278180853371459589003190L), Real(1.0004941886041194645587022825264699L),
        Real(1.0002460865533080482986379980477397L), Real(1.0001227133475784891467518365263574L),
        Real(1.0000612481350587048292585451051353L), Real(1.0000305882363070204935517285106451L),
        Real(1.0000152822594086518717325714876367L), Real(1.0000076371976378997622736002935630L),
        Real(1.0000038172932649998398564616446219L)};
    // psi^{(r)}(1+k) = (-1)^{r+1} r! (zeta(r+1) - sum_{j<=k} j^{-(r+1)})
    Real psi[18];
    psi[0] = -euler_gamma_v<Real>;
    for (int j = 1; j <= k; ++j) psi[0] += Real(1) / Real(j);
    Real rfact = 1;
    for (int r = 1; r <= 17; ++r) {
        rfact *= Real(r);
        Real tail = zeta[r - 1];
        for (int j = 1; j <= k; ++j) tail -= std::pow(Real(j), Real(-(r + 1)));
        psi[r] = ((r % 2 == 1) ? rfact : -rfact) * tail;
    }
    // sum_{r>=1} psi^{(r-1)}(1+k) (-eps)^r / r!
    Real sum = 0, pw = 1, fact = 1;
    for (int r = 1; r <= 18; ++r) {
        pw *= -eps;
        fact *= Real(r);
        sum += psi[r - 1] * pw / fact;
    }
    return sum;
}

template <typename Real>
Real factorial(int n)
{
    Real f = 1;
    for (int j = 2; j <= n; ++j) f *= Real(j);
    return f;
}

// Legendre continued fraction, modified Lentz.  Good off the cut for
// moderate-to-large |z|; converges for any real a there.
template <typename Real>
Cplx<Real> igamma_cf(Real a, Cplx<Real> z)
{
    const Real tiny = std::numeric_limits<Real>::min() * Real(1e6);
    Cplx<Real> b = z + Real(1) - a;
    Cplx<Real> c = Real(1) / tiny;
    Cplx<Real> d = (std::abs(b) > Real(0)) ? Real(1) / b : Real(1) / tiny;
    Cplx<Real> h = d;
    for (int i = 1; i < 2000; ++i) {
        const Real an = -Real(i) * (Real(i) - a);
        b += Real(2);
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = Real(1) / d;
        const Cplx<Real> delta = d * c;
        h *= delta;
        if (std::abs(delta - Real(1)) < Real(4) * std::numeric_limits<Real>::epsilon())
            return std::exp(-z) * principal_pow(z, a) * h;
    }
    throw NonfiniteResult("incomplete gamma continued fraction failed to converge");
}

// Poincare expansion Gamma(a,z) ~ z^{a-1} e^{-z} sum_k (a-1)...(a-k)/z^k.
template <typename Real>
Cplx<Real> igamma_asymptotic(Real a, Cplx<Real> z)
{
    Cplx<Real> sum = 1, term = 1;
    for (int k = 1; k < 120; ++k) {
        const Cplx<Real> next = term * (a - Real(k)) / z;
        if (std::abs(next) >= std::abs(term)) break; // smallest term reached
        term = next;
        sum += term;
        if (std::abs(term) <= std::numeric_limits<Real>::epsilon() * std::abs(sum)) break;
    }
    return principal_pow(z, a - Real(1)) * std::exp(-z) * sum;
}

// S(a,z) = sum_n (-z)^n / (n! (a+n)), optionally skipping one index.
template <typename Real>
Cplx<Real> kummer_sum(Real a, Cplx<Real> z, int skip = -1)
{
    Cplx<Real> sum = 0, num = 1;
    const Real az = std::abs(z);
    for (int n = 0; n < 4000; ++n) {
        if (n > 0) num *= -z / Real(n);
        if (n == skip) continue;
        const Cplx<Real> t = num / (a + Real(n));
        sum += t;
        if (Real(n) > az && std::abs(t) <= std::numeric_limits<Real>::epsilon() * std::abs(sum))
            return sum;
    }
    throw NonfiniteResult("incomplete gamma series failed to converge");
}

// Series evaluation with the pole of Gamma(a) at a = -k cancelled against the
// n = k series term; valid for |a + k| < 0.3 including a = -k exactly.
template <typename Real>
Cplx<Real> igamma_series_merged(Real a, Cplx<Real> z)
{
    const int k = int(std::lround(-a));
    const Real eps = a + Real(k);
    const Cplx<Real> logz = std::log(z);
    const Real kfac = factorial<Real>(k);
    Cplx<Real> singular;
    if (eps == Real(0)) {
        singular = Real((k % 2 == 0) ? 1 : -1) * (digamma_int<Real>(k + 1) - logz) / kfac;
    } else {
        const Cplx<Real> expo = neg_log_sinc(detail::pi_v<Real> * eps)
                                - lgamma_shift(k, eps) - eps * logz;
        const Cplx<Real> B = std::exp(eps * logz) / kfac;
        singular = Real((k % 2 == 0) ? 1 : -1) / eps * B * expm1c(expo);
    }
    return singular - principal_pow(z, a) * kummer_sum(a, z, k);
}

template <typename Real>
Cplx<Real> igamma_series(Real a, Cplx<Real> z)
{
    if (std::abs(a - std::lround(a)) < Real(0.125) && std::lround(a) <= 0)
        return igamma_series_merged(a, z);
    Real ga;
    if (a > Real(0)) {
        ga = std::tgamma(a);
    } else {
        // reflection keeps tgamma away from its poles
        ga = detail::pi_v<Real> / (std::sin(detail::pi_v<Real> * a) * std::tgamma(Real(1) - a));
    }
    return ga - principal_pow(z, a) * kummer_sum(a, z);
}

} // namespace detail

// Principal branch z^p, Arg z in (-pi, pi].
template <typename Real>
Cplx<Real> complex_power(Cplx<Real> z, Real p)
{
    if (z == Cplx<Real>(0)) {
        if (p > Real(0)) return Cplx<Real>(0);
        throw ZeroBase("complex_power: zero base with non-positive exponent");
    }
    const Cplx<Real> r = detail::principal_pow(z, p);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NonfiniteResult("complex_power overflow");
    return r;
}

// Standard-branch log Gamma: real on the positive axis, analytic off the
// negative real axis.  Upward shift until Stirling applies; the identity
// logGamma(z) = logGamma(z+n) - sum log(z+k) holds with principal logs on
// the whole cut plane.
template <typename Real>
Cplx<Real> log_gamma(Cplx<Real> z)
{
    if (z.imag() == Real(0) && z.real() <= Real(0) && z.real() == std::floor(z.real()))
        throw PoleOfGamma("log_gamma at a non-positive integer");
    static const Real bern[10] = {
        Real(1.0L / 12),    Real(-1.0L / 360),    Real(1.0L / 1260), Real(-1.0L / 1680),
        Real(1.0L / 1188),  Real(-691.0L / 360360), Real(1.0L / 156), Real(-3617.0L / 122400),
        Real(43867.0L / 244188), Real(-174611.0L / 125400)};
    Cplx<Real> shift = 0;
    Cplx<Real> w = z;
    while (std::abs(w) < Real(12) || w.real() < Real(0.5)) {
        shift += std::log(w);
        w += Real(1);
    }
    Cplx<Real> s = (w - Real(0.5)) * std::log(w) - w
                   + Real(0.5) * std::log(Real(2) * detail::pi_v<Real>);
    Cplx<Real> zp = w;
    const Cplx<Real> w2 = w * w;
    for (const Real b : bern) {
        s += b / zp;
        zp *= w2;
    }
    return s - shift;
}

// Principal branch of the upper incomplete gamma function Gamma(a, z).
template <typename Real>
Cplx<Real> upper_incomplete_gamma(Real a, Cplx<Real> z)
{
    const Real az = std::abs(z);
    if (az == Real(0))
        throw BranchCutViolation("upper_incomplete_gamma at z = 0");
    if (z.imag() == Real(0) && z.real() < Real(0))
        throw BranchCutViolation("upper_incomplete_gamma on the negative real axis");
    Cplx<Real> r;
    const bool near_cut = z.real() < Real(0) && az + z.real() <= Real(4.2);
    // the series is the small-gamma route; once z sits to the right of the
    // order the continued fraction wins (and avoids the cancellation between
    // Gamma(a) and z^a S when Gamma(a, z) is exponentially small)
    const Real cf_floor = std::max(Real(1), Real(1) + a);
    if (az >= (near_cut ? Real(80) : Real(50)))
        r = detail::igamma_asymptotic(a, z);
    else if (!near_cut && (z.real() < Real(0) || az >= cf_floor))
        r = detail::igamma_cf(a, z);
    else
        r = detail::igamma_series(a, z);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NonfiniteResult("upper_incomplete_gamma overflow");
    return r;
}

// Gamma(a, z e^{2 pi i m}) for integer winding m (DLMF 8.2.10); integer
// a <= 0 carries a logarithmic branch point instead of an algebraic one.
template <typename Real>
Cplx<Real> upper_incomplete_gamma_sheet(Real a, Cplx<Real> z, int m)
{
    const Cplx<Real> g = upper_incomplete_gamma(a, z);
    if (m == 0) return g;
    if (a == std::floor(a)) {
        const int k = int(-a);
        if (k >= 0) {
            const Real jump = Real(2) * detail::pi_v<Real> * Real(m) / detail::factorial<Real>(k);
            return g - Cplx<Real>(0, (k % 2 == 0) ? jump : -jump);
        }
        return g; // positive integer order: single-valued
    }
    const Cplx<Real> ph = std::exp(Cplx<Real>(0, Real(2) * detail::pi_v<Real> * Real(m) * a));
    const Real ga = detail::pi_v<Real> / (std::sin(detail::pi_v<Real> * a) * std::tgamma(Real(1) - a));
    return ph * g + (Real(1) - ph) * (a > Real(0) ? std::tgamma(a) : ga);
}

} // namespace decaykit::special
