#include "decaykit/moments.hpp"

#include <algorithm>
#include <cmath>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/quadrature.hpp"
#include "decaykit/survival.hpp"

namespace decaykit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kMomentCap = 8; // incomplete-gamma chain loses precision beyond this

// Re sum_{s>0} e^{i nu pi} z_s^n gamma_s e^{-b z_s} Gamma(-nu-n, -b z_s),
// the building block of the exponential-form-factor moment formula.
template <typename Real>
Real moment_sum(const std::vector<std::complex<Real>>& zs,
                const std::vector<std::complex<Real>>& gammas, Real nu, Real b, int n)
{
    using C = std::complex<Real>;
    C sum = 0;
    const C phase = std::exp(C(0, nu * special::detail::pi_v<Real>));
    for (std::size_t s = 0; s < zs.size(); ++s) {
        const C z = zs[s];
        C zn = 1;
        for (int k = 0; k < n; ++k) zn *= z;
        sum += phase * zn * gammas[s] * std::exp(-b * z)
               * special::upper_incomplete_gamma(-nu - Real(n), -b * z);
    }
    return sum.real();
}

template <typename Real>
Real moment_closed_exponential(const std::vector<std::complex<Real>>& zs,
                               const std::vector<std::complex<Real>>& gammas, Real nu, Real b,
                               int n)
{
    const Real s0 = moment_sum(zs, gammas, nu, b, 0);
    const Real sn = moment_sum(zs, gammas, nu, b, n);
    const Real ratio = std::tgamma(Real(1) + nu + Real(n)) / std::tgamma(Real(1) + nu);
    return ((n % 2 == 0) ? ratio : -ratio) * sn / s0;
}

double moment_closed_constant(const DensityOfStates& dos, int n)
{
    // <H^m> = (pi/sin(pi nu)) Re sum gamma_s z_s^m e^{i pi nu} / N
    cplx sum = 0.0;
    const cplx phase = std::exp(cplx(0.0, kPi * dos.nu()));
    for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s) {
        const cplx z = dos.pole_set().poles[s].z();
        sum += dos.gammas()[s] * std::pow(z, n) * phase;
    }
    return kPi / std::sin(kPi * dos.nu()) * sum.real() / dos.norm();
}

// coefficients C_j = sum_{+-s} gamma_s z_s^{j - nu} of the large-E expansion
double tail_coefficient(const DensityOfStates& dos, int j)
{
    cplx c = 0.0;
    for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s) {
        const cplx z = dos.pole_set().poles[s].z();
        c += dos.gammas()[s] * special::complex_power(z, double(j) - dos.nu());
        c += std::conj(dos.gammas()[s])
             * special::complex_power(std::conj(z), double(j) - dos.nu());
    }
    return c.real() / dos.norm();
}

} // namespace

double moment(const DensityOfStates& dos, int n)
{
    if (n < 0) throw Error("moment order must be non-negative");
    if (n == 0) return 1.0;
    if (n > kMomentCap)
        throw MomentDivergent("moment order above the precision cap; use moment_quadrature");
    if (dos.form_factor().kind() == FormFactor::Kind::Exponential) {
        std::vector<cplx> zs, gs;
        for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s) {
            zs.push_back(dos.pole_set().poles[s].z());
            gs.push_back(dos.gammas()[s]);
        }
        return moment_closed_exponential<double>(zs, gs, dos.nu(), dos.form_factor().b(), n);
    }
    // constant form factor: finiteness needs the p = 0..n conditions
    for (int p = 0; p <= n; ++p) {
        double scale = 0.0;
        for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s)
            scale += std::abs(dos.gammas()[s]
                              * special::complex_power(dos.pole_set().poles[s].z(),
                                                       double(p) - dos.nu()));
        scale /= dos.norm();
        if (std::abs(tail_coefficient(dos, p)) > 1e-9 * scale)
            throw MomentDivergent("constant-form-factor moment diverges: condition p="
                                  + std::to_string(p) + " violated");
    }
    return moment_closed_constant(dos, n);
}

double moment_quadrature(const DensityOfStates& dos, int n)
{
    auto f = [&](double E) { return quad::cplx(std::pow(E, n) * dos(E), 0.0); };
    std::vector<double> pts{0.0};
    for (const Pole& p : dos.pole_set().poles) {
        for (double k : {30.0, 10.0, 3.0, 1.0, 0.0}) {
            const double lo = p.sigma * (1.0 - k * p.x());
            if (lo > pts.back()) pts.push_back(lo);
        }
        for (double k : {1.0, 3.0, 10.0, 30.0}) pts.push_back(p.sigma * (1.0 + k * p.x()));
    }
    std::sort(pts.begin(), pts.end());

    if (dos.form_factor().kind() == FormFactor::Kind::Exponential) {
        const double b = dos.form_factor().b();
        double Y = std::max(pts.back(), (50.0 + 5.0 * double(n)) / b);
        pts.push_back(Y);
        quad::Result r = quad::integrate_segments(f, pts, 1e-11, 6000);
        return r.value.real();
    }

    // constant form factor: algebraic tail, convergent only when the
    // expansion coefficients below E^{-1} vanish
    for (int p = 0; p <= n; ++p) {
        double scale = 1.0 + std::abs(tail_coefficient(dos, 0));
        if (std::abs(tail_coefficient(dos, p)) > 1e-9 * scale)
            throw MomentDivergent("moment tail fails convergence test (E^{" +
                                  std::to_string(n - p - 1) + "+nu} term)");
    }
    const double Y = 2e4 * pts.back();
    for (double q = pts.back() * 2.0; q < Y; q *= 4.0) pts.push_back(q);
    pts.push_back(Y);
    quad::Result r = quad::integrate_segments(f, pts, 1e-11, 6000);
    double tail = 0.0;
    for (int j = n + 1; j <= n + 3; ++j)
        tail += 0.5 * tail_coefficient(dos, j) * std::pow(Y, n + dos.nu() - j)
                / (double(j) - double(n) - dos.nu());
    return r.value.real() - tail;
}

MomentTable moment_table(const DensityOfStates& dos, int max_order)
{
    MomentTable table;
    for (int n = 0; n <= max_order; ++n) table.values.push_back(moment(dos, n));
    if (max_order >= 2) table.variance = table.values[2] - table.values[1] * table.values[1];
    return table;
}

double variance(const DensityOfStates& dos)
{
    const double h1 = moment(dos, 1);
    return moment(dos, 2) - h1 * h1;
}

double variance_narrow(const DimensionlessResonance& res)
{
    using LC = std::complex<long double>;
    const std::vector<LC> zs{LC(1.0L, -(long double)res.x_d)};
    const std::vector<LC> gs{LC(0.0L, -1.0L)};
    const long double nu = res.nu, b = res.b_s;
    const long double h1 = moment_closed_exponential<long double>(zs, gs, nu, b, 1);
    const long double h2 = moment_closed_exponential<long double>(zs, gs, nu, b, 2);
    return double(h2 - h1 * h1);
}

std::vector<SignPoint> variance_sign_scan(double x_d, double nu,
                                          const std::vector<double>& b_grid)
{
    std::vector<SignPoint> out;
    for (double b : b_grid) {
        const double v = variance_narrow({x_d, nu, b});
        out.push_back({b, v > 0.0 ? 1 : (v < 0.0 ? -1 : 0)});
    }
    return out;
}

std::optional<SignInterval> negative_variance_interval(double x_d, double nu)
{
    auto var_at = [&](double log_b) { return variance_narrow({x_d, nu, std::exp(log_b)}); };
    const double lo = std::log(1e-14), hi = std::log(10.0);
    const int coarse = 400;
    std::vector<double> edges;
    double prev = var_at(lo);
    double prev_lb = lo;
    for (int i = 1; i <= coarse; ++i) {
        const double lb = lo + (hi - lo) * double(i) / coarse;
        const double v = var_at(lb);
        if ((prev < 0.0) != (v < 0.0)) {
            double a = prev_lb, b = lb;
            bool low_neg = prev < 0.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                if ((var_at(mid) < 0.0) == low_neg) a = mid;
                else b = mid;
            }
            edges.push_back(std::exp(0.5 * (a + b)));
        }
        prev = v;
        prev_lb = lb;
    }
    if (edges.size() < 2) return std::nullopt;
    return SignInterval{edges[0], edges[1]};
}

std::vector<double> taylor_p(const MomentTable& moments, int order)
{
    if (int(moments.values.size()) <= order)
        throw Error("taylor_p needs moments up to the requested order");
    std::vector<double> p(order + 1, 0.0);
    for (int n = 0; n <= order; ++n) {
        double binom = 1.0;
        double sum = 0.0;
        for (int m = 0; m <= n; ++m) {
            const double term = binom * moments.values[m] * moments.values[n - m];
            sum += (m % 2 == 0) ? term : -term;
            binom = binom * double(n - m) / double(m + 1);
        }
        p[n] = sum;
    }
    return p;
}

double small_time_P(double var, double t)
{
    if (!(var > 0.0))
        throw NegativeVariance("non-positive energy variance: unphysical form-factor choice");
    return 1.0 - var * t * t;
}

double small_time_validity(double var)
{
    if (!(var > 0.0))
        throw NegativeVariance("non-positive energy variance: unphysical form-factor choice");
    return 1.0 / std::sqrt(var);
}

std::vector<cplx> amplitude_exp_taylor(const DensityOfStates& dos, int order)
{
    std::vector<cplx> B(order + 1, 0.0);
    for (int n = 0; n <= order; ++n) {
        cplx sum = 0.0;
        for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s)
            sum += std::pow(dos.pole_set().poles[s].z(), n) * dos.residue(s);
        B[n] = -2.0 * kPi * cplx(0.0, 1.0) * sum;
    }
    return B;
}

} // namespace decaykit
