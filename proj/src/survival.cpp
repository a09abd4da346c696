#include "decaykit/survival.hpp"

#include <algorithm>
#include <cmath>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/parallel.hpp"
#include "decaykit/quadrature.hpp"

namespace decaykit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};

cplx pow_c(cplx z, double p) { return special::complex_power(z, p); }

// e^{i nu pi sgn} gamma e^{-p z} Gamma(-nu, -p z) with the analytic sheet of
// the incomplete gamma tracked through Arg(-z) + Arg(p).
cplx closed_form_term(double nu, cplx gamma_s, cplx z, cplx p)
{
    const cplx sig = -z;
    const double theta = std::arg(sig) + std::arg(p);
    int m = 0;
    if (theta > kPi) m = 1;
    else if (theta <= -kPi) m = -1;
    const cplx phase = (z.imag() < 0.0) ? std::exp(cplx(0.0, nu * kPi))
                                        : std::exp(cplx(0.0, -nu * kPi));
    return phase * gamma_s * std::exp(-p * z)
           * special::upper_incomplete_gamma_sheet(-nu, p * sig, m);
}

std::vector<double> peak_breakpoints(const PoleSet& ps)
{
    std::vector<double> pts;
    for (const Pole& p : ps.poles) {
        for (double k : {30.0, 10.0, 3.0, 1.0}) pts.push_back(p.sigma * (1.0 - k * p.x()));
        for (double k : {0.0, 1.0, 3.0, 10.0, 30.0}) pts.push_back(p.sigma * (1.0 + k * p.x()));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double v) { return v <= 0.0; }), pts.end());
    return pts;
}

double envelope_cutoff(const DensityOfStates& dos, double floor_rel)
{
    const PoleSet& ps = dos.pole_set();
    double Y = 0.0;
    for (const Pole& p : ps.poles) Y = std::max(Y, p.sigma * (1.0 + 30.0 * p.x()));
    const double scale = std::abs(dos(dos.dominant_pole().sigma)) + 1e-30;
    while (std::abs(dos(Y)) > floor_rel * scale && Y < 1e7) Y *= 1.5;
    return Y;
}

} // namespace

double closed_norm(const DimensionlessResonance& res)
{
    const cplx z = res.z();
    const cplx term = std::exp(cplx(0.0, res.nu * kPi)) * cplx(0.0, -1.0)
                      * std::exp(-res.b_s * z)
                      * special::upper_incomplete_gamma(-res.nu, -res.b_s * z);
    return -std::tgamma(1.0 + res.nu) * term.real();
}

cplx amplitude_quadrature(const DensityOfStates& dos, double t, double abs_tol)
{
    if (t < 0.0) throw Error("amplitude_quadrature needs t >= 0");
    const bool exp_ff = dos.form_factor().kind() == FormFactor::Kind::Exponential;
    auto f = [&](double E) { return dos(E) * std::exp(cplx(0.0, -E * t)); };

    quad::OscSpec spec;
    spec.omega = -t;
    spec.abs_tol = abs_tol;
    spec.breakpoints = peak_breakpoints(dos.pole_set());
    spec.smooth_end = spec.breakpoints.back();
    const double b = exp_ff ? dos.form_factor().b() : 0.0;
    spec.max_cell = exp_ff ? 0.5 / b : 0.5 * dos.dominant_pole().sigma;
    if (t == 0.0) {
        if (!exp_ff) return 1.0; // normalization integral, already dual-checked at build
        spec.cutoff = envelope_cutoff(dos, 1e-15);
    }
    quad::Result r = quad::oscillatory_semi_infinite(f, spec);
    if (r.error > abs_tol * 4.0)
        throw QuadratureNonconvergence("amplitude quadrature error estimate "
                                       + std::to_string(r.error));
    return r.value;
}

cplx amplitude_closed_exponential(const DensityOfStates& dos, double t)
{
    if (dos.form_factor().kind() != FormFactor::Kind::Exponential)
        throw Error("closed-form amplitude needs the exponential form factor");
    const double b = dos.form_factor().b();
    const cplx p(b, t);
    cplx num = 0.0, den = 0.0;
    const PoleSet& ps = dos.pole_set();
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        const cplx z = ps.poles[s].z();
        const cplx g = dos.gammas()[s];
        num += closed_form_term(dos.nu(), g, z, p) + closed_form_term(dos.nu(), std::conj(g), std::conj(z), p);
        den += closed_form_term(dos.nu(), g, z, cplx(b, 0.0))
               + closed_form_term(dos.nu(), std::conj(g), std::conj(z), cplx(b, 0.0));
    }
    return num / den;
}

cplx amplitude_closed_exponential(const DimensionlessResonance& res, double n)
{
    if (n < 0.0) throw Error("closed-form amplitude needs n >= 0");
    if (n == 0.0) return 1.0; // numerator equals denominator
    const double tau = res.tau_from_n(n);
    const cplx z = res.z();
    const cplx p(res.b_s, tau / (2.0 * res.x_d)); // p z_s = (b_s + i tau/2x) xi_s
    const cplx g(0.0, -1.0);
    const cplx num = closed_form_term(res.nu, g, z, p)
                     + closed_form_term(res.nu, std::conj(g), std::conj(z), p);
    const cplx den = closed_form_term(res.nu, g, z, cplx(res.b_s, 0.0))
                     + closed_form_term(res.nu, std::conj(g), std::conj(z), cplx(res.b_s, 0.0));
    return num / den;
}

cplx amplitude_exponential_part(const DensityOfStates& dos, double t)
{
    cplx sum = 0.0;
    const PoleSet& ps = dos.pole_set();
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        const cplx z = ps.poles[s].z();
        sum += std::exp(-kI * z * t) * dos.residue(s);
    }
    return -2.0 * kPi * kI * sum;
}

cplx amplitude_nonexponential_part(const DensityOfStates& dos, double t, double abs_tol)
{
    if (t < 0.0) throw Error("amplitude_nonexponential_part needs t >= 0");
    const bool exp_ff = dos.form_factor().kind() == FormFactor::Kind::Exponential;
    auto f = [&](double y) { return -kI * dos.eval_complex(cplx(0.0, -y)) * std::exp(-t * y); };

    double scale = 0.0;
    for (const Pole& p : dos.pole_set().poles) scale = std::max(scale, std::abs(p.z()));

    quad::OscSpec spec;
    spec.abs_tol = abs_tol;
    // y^nu kink at the origin: geometric refinement helps the adaptive cells
    spec.breakpoints = {1e-6 * scale, 1e-4 * scale, 1e-2 * scale, 0.1 * scale, scale, 3.0 * scale};
    spec.smooth_end = 3.0 * scale;

    if (exp_ff) {
        const double b = dos.form_factor().b();
        spec.omega = b; // g(-iy) = e^{iby}
        spec.max_cell = (t > 0.0) ? std::min(kPi / b, 3.0 / t) : kPi / b;
        quad::Result r = quad::oscillatory_semi_infinite(f, spec);
        if (r.error > abs_tol * 4.0)
            throw QuadratureNonconvergence("A_ne quadrature error estimate "
                                           + std::to_string(r.error));
        return r.value;
    }

    // constant form factor: finite part plus an algebraic/incomplete-gamma tail
    const double Y = std::max(30.0 * scale, (t > 0.0) ? 45.0 / t : 30.0 * scale);
    std::vector<double> pts{0.0};
    for (double p : spec.breakpoints)
        if (p < Y && p > pts.back()) pts.push_back(p);
    for (double q = pts.back() * 2.0; q < Y; q *= 2.0) pts.push_back(q);
    pts.push_back(Y);
    quad::Result r = quad::integrate_segments(f, pts, abs_tol * 0.5, 4000);
    // rho(-iy) ~ (1/2)(-iy)^nu sum_k C_k (iy)^{-k-1}, C_k = sum_{+-s} gamma z^{k-nu}
    cplx tail = 0.0;
    const double nu = dos.nu();
    for (int k = 0; k <= 3; ++k) {
        cplx C = 0.0;
        for (std::size_t s = 0; s < dos.pole_set().poles.size(); ++s) {
            const cplx z = dos.pole_set().poles[s].z();
            C += dos.gammas()[s] * pow_c(z, double(k) - nu);
            C += std::conj(dos.gammas()[s]) * pow_c(std::conj(z), double(k) - nu);
        }
        C /= dos.norm();
        if (k == 0 && t == 0.0 && std::abs(C) > 1e-9)
            throw QuadratureNonconvergence("A_ne diverges at t = 0 for this pole set");
        // -i * (1/2) e^{-i(nu+k+1)pi/2} C_k  *  int_Y^inf y^{nu-k-1} e^{-ty} dy
        cplx moment;
        if (t > 0.0) {
            moment = std::pow(t, double(k) - nu)
                     * special::upper_incomplete_gamma(nu - double(k), cplx(t * Y, 0.0));
        } else {
            if (k == 0) continue; // C_0 vanishes (checked above)
            moment = std::pow(Y, nu - double(k)) / (double(k) - nu);
        }
        tail += -kI * 0.5 * std::exp(cplx(0.0, -(nu + double(k) + 1.0) * kPi / 2.0)) * C * moment;
    }
    return r.value + tail;
}

AmplitudeBreakdown amplitude_decomposed(const DensityOfStates& dos, double t, double abs_tol)
{
    AmplitudeBreakdown out;
    out.exponential = amplitude_exponential_part(dos, t);
    out.nonexponential = amplitude_nonexponential_part(dos, t, abs_tol);
    out.total = out.exponential + out.nonexponential;
    return out;
}

SurvivalCurve survival_probability(const DensityOfStates& dos, const std::vector<double>& t_grid,
                                   Route route)
{
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw Error("time grid must be strictly increasing");
    const DimensionlessResonance res = dos.dimensionless();
    const double omega_d = dos.dominant_pole().omega;

    SurvivalCurve curve;
    curve.route = route;
    const std::size_t npts = t_grid.size();
    curve.grid.resize(npts);
    curve.P.resize(npts);
    curve.P_e.resize(npts);
    curve.P_ne.resize(npts);
    curve.P_i.resize(npts);

    parallel_for(npts, [&](std::size_t i) {
        const double t = t_grid[i];
        const double tau = omega_d * t;
        curve.grid[i] = TimePoint{t, tau, res.n_from_tau(tau)};
        const AmplitudeBreakdown parts = amplitude_decomposed(dos, t);
        cplx A;
        switch (route) {
            case Route::quadrature: A = amplitude_quadrature(dos, t); break;
            case Route::closed_form: A = amplitude_closed_exponential(dos, t); break;
            case Route::decomposition: A = parts.total; break;
        }
        curve.P[i] = std::norm(A);
        curve.P_e[i] = std::norm(parts.exponential);
        curve.P_ne[i] = std::norm(parts.nonexponential);
        curve.P_i[i] = 2.0 * (std::conj(parts.exponential) * parts.nonexponential).real();
    });
    return curve;
}

double large_time_asymptote(const DensityOfStates& dos, double t)
{
    const double b0 = dos.beta0();
    const double g = std::tgamma(dos.nu() + 1.0);
    return b0 * b0 * g * g / std::pow(t, 2.0 * dos.nu() + 2.0);
}

cplx asymptotic_A_ne(const DimensionlessResonance& res, double n)
{
    if (!(n >= 1.0)) throw Error("asymptotic_A_ne is valid for n >= 1");
    const double N = closed_norm(res);
    const cplx gamma_norm = cplx(0.0, -1.0) / N;
    const cplx xi = res.xi();
    const double g0 = 1.0; // exponential form factor at E = 0
    const cplx prefactor = pow_c(-kI, res.nu + 1.0) * g0
                           * (gamma_norm / pow_c(xi, res.nu + 1.0)).real();
    return prefactor * std::tgamma(res.nu + 1.0) / std::pow(2.0 * kPi * n, res.nu + 1.0);
}

} // namespace decaykit
