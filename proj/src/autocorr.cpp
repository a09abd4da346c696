#include "decaykit/autocorr.hpp"

#include <algorithm>
#include <cmath>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/parallel.hpp"
#include "decaykit/quadrature.hpp"
#include "decaykit/spline.hpp"

namespace decaykit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<double> product_breakpoints(const DensityOfStates& dos, double y)
{
    std::vector<double> pts{0.0};
    for (const Pole& p : dos.pole_set().poles) {
        for (double c : {p.sigma, p.sigma - y}) {
            for (double k : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0})
                pts.push_back(c + k * 0.5 * p.omega);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double v) { return v < 0.0; }),
              pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty() || pts.front() > 0.0) pts.insert(pts.begin(), 0.0);
    return pts;
}

double envelope_cutoff_y(const DensityOfStates& dos, double y)
{
    double Y = 0.0;
    for (const Pole& p : dos.pole_set().poles) Y = std::max(Y, p.sigma * (1.0 + 30.0 * p.x()));
    const double scale = std::abs(dos(dos.dominant_pole().sigma));
    if (dos.form_factor().kind() == FormFactor::Kind::Exponential) {
        while (std::abs(dos(Y) * dos(Y + y)) > 1e-16 * scale * scale && Y < 1e7) Y *= 1.5;
    } else {
        Y = 3e3 * Y; // algebraic decay of the product, ~E^{-(4-2nu)}
    }
    return Y;
}

} // namespace

double autocorrelation(const DensityOfStates& dos, double y, double abs_tol)
{
    if (y < 0.0) throw Error("autocorrelation needs y >= 0");
    auto f = [&](double x) { return cplx(2.0 * dos(x) * dos(x + y), 0.0); };
    std::vector<double> pts = product_breakpoints(dos, y);
    pts.push_back(envelope_cutoff_y(dos, y));
    quad::Result r = quad::integrate_segments(f, pts, abs_tol, 4000);
    if (r.error > 4.0 * abs_tol)
        throw QuadratureNonconvergence("autocorrelation error estimate "
                                       + std::to_string(r.error));
    return r.value.real();
}

double autocorrelation_lorentzian(const DensityOfStates& dos, double y)
{
    const Pole& d = dos.dominant_pole();
    const double R2 = std::norm(dos.residue(dos.dominant_index()));
    return 8.0 * kPi * d.omega * R2 / (y * y + d.omega * d.omega);
}

double autocorrelation_multipole(const DensityOfStates& dos, double y)
{
    // cosine transform of the exponential part alone:
    // R(y) = 8 pi sum_{s,s'} Re[ R_s R_{s'}^* / ((w_s+w_s')/2 + i(y + s_s - s_s')) ];
    // the diagonal gives the Lorentzians, each ordered pair carries its own
    // resonance at y = s_s' - s_s
    const PoleSet& ps = dos.pole_set();
    cplx sum = 0.0;
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        for (std::size_t sp = 0; sp < ps.poles.size(); ++sp) {
            const Pole& a = ps.poles[s];
            const Pole& b = ps.poles[sp];
            const cplx denom(0.5 * (a.omega + b.omega), y + a.sigma - b.sigma);
            sum += dos.residue(s) * std::conj(dos.residue(sp)) / denom;
        }
    }
    return 8.0 * kPi * sum.real();
}

AutocorrCurve sample_autocorrelation(const DensityOfStates& dos, double y_max, int points,
                                     double abs_tol)
{
    if (points < 8) throw InsufficientSampling("autocorrelation curve needs >= 8 points");
    AutocorrCurve ac;
    ac.y.resize(points);
    ac.R.resize(points);
    parallel_for(std::size_t(points), [&](std::size_t i) {
        const double y = y_max * double(i) / double(points - 1);
        ac.y[i] = y;
        ac.R[i] = autocorrelation(dos, y, abs_tol);
    });
    ac.tail_omega = dos.dominant_pole().omega;
    const double yl = ac.y.back();
    ac.tail_amplitude = ac.R.back() * (yl * yl + ac.tail_omega * ac.tail_omega);
    return ac;
}

double wk_forward(const AutocorrCurve& ac, double t)
{
    if (ac.y.size() < 8) throw InsufficientSampling("autocorrelation curve needs >= 8 points");
    const CubicSpline spline(ac.y, ac.R);
    const double y_max = ac.y.back();
    // sampled part
    auto f = [&](double y) { return cplx(spline(y) * std::cos(y * t), 0.0); };
    const double h = (t > 0.0) ? kPi / t : y_max;
    const double grid_h = ac.y[1] - ac.y[0];
    if (t > 0.0 && h < 2.0 * grid_h)
        throw InsufficientSampling("autocorrelation grid too coarse for this t");
    quad::Result r;
    {
        const int ncell = std::max<int>(32, int(std::ceil(y_max / std::min(h, y_max / 8.0))));
        std::vector<double> pts;
        for (int i = 0; i <= ncell; ++i) pts.push_back(y_max * double(i) / ncell);
        r = quad::integrate_segments(f, pts, 1e-9, 200);
    }
    // Lorentzian tail c/(y^2+w^2) cos(yt) out to negligibility
    auto tail_f = [&](double y) {
        return cplx(ac.tail_amplitude / (y * y + ac.tail_omega * ac.tail_omega)
                        * std::cos(y * t),
                    0.0);
    };
    quad::OscSpec spec;
    spec.omega = t;
    spec.abs_tol = 1e-9;
    spec.smooth_end = y_max;
    spec.max_cell = std::max(y_max / 16.0, 1e-3 * ac.tail_omega);
    spec.cutoff = std::max(1e4 * ac.tail_omega, 64.0 * y_max);
    auto shifted = [&](double u) { return tail_f(y_max + u); };
    quad::OscSpec tail_spec = spec;
    tail_spec.smooth_end = 0.0;
    tail_spec.breakpoints = {};
    quad::Result tail = quad::oscillatory_semi_infinite(shifted, tail_spec);
    return r.value.real() + tail.value.real();
}

SampledSurvival sample_survival(const DensityOfStates& dos, double t_max, int points,
                                Route route)
{
    if (points < 16) throw InsufficientSampling("survival curve needs >= 16 points");
    SampledSurvival sp;
    sp.t.resize(points);
    sp.P.resize(points);
    parallel_for(std::size_t(points), [&](std::size_t i) {
        const double t = t_max * double(i) / double(points - 1);
        sp.t[i] = t;
        cplx A;
        switch (route) {
            case Route::quadrature: A = amplitude_quadrature(dos, t); break;
            case Route::closed_form:
                A = (t == 0.0) ? cplx(1.0, 0.0) : amplitude_closed_exponential(dos, t);
                break;
            case Route::decomposition: A = amplitude_decomposed(dos, t).total; break;
        }
        sp.P[i] = std::norm(A);
    });
    const double b0 = dos.beta0();
    const double g = std::tgamma(dos.nu() + 1.0);
    sp.exponent = 2.0 * dos.nu() + 2.0;
    sp.tail_coefficient = b0 * b0 * g * g;
    return sp;
}

double wk_inverse(const SampledSurvival& sp, double y)
{
    if (sp.t.size() < 16) throw InsufficientSampling("survival curve needs >= 16 points");
    const double T = sp.t.back();
    if (sp.P.back() > 1e-6)
        throw InsufficientSampling("survival samples must reach P < 1e-6 before the tail");
    const CubicSpline spline(sp.t, sp.P);
    auto f = [&](double t) { return cplx(spline(t) * std::cos(y * t), 0.0); };
    const double grid_h = sp.t[1] - sp.t[0];
    if (y > 0.0 && kPi / y < 2.0 * grid_h)
        throw InsufficientSampling("survival grid too coarse for this y");
    // integrate knot-aligned so the spline's corners never straddle a cell
    quad::Result r;
    {
        double cell = grid_h;
        if (y > 0.0) cell = std::min(cell, kPi / y / 4.0);
        const int ncell = int(std::ceil(T / cell));
        std::vector<double> pts;
        pts.reserve(ncell + 1);
        for (int i = 0; i <= ncell; ++i) pts.push_back(T * double(i) / ncell);
        r = quad::integrate_segments(f, pts, 1e-8, 50);
    }
    // analytic tail: c Re[(-iy)^{mu-1} Gamma(1-mu, -iyT)] for c t^{-mu}
    const double mu = sp.exponent;
    double tail;
    if (y == 0.0) {
        tail = sp.tail_coefficient * std::pow(T, 1.0 - mu) / (mu - 1.0);
    } else {
        const cplx w(0.0, -y * T);
        const cplx val = special::complex_power(cplx(0.0, -y), mu - 1.0)
                         * special::upper_incomplete_gamma(1.0 - mu, w);
        tail = sp.tail_coefficient * val.real();
    }
    return 2.0 / kPi * (r.value.real() + tail);
}

double lifetime_fleming(const SampledSurvival& sp)
{
    if (sp.t.size() < 16) throw InsufficientSampling("survival curve needs >= 16 points");
    if (sp.P.back() > 1e-6)
        throw InsufficientSampling("survival samples must reach P < 1e-6 before the tail");
    const CubicSpline spline(sp.t, sp.P);
    auto f = [&](double t) { return cplx(spline(t), 0.0); };
    const double T = sp.t.back();
    const int ncell = int(sp.t.size());
    std::vector<double> pts;
    for (int i = 0; i <= ncell; ++i) pts.push_back(T * double(i) / ncell);
    const quad::Result r = quad::integrate_segments(f, pts, 1e-10, 50);
    const double mu = sp.exponent;
    return r.value.real() + sp.tail_coefficient * std::pow(T, 1.0 - mu) / (mu - 1.0);
}

DiscreteSpectrum discrete_spectrum(const std::vector<std::pair<double, double>>& levels,
                                   double t)
{
    double wsum = 0.0;
    for (const auto& [E, w] : levels) {
        if (w < 0.0) throw WeightsNotNormalized("negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw WeightsNotNormalized("weights sum to " + std::to_string(wsum));
    DiscreteSpectrum out;
    double diag = 0.0;
    for (const auto& [E, w] : levels) diag += w * w;
    out.autocorr.push_back({0.0, diag});
    out.P = diag;
    for (std::size_t n = 1; n < levels.size(); ++n) {
        for (std::size_t m = 0; m < n; ++m) {
            const double dE = levels[n].first - levels[m].first;
            const double w = 2.0 * levels[n].second * levels[m].second;
            out.autocorr.push_back({dE, w});
            out.P += w * std::cos(dE * t);
        }
    }
    return out;
}

} // namespace decaykit
