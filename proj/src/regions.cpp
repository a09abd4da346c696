#include "decaykit/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/moments.hpp"
#include "decaykit/quadrature.hpp"
#include "decaykit/survival.hpp"

namespace decaykit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};

double bisect(double lo, double hi, bool rising, const std::function<double(double)>& f)
{
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double v = f(mid);
        if ((v < 0.0) == rising) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> critical_time_intersection(double alpha, double R2)
{
    if (!(alpha > 0.0) || !(R2 > 0.0))
        throw Error("critical_time_intersection needs alpha > 0 and R2 > 0");
    auto f = [&](double tau) {
        const double u = tau / alpha;
        return (1.0 - u * u) * std::exp(tau) - R2;
    };
    const double tau_plus = std::sqrt(1.0 + alpha * alpha) - 1.0;
    const double f_plus = 2.0 * tau_plus * std::exp(tau_plus) / (alpha * alpha);

    std::vector<double> roots;
    const double rel = 1.0 + 1e-13;
    if (R2 > f_plus * rel) return roots; // above the maximum: no intersection
    if (std::abs(R2 - f_plus) <= 1e-13 * f_plus) {
        roots.push_back(tau_plus); // tangent case
        return roots;
    }
    if (R2 > 1.0) {
        // two roots, either side of the maximum
        roots.push_back(bisect(0.0, tau_plus, true, f));
        roots.push_back(bisect(tau_plus, alpha, false, f));
        return roots;
    }
    // R2 <= 1: single root on the descending branch
    roots.push_back(bisect(tau_plus, alpha, false, f));
    return roots;
}

double critical_time_first_oscillation(double x_d)
{
    if (!(x_d > 0.0)) throw Error("x_d must be positive");
    return 4.0 * kPi * x_d;
}

GhirardiTime ghirardi_critical_time(double var, double omega_d, double sigma_d)
{
    if (!(var > 0.0)) throw NegativeVariance("Ghirardi time needs a positive variance");
    const double tau_G = omega_d * omega_d / var;
    const double x_d = 0.5 * omega_d / sigma_d;
    return {tau_G, tau_G / (4.0 * kPi * x_d)};
}

TransitionConstant transition_constant(const DimensionlessResonance& res, cplx residue,
                                       double g0, cplx gamma)
{
    if (!(g0 > 0.0)) throw Error("transition_constant needs g(0) > 0");
    const cplx ratio = gamma / special::complex_power(res.xi(), res.nu + 1.0);
    const double denom = ratio.real();
    if (!std::isfinite(denom) || std::abs(denom) < 1e-14 * std::abs(ratio))
        throw DegenerateDenominator("Re(gamma/xi^{nu+1}) vanishes");
    const cplx C = std::pow(2.0 * kPi, res.nu + 2.0) * std::exp(kI * kPi * res.nu / 2.0)
                   * residue / (g0 * std::tgamma(res.nu + 1.0) * denom);
    return {C};
}

TransitionConstant transition_constant(const DimensionlessResonance& res, cplx residue,
                                       double g0)
{
    // narrow-mode gamma of the normalized density, independent of the residue
    const cplx gamma = cplx(0.0, -1.0) / closed_norm(res);
    return transition_constant(res, residue, g0, gamma);
}

TransitionConstant transition_constant(const DimensionlessResonance& res)
{
    const double N = closed_norm(res);
    const cplx residue = kI * std::exp(-res.b_s * res.z()) / (2.0 * N);
    return transition_constant(res, residue, 1.0);
}

double eta_ratio(double n, const TransitionConstant& C, double x_d, double nu)
{
    if (!(n > 0.0)) throw Error("eta_ratio needs n > 0");
    return std::abs(C.C) * std::pow(n, nu + 1.0) * std::exp(-2.0 * kPi * x_d * n);
}

double modulating_m(double n, const TransitionConstant& C, double x_d, double nu)
{
    const double eta = eta_ratio(n, C, x_d, nu);
    return 2.0 / (eta + 1.0 / eta);
}

double modulating_I(double n, const TransitionConstant& C, double x_d, double nu)
{
    if (!(n > 1.0)) throw Error("modulating_I is defined for n > 1");
    const double phase = 2.0 * kPi * n - std::arg(C.C);
    return 1.0 + modulating_m(n, C, x_d, nu) * std::cos(phase);
}

NclRoots n_cl_solve(const TransitionConstant& C, double x_d, double nu)
{
    // n^{2nu+2} e^{-4 pi x n} = |C|^{-2}  <=>  g(n) = (nu+1) ln n - 2 pi x n + ln|C| = 0
    const double logC = std::log(std::abs(C.C));
    auto g = [&](double n) { return (nu + 1.0) * std::log(n) - 2.0 * kPi * x_d * n + logC; };
    const double n_star = (nu + 1.0) / (2.0 * kPi * x_d); // maximum of the left side
    if (g(n_star) < 0.0)
        throw NoIntersection("exponential and non-exponential parts never cross");
    // lower root in (0, n_star)
    double lo = n_star;
    while (g(lo) > 0.0) lo *= 0.5;
    const double n_small = bisect(lo, n_star, true, g);
    // upper root in (n_star, inf)
    double hi = n_star;
    while (g(hi) > 0.0) hi *= 2.0;
    const double n_cl = bisect(n_star, hi, false, g);
    return {n_small, n_cl};
}

RegionModel::RegionModel(const DimensionlessResonance& res) : res_(res)
{
    norm_ = closed_norm(res);
    residue_ = kI * std::exp(-res.b_s * res.z()) / (2.0 * norm_);
    rbar2_ = std::norm(2.0 * kPi * residue_);
    C_ = transition_constant(res, residue_, 1.0);
    variance_ = variance_narrow(res);
}

RegionReport RegionModel::report() const
{
    RegionReport rep;
    rep.tau_cs_oscillation = critical_time_first_oscillation(res_.x_d);
    if (variance_ > 0.0) {
        rep.alpha = 2.0 * res_.x_d / std::sqrt(variance_);
        rep.tau_cs_ghirardi = rep.alpha * rep.alpha;
        rep.n_cs_ghirardi = rep.tau_cs_ghirardi / (4.0 * kPi * res_.x_d);
        rep.tau_cs_intersection = critical_time_intersection(rep.alpha, rbar2_);
    } else {
        // the quadratic small-time law does not exist here; the candidates
        // tied to it are marked absent
        rep.alpha = std::numeric_limits<double>::quiet_NaN();
        rep.tau_cs_ghirardi = rep.alpha;
        rep.n_cs_ghirardi = rep.alpha;
    }
    const NclRoots roots = n_cl_solve(C_, res_.x_d, res_.nu);
    rep.n_small = roots.n_small;
    rep.n_cl = roots.n_cl;
    rep.n_min_m = (res_.nu + 1.0) / (2.0 * kPi * res_.x_d);
    rep.intervals[0] = {1.0, rep.n_min_m};
    rep.intervals[1] = {rep.n_min_m, 2.0 * rep.n_cl - rep.n_min_m};
    rep.intervals[2] = {2.0 * rep.n_cl - rep.n_min_m,
                        std::numeric_limits<double>::infinity()};
    return rep;
}

cplx RegionModel::small_time_N(double n) const
{
    const double x = res_.x_d, nu = res_.nu, b = res_.b_s;
    const cplx gzd_inv = std::exp(res_.b_s * res_.z()); // 1/g(z_d)
    const cplx e_plus = std::exp(kI * x), e_minus = std::exp(-kI * x);
    auto f = [&](double y) -> cplx {
        const cplx pref = std::exp(cplx(0.0, b * y)) * gzd_inv
                          * special::complex_power(cplx(0.0, -y), nu)
                          * std::exp(-2.0 * kPi * n * y);
        const cplx bracket = std::exp(cplx(0.0, -nu * x)) / (y - kI * e_plus)
                             - std::exp(cplx(0.0, nu * x)) / (y - kI * e_minus);
        return pref * bracket;
    };
    quad::OscSpec spec;
    spec.omega = b;
    spec.abs_tol = 1e-11;
    spec.breakpoints = {1e-6, 1e-4, 1e-2, 0.1, 1.0, 3.0};
    spec.smooth_end = 3.0;
    spec.max_cell = (n > 0.0) ? std::min(kPi / b, 0.5 / (2.0 * kPi * n)) : kPi / b;
    if (n > 0.0) spec.cutoff = std::max(4.0, 33.0 / (2.0 * kPi * n));
    const quad::Result r = quad::oscillatory_semi_infinite(f, spec);
    return r.value / (2.0 * kPi * kI);
}

double RegionModel::piecewise_P(double n) const
{
    const double x = res_.x_d, nu = res_.nu;
    const double decay = std::exp(-4.0 * kPi * x * n);
    const double absC = std::abs(C_.C);
    const double phase = 2.0 * kPi * n - std::arg(C_.C);
    const RegionReport rep = report();
    if (n < 1.0) {
        const cplx Nn = small_time_N(n);
        const cplx osc = 1.0 + std::exp(cplx(0.0, 2.0 * kPi * n)) * Nn;
        return rbar2_ * decay * std::norm(osc);
    }
    // the background piece P_ne = P_e / eta^2 = |2 pi R|^2 / (|C|^2 n^{2nu+2})
    const double pne = rbar2_ / (absC * absC * std::pow(n, 2.0 * nu + 2.0));
    if (n < rep.n_min_m) {
        return rbar2_ * decay
               * (1.0 + 2.0 / absC * std::exp(2.0 * kPi * x * n) / std::pow(n, nu + 1.0)
                            * std::cos(phase));
    }
    if (n < rep.intervals[1].second) {
        const double In = modulating_I(n, C_, x, nu);
        return In * (rbar2_ * decay + pne);
    }
    return pne
           * (1.0 + 2.0 * absC * std::pow(n, nu + 1.0) * std::exp(-2.0 * kPi * x * n)
                        * std::cos(phase));
}

ModulationResult multi_pole_modulation(const DensityOfStates& dos, double tau)
{
    const PoleSet& ps = dos.pole_set();
    if (ps.poles.size() < 2)
        throw SinglePole("multi_pole_modulation needs at least two poles");
    const std::size_t d = dos.dominant_index();
    const Pole& pd = ps.poles[d];
    const double t = tau / pd.omega;
    const cplx Rd = dos.residue(d);

    // nearest pole by |sigma_s - sigma_d|
    std::size_t nearest = (d == 0) ? 1 : 0;
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        if (s == d) continue;
        if (std::abs(ps.poles[s].sigma - pd.sigma)
            < std::abs(ps.poles[nearest].sigma - pd.sigma))
            nearest = s;
    }

    auto term = [&](std::size_t s) {
        const Pole& p = ps.poles[s];
        const cplx ratio = dos.residue(s) / Rd;
        return 2.0
               * (ratio * std::exp(-kI * (p.sigma - pd.sigma) * t)).real()
               * std::exp(-0.5 * (p.omega - pd.omega) * t);
    };
    double full = 1.0, near = 1.0;
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        if (s == d) continue;
        full += term(s);
    }
    near += term(nearest);

    const Pole& pn = ps.poles[nearest];
    return {full, near, (pn.sigma - pd.sigma) / pd.omega,
            0.5 * (pn.omega / pd.omega - 1.0)};
}

std::vector<Table1Row> table1(double b_s, double nu, const std::vector<double>& x_grid)
{
    std::vector<Table1Row> rows;
    // The intersection criterion follows the narrow-resonance convention
    // R(z_d) = i g(z_d)/2, giving |2 pi R|^2 = pi^2 e^{-2 b_s}.
    const double R2 = kPi * kPi * std::exp(-2.0 * b_s);
    for (double x : x_grid) {
        Table1Row row{};
        row.x_d = x;
        const DimensionlessResonance res{x, nu, b_s};
        const double var = variance_narrow(res);
        const GhirardiTime g = ghirardi_critical_time(var, 2.0 * x, 1.0);
        row.tau_G = g.tau_G;
        row.n_G = g.n_G;
        row.tau_osc = critical_time_first_oscillation(x);
        const double alpha = std::sqrt(g.tau_G);
        const std::vector<double> roots = critical_time_intersection(alpha, R2);
        if (roots.empty()) {
            row.tau_cs = std::numeric_limits<double>::quiet_NaN();
            row.n_cs = std::numeric_limits<double>::quiet_NaN();
            row.root_missing = true;
        } else {
            row.tau_cs = roots.back(); // the largest root
            row.n_cs = row.tau_cs / (4.0 * kPi * x);
            row.root_missing = false;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace decaykit
