#include <doctest.h>

#include <cmath>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/moments.hpp"
#include "decaykit/regions.hpp"
#include "decaykit/survival.hpp"
#include "test_helpers.hpp"

using namespace decaykit;

namespace {
const DimensionlessResonance kStd{0.1, 0.5, 1.0};

struct Lcg {
    std::uint64_t s = 0xdeadbeefcafef00dull;
    double next()
    {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return double(s >> 11) / double(1ull << 53);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
};
} // namespace

TEST_CASE("intersection root finder: counts follow the f_+ criterion")
{
    const double alpha = 0.8;
    const double tau_plus = std::sqrt(1.0 + alpha * alpha) - 1.0;
    const double f_plus = 2.0 * tau_plus * std::exp(tau_plus) / (alpha * alpha);

    CHECK(critical_time_intersection(alpha, f_plus * 1.01).empty());
    const auto tangent = critical_time_intersection(alpha, f_plus);
    REQUIRE(tangent.size() == 1);
    CHECK(tangent[0] == doctest::Approx(tau_plus).epsilon(1e-10));
    CHECK(critical_time_intersection(alpha, 0.5 * (1.0 + f_plus)).size() == 2);
    CHECK(critical_time_intersection(alpha, 0.9).size() == 1);

    // randomized: residual at every root below 1e-12, count matches criterion
    Lcg rng;
    for (int i = 0; i < 200; ++i) {
        const double a = rng.uniform(0.05, 3.0);
        const double R2 = rng.uniform(0.05, 2.5);
        const double tp = std::sqrt(1.0 + a * a) - 1.0;
        const double fp = 2.0 * tp * std::exp(tp) / (a * a);
        const auto roots = critical_time_intersection(a, R2);
        std::size_t expect;
        if (R2 > fp * (1.0 + 1e-13)) expect = 0;
        else if (R2 > 1.0) expect = 2;
        else expect = 1;
        INFO("alpha=", a, " R2=", R2);
        CHECK(roots.size() == expect);
        for (double tau : roots) {
            const double u = tau / a;
            CHECK(std::abs((1.0 - u * u) * std::exp(tau) - R2) <= 1e-12 * (1.0 + R2));
        }
    }
}

TEST_CASE("first-oscillation critical time")
{
    CHECK(critical_time_first_oscillation(0.1) == doctest::Approx(1.2566370614).epsilon(1e-10));
    CHECK(critical_time_first_oscillation(1e-4) == doctest::Approx(1.2566370614e-3).epsilon(1e-10));
    // in oscillation units it is always one
    const double x = 0.037;
    CHECK(critical_time_first_oscillation(x) / (4.0 * M_PI * x) == doctest::Approx(1.0));
}

TEST_CASE("Ghirardi critical time")
{
    // alpha = 1 means tau_G = 1 by definition
    const GhirardiTime unit = ghirardi_critical_time(4.0, 2.0, 1.0);
    CHECK(unit.tau_G == doctest::Approx(1.0));

    // x = 1e-3, nu = 1/2, b_s = 2 reference row
    const double var = variance_narrow({1e-3, 0.5, 2.0});
    const GhirardiTime g = ghirardi_critical_time(var, 2e-3, 1.0);
    CHECK(g.tau_G == doctest::Approx(4.840e-3).epsilon(0.002));
    CHECK(g.n_G == doctest::Approx(0.385).epsilon(0.002));

    CHECK_THROWS_AS(ghirardi_critical_time(-1.0, 0.1, 1.0), NegativeVariance);
}

TEST_CASE("transition constant")
{
    const RegionModel model(kStd);
    const TransitionConstant C = model.constant();

    // linear in the residue
    const TransitionConstant C2 = transition_constant(kStd, 2.0 * model.residue(), 1.0);
    CHECK(std::abs(C2.C) == doctest::Approx(2.0 * std::abs(C.C)).epsilon(1e-12));

    // |A_ne/A_e| predicted by the constant against the direct amplitudes at n = 5
    const DensityOfStates dos = build_dos(kStd);
    const double t = kStd.t_from_tau(kStd.tau_from_n(5.0));
    const AmplitudeBreakdown parts = amplitude_decomposed(dos, t);
    const double direct = std::abs(parts.nonexponential / parts.exponential);
    const double predicted =
        std::exp(2.0 * M_PI * kStd.x_d * 5.0) / (std::abs(C.C) * std::pow(5.0, kStd.nu + 1.0));
    CHECK(std::abs(predicted / direct - 1.0) <= 0.05);

    // a gamma that makes Re(gamma/xi^{nu+1}) vanish is degenerate
    const cplx xi = kStd.xi();
    const cplx bad_gamma = cplx(0.0, 1.0) * special::complex_power(xi, kStd.nu + 1.0);
    CHECK_THROWS_AS(transition_constant(kStd, model.residue(), 1.0, bad_gamma),
                    DegenerateDenominator);
}

TEST_CASE("modulating function I(n)")
{
    const RegionModel model(kStd);
    const TransitionConstant& C = model.constant();
    for (double n = 1.05; n < 40.0; n += 0.35) {
        const double v = modulating_I(n, C, kStd.x_d, kStd.nu);
        CHECK(v >= 0.0);
        CHECK(v <= 2.0);
    }
    // envelope m(n) peaks exactly at n_cl where eta = 1
    const NclRoots roots = n_cl_solve(C, kStd.x_d, kStd.nu);
    CHECK(modulating_m(roots.n_cl, C, kStd.x_d, kStd.nu) == doctest::Approx(1.0).epsilon(1e-10));
    const double h = 1e-4 * roots.n_cl;
    CHECK(modulating_m(roots.n_cl - h, C, kStd.x_d, kStd.nu) < 1.0);
    CHECK(modulating_m(roots.n_cl + h, C, kStd.x_d, kStd.nu) < 1.0);
}

TEST_CASE("n_cl: defining equation, monotonicity, direct crossing")
{
    const RegionModel model(kStd);
    const NclRoots roots = n_cl_solve(model.constant(), kStd.x_d, kStd.nu);
    CHECK(roots.n_cl > roots.n_small);
    CHECK(roots.n_cl > 10.0);
    CHECK(roots.n_cl < 20.0);

    // residual of n^{2nu+2} e^{-4 pi x n} = |C|^{-2}
    const double lhs = std::pow(roots.n_cl, 2.0 * kStd.nu + 2.0)
                       * std::exp(-4.0 * M_PI * kStd.x_d * roots.n_cl);
    const double rhs = 1.0 / std::norm(model.constant().C);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);

    // narrower resonances cross later
    double prev = 0.0;
    for (double x : {0.1, 1e-2, 1e-3}) {
        const RegionModel m2(DimensionlessResonance{x, 0.5, 1.0});
        const double ncl = n_cl_solve(m2.constant(), x, 0.5).n_cl;
        CHECK(ncl > prev);
        prev = ncl;
    }

    // against a direct |A_e| = |A_ne| scan
    const DensityOfStates dos = build_dos(kStd);
    double crossing = 0.0;
    double last = 0.0;
    for (double n = 2.0; n <= 25.0; n += 0.05) {
        const double t = kStd.t_from_tau(kStd.tau_from_n(n));
        const AmplitudeBreakdown parts = amplitude_decomposed(dos, t);
        const double diff = std::abs(parts.exponential) - std::abs(parts.nonexponential);
        if (last > 0.0 && diff < 0.0) {
            crossing = n;
            break;
        }
        last = diff;
    }
    REQUIRE(crossing > 0.0);
    CHECK(std::abs(crossing - roots.n_cl) <= 0.2);
}

TEST_CASE("region report")
{
    const RegionModel model(kStd);
    const RegionReport rep = model.report();

    CHECK(rep.n_min_m == doctest::Approx(1.5 / (0.2 * M_PI)).epsilon(1e-12)); // 2.387
    CHECK(rep.intervals[0].first == 1.0);
    CHECK(rep.intervals[0].second == rep.n_min_m);
    CHECK(rep.intervals[1].second == doctest::Approx(2.0 * rep.n_cl - rep.n_min_m));
    // transition region symmetric about n_cl
    CHECK(rep.n_cl - rep.intervals[1].first
          == doctest::Approx(rep.intervals[1].second - rep.n_cl).epsilon(1e-10));
    // m(n) minimum in tau units: tau = 2(nu+1)
    CHECK(rep.n_min_m * 4.0 * M_PI * kStd.x_d == doctest::Approx(2.0 * (kStd.nu + 1.0)));
    CHECK(rep.tau_cs_oscillation == doctest::Approx(4.0 * M_PI * 0.1));
    CHECK(rep.n_cl > rep.n_min_m);
}

TEST_CASE("eta ordering flips at n_cl")
{
    const RegionModel model(kStd);
    const TransitionConstant& C = model.constant();
    const RegionReport rep = model.report();
    const double ncl = rep.n_cl;

    auto eta = [&](double n) { return eta_ratio(n, C, kStd.x_d, kStd.nu); };
    for (double n : {1.2, 0.5 * (1.2 + ncl), 0.95 * ncl})
        CHECK(eta(n) > 1.0 / eta(n));
    for (double n : {1.05 * ncl, 2.0 * ncl, 5.0 * ncl})
        CHECK(eta(n) < 1.0 / eta(n));

    // maximum of eta at (nu+1)/(2 pi x)
    const double n_star = (kStd.nu + 1.0) / (2.0 * M_PI * kStd.x_d);
    const double h = 1e-5 * n_star;
    const double d = (eta(n_star + h) - eta(n_star - h)) / (2.0 * h);
    CHECK(std::abs(d) <= 1e-6 * eta(n_star) / n_star);
}

TEST_CASE("piecewise P tracks the full survival probability")
{
    const RegionModel model(kStd);
    const RegionReport rep = model.report();

    // small-time integral against the frozen reference (x = 0.01 grid point)
    const RegionModel small(DimensionlessResonance{0.01, 0.5, 1.0});
    const cplx Nn = small.small_time_N(0.5);
    CHECK(std::abs(Nn - testutil::ref("smalltime_N_x0.01_nu0.5_bs1_n0.5")) <= 1e-9);

    // inside each region the formula stays within a few percent of the truth
    auto exact = [&](double n) {
        return std::norm(amplitude_closed_exponential(kStd, n));
    };
    for (double n : {0.3, 0.7}) // small-time region
        CHECK(std::abs(model.piecewise_P(n) / exact(n) - 1.0) <= 0.05);
    for (double n : {1.3, 2.0}) // intermediate
        CHECK(std::abs(model.piecewise_P(n) / exact(n) - 1.0) <= 0.05);
    for (double n : {3.5, 8.0, 14.0, 20.0}) // transition band
        CHECK(std::abs(model.piecewise_P(n) / exact(n) - 1.0) <= 0.10);
    for (double n : {27.0, 33.0}) // power law
        CHECK(std::abs(model.piecewise_P(n) / exact(n) - 1.0) <= 0.10);

    // continuity at the seams within the oscillation envelope
    for (double edge : {rep.n_min_m, rep.intervals[1].second}) {
        const double left = model.piecewise_P(edge * (1.0 - 1e-9));
        const double right = model.piecewise_P(edge * (1.0 + 1e-9));
        CHECK(std::abs(left - right) <= 0.10 * std::max(left, right));
    }

    // region iii: P n^{2nu+2} oscillates about |2 pi R|^2 / |C|^2
    const double centre = model.rbar2() / std::norm(model.constant().C);
    double acc = 0.0;
    const int m = 24;
    for (int i = 0; i < m; ++i) {
        const double n = rep.intervals[2].first + 2.0 + double(i) / m;
        acc += model.piecewise_P(n) * std::pow(n, 2.0 * kStd.nu + 2.0);
    }
    CHECK(acc / m == doctest::Approx(centre).epsilon(0.05));
}

TEST_CASE("multi-pole modulation")
{
    PoleSet ps;
    // dominant pole omega, neighbour at 3 omega, split 5 omega
    const double om = 0.01;
    ps.poles = {Pole{1.0, om}, Pole{1.0 + 5.0 * om, 3.0 * om}};
    const DensityOfStates dos = build_dos(ps, 0.5, FormFactor::exponential(1.0));

    const ModulationResult m0 = multi_pole_modulation(dos, 0.7);
    CHECK(m0.omega_t == doctest::Approx(5.0));
    CHECK(m0.damping_rate == doctest::Approx(1.0));

    // damping: the envelope of |M - 1| shrinks by e^{-1} per tau
    const double dev1 = std::abs(multi_pole_modulation(dos, 1.0).m_nearest - 1.0);
    const double dev2 = std::abs(multi_pole_modulation(dos, 1.0 + 2.0 * M_PI / 5.0).m_nearest - 1.0);
    CHECK(dev2 / dev1 == doctest::Approx(std::exp(-2.0 * M_PI / 5.0)).epsilon(0.05));

    // M -> 1 at large tau
    CHECK(multi_pole_modulation(dos, 40.0).m_full == doctest::Approx(1.0).epsilon(1e-8));

    // full-sum identity: |A_e|^2 equals the expanded double sum
    for (double tau : {0.3, 1.7, 6.0}) {
        const double t = tau / om;
        const cplx ae = amplitude_exponential_part(dos, t);
        cplx rebuilt = 0.0;
        for (std::size_t s = 0; s < 2; ++s) {
            for (std::size_t sp = 0; sp < 2; ++sp) {
                const cplx rs = -2.0 * M_PI * cplx(0, 1) * dos.residue(s);
                const cplx rsp = -2.0 * M_PI * cplx(0, 1) * dos.residue(sp);
                const cplx zs = ps.poles[s].z(), zsp = ps.poles[sp].z();
                rebuilt += rs * std::conj(rsp)
                           * std::exp(-cplx(0, 1) * (zs - std::conj(zsp)) * t);
            }
        }
        CHECK(std::abs(std::norm(ae) - rebuilt.real()) <= 1e-12 * rebuilt.real());
    }

    PoleSet one;
    one.poles = {Pole{1.0, 0.01}};
    const DensityOfStates lone = build_dos(one, 0.5, FormFactor::exponential(1.0));
    CHECK_THROWS_AS(multi_pole_modulation(lone, 1.0), SinglePole);
}

TEST_CASE("table rows and the no-solution regime")
{
    const auto rows = table1(2.0, 0.5, {1e-12, 1e-3, 1e-2, 1e-1});
    CHECK(rows[0].tau_G == doctest::Approx(4.824e-12).epsilon(0.002));
    CHECK(rows[0].tau_cs == doctest::Approx(1.988e-6).epsilon(0.002));
    CHECK(rows[1].n_G == doctest::Approx(0.385).epsilon(0.005));
    CHECK(rows[2].tau_cs == doctest::Approx(0.206).epsilon(0.005));
    CHECK(rows[3].n_cs == doctest::Approx(0.609).epsilon(0.005));
    // tau_G grows with x_d
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].tau_G > rows[i - 1].tau_G);

    // b_s = 1 pushes |2 pi R|^2 above f_+ for narrow poles: no root
    const auto none = table1(1.0, 0.5, {1e-6, 1e-3});
    CHECK(none[0].root_missing);
    CHECK(none[1].root_missing);
}
