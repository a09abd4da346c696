#include <doctest.h>

#include <cmath>

#include "decaykit/autocorr.hpp"
#include "test_helpers.hpp"

using namespace decaykit;

namespace {
const DimensionlessResonance kStd{0.1, 0.5, 1.0};
}

TEST_CASE("autocorrelation against frozen values and a Simpson oracle")
{
    const DensityOfStates dos = build_dos(kStd);
    CHECK(std::abs(autocorrelation(dos, 0.0) - testutil::ref("autocorr_x0.1_nu0.5_bs1_y0").real())
          <= 1e-8);
    CHECK(std::abs(autocorrelation(dos, 0.2)
                   - testutil::ref("autocorr_x0.1_nu0.5_bs1_yomega").real())
          <= 1e-8);

    // independent brute force at y = 0.1
    const double y = 0.1;
    double sum = 0.0;
    const int cells = 200000;
    const double hi = 40.0;
    for (int i = 0; i < cells; ++i) {
        const double a = hi * double(i) / cells;
        const double b = hi * double(i + 1) / cells;
        const double m = 0.5 * (a + b);
        sum += (dos(a) * dos(a + y) + 4.0 * dos(m) * dos(m + y) + dos(b) * dos(b + y))
               * (b - a) / 6.0;
    }
    CHECK(autocorrelation(dos, y) == doctest::Approx(2.0 * sum).epsilon(1e-7));
}

TEST_CASE("R(y) <= R(0) everywhere (Cauchy-Schwarz)")
{
    const DensityOfStates dos = build_dos(kStd);
    const double R0 = autocorrelation(dos, 0.0);
    CHECK(R0 > 0.0);
    for (double y : {0.02, 0.1, 0.2, 0.5, 1.0, 3.0})
        CHECK(autocorrelation(dos, y) <= R0 * (1.0 + 1e-12));
}

TEST_CASE("narrow pole matches the Lorentzian approximation near y = 0")
{
    const DensityOfStates dos = build_dos(kStd);
    for (double y : {0.0, 0.05, 0.1, 0.2}) {
        const double direct = autocorrelation(dos, y);
        const double lor = autocorrelation_lorentzian(dos, y);
        INFO("y=", y);
        CHECK(std::abs(direct - lor) <= 0.05 * direct);
    }
}

TEST_CASE("two separated narrow poles: multi-pole approximation within 10%")
{
    PoleSet ps;
    ps.poles = {Pole{1.0, 0.004}, Pole{1.5, 0.012}};
    const DensityOfStates dos = build_dos(ps, 0.5, FormFactor::exponential(1.0));
    for (double y : {0.0, 0.002, 0.004, 0.01, 0.49, 0.5, 0.51}) {
        const double direct = autocorrelation(dos, y, 1e-10);
        const double approx = autocorrelation_multipole(dos, y);
        INFO("y=", y);
        CHECK(std::abs(direct - approx) <= 0.10 * std::abs(direct));
    }
}

TEST_CASE("Wiener-Khinchin forward transform reconstructs P")
{
    const DensityOfStates dos = build_dos(kStd);
    const AutocorrCurve ac = sample_autocorrelation(dos, 6.0, 600);

    // t = 0: integral of R is the normalization of P
    CHECK(wk_forward(ac, 0.0) == doctest::Approx(1.0).epsilon(1e-3));

    for (double tau : {1.0, 3.0, 8.0}) {
        const double t = kStd.t_from_tau(tau);
        const double direct = std::norm(amplitude_closed_exponential(kStd, kStd.n_from_tau(tau)));
        INFO("tau=", tau);
        CHECK(std::abs(wk_forward(ac, t) - direct) <= 1e-3);
    }
}

TEST_CASE("Wiener-Khinchin inverse transform recovers the autocorrelation")
{
    const DensityOfStates dos = build_dos(kStd);
    const double T = kStd.t_from_tau(45.0);
    const SampledSurvival sp = sample_survival(dos, T, 4000, Route::closed_form);
    for (double y : {0.0, 0.1, 0.2, 0.5}) {
        const double direct = autocorrelation(dos, y);
        const double inv = wk_inverse(sp, y);
        INFO("y=", y);
        CHECK(std::abs(inv - direct) <= 1e-3);
    }
    // y = 0 is (2/pi) times the Fleming lifetime
    CHECK(wk_inverse(sp, 0.0)
          == doctest::Approx(2.0 / M_PI * lifetime_fleming(sp)).epsilon(1e-9));
}

TEST_CASE("insufficient sampling is reported")
{
    const DensityOfStates dos = build_dos(kStd);
    const SampledSurvival sp = sample_survival(dos, kStd.t_from_tau(4.0), 64, Route::closed_form);
    CHECK_THROWS_AS(wk_inverse(sp, 0.1), InsufficientSampling); // P(T) still ~ e^{-4}
    const AutocorrCurve ac = sample_autocorrelation(dos, 2.0, 16);
    CHECK_THROWS_AS(wk_forward(ac, 500.0), InsufficientSampling); // grid coarser than the period
}

TEST_CASE("Fleming lifetime")
{
    // pure exponential: tau_F = tau_0
    SampledSurvival exp_curve;
    const double tau0 = 2.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 40.0 * double(i) / 4000.0;
        exp_curve.t.push_back(t);
        exp_curve.P.push_back(std::exp(-t / tau0));
    }
    exp_curve.tail_coefficient = 0.0;
    exp_curve.exponent = 3.0;
    CHECK(lifetime_fleming(exp_curve) == doctest::Approx(tau0).epsilon(1e-6));

    // narrow resonance: tau_F ~ 1/omega_d within 1%
    const DimensionlessResonance narrow{1e-3, 0.5, 1.0};
    const DensityOfStates dos = build_dos(narrow);
    const double T = narrow.t_from_tau(16.0);
    const SampledSurvival sp = sample_survival(dos, T, 60000, Route::closed_form);
    CHECK(lifetime_fleming(sp) == doctest::Approx(1.0 / 2e-3).epsilon(0.01));
}

TEST_CASE("discrete spectrum")
{
    // single level: no decay at all
    const DiscreteSpectrum one = discrete_spectrum({{1.3, 1.0}}, 7.7);
    CHECK(one.P == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(one.autocorr.size() == 1);
    CHECK(one.autocorr[0].offset == 0.0);
    CHECK(one.autocorr[0].weight == doctest::Approx(1.0));

    // two equal levels split by dE: P = (1 + cos dE t)/2
    const double dE = 0.7, t = 2.3;
    const DiscreteSpectrum two = discrete_spectrum({{1.0, 0.5}, {1.0 + dE, 0.5}}, t);
    CHECK(two.P == doctest::Approx(0.5 * (1.0 + std::cos(dE * t))).epsilon(1e-14));

    // arbitrary levels: P equals the cosine sum rebuilt from the delta list
    const std::vector<std::pair<double, double>> levels{
        {0.3, 0.2}, {1.1, 0.5}, {2.9, 0.3}};
    for (double tt : {0.0, 1.0, 5.5}) {
        const DiscreteSpectrum d = discrete_spectrum(levels, tt);
        double rebuilt = 0.0;
        for (const DeltaLine& line : d.autocorr) rebuilt += line.weight * std::cos(line.offset * tt);
        CHECK(d.P == doctest::Approx(rebuilt).epsilon(1e-12));
    }

    CHECK_THROWS_AS(discrete_spectrum({{1.0, 0.4}, {2.0, 0.4}}, 1.0), WeightsNotNormalized);
    CHECK_THROWS_AS(discrete_spectrum({{1.0, -0.5}, {2.0, 1.5}}, 1.0), WeightsNotNormalized);
}
