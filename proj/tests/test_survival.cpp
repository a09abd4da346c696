#include <doctest.h>

#include <cmath>

#include "decaykit/survival.hpp"
#include "test_helpers.hpp"

using namespace decaykit;

namespace {

const DimensionlessResonance kStd{0.1, 0.5, 1.0};

double tau_to_t(const DimensionlessResonance& res, double tau) { return res.t_from_tau(tau); }

} // namespace

TEST_CASE("closed-form amplitude against the frozen references")
{
    for (const char* tau : {"0.5", "2", "5", "12"}) {
        const double tv = std::stod(tau);
        const cplx want = testutil::ref(std::string("amp_closed_x0.1_nu0.5_bs1_tau") + tau);
        const cplx got = amplitude_closed_exponential(kStd, kStd.n_from_tau(tv));
        INFO("tau=", tau);
        CHECK(std::abs(got - want) <= 1e-12);
    }
    CHECK(amplitude_closed_exponential(kStd, 0.0) == cplx(1.0, 0.0));
}

TEST_CASE("dos-based closed form equals the dimensionless one")
{
    const DensityOfStates dos = build_dos(kStd);
    for (double tau : {0.3, 2.0, 7.0}) {
        const cplx a = amplitude_closed_exponential(dos, tau_to_t(kStd, tau));
        const cplx b = amplitude_closed_exponential(kStd, kStd.n_from_tau(tau));
        CHECK(std::abs(a - b) <= 1e-13);
    }
}

TEST_CASE("quadrature route")
{
    const DensityOfStates dos = build_dos(kStd);
    CHECK(std::abs(amplitude_quadrature(dos, 0.0) - 1.0) <= 1e-9);
    for (double tau : {0.5, 2.0, 5.0}) {
        const cplx want = testutil::ref(std::string("amp_closed_x0.1_nu0.5_bs1_tau")
                                        + (tau == 0.5 ? "0.5" : std::to_string(int(tau))));
        const cplx got = amplitude_quadrature(dos, tau_to_t(kStd, tau));
        INFO("tau=", tau);
        CHECK(std::abs(got - want) <= 1e-9);
    }
}

TEST_CASE("decomposition: frozen parts and the contour identity")
{
    const DensityOfStates dos = build_dos(kStd);
    const double t5 = tau_to_t(kStd, 5.0);
    const AmplitudeBreakdown parts = amplitude_decomposed(dos, t5);
    CHECK(std::abs(parts.exponential - testutil::ref("amp_e_x0.1_nu0.5_bs1_tau5")) <= 1e-11);
    CHECK(std::abs(parts.nonexponential - testutil::ref("amp_ne_x0.1_nu0.5_bs1_tau5")) <= 1e-10);

    // t = 0: A_e + A_ne = 1
    const AmplitudeBreakdown at0 = amplitude_decomposed(dos, 0.0);
    CHECK(std::abs(at0.total - 1.0) <= 1e-7);

    // tau = 40: the exponential part is dead and the total is the background
    const AmplitudeBreakdown late = amplitude_decomposed(dos, tau_to_t(kStd, 40.0));
    CHECK(std::abs(late.exponential) < 1e-8);
    CHECK(std::abs(late.total - late.nonexponential) <= 1e-8);
}

TEST_CASE("routes agree pointwise")
{
    const DensityOfStates dos = build_dos(kStd);
    for (double n : {0.1, 0.5, 1.0, 2.5, 5.0}) {
        const double t = tau_to_t(kStd, kStd.tau_from_n(n));
        const cplx a_q = amplitude_quadrature(dos, t);
        const cplx a_c = amplitude_closed_exponential(kStd, n);
        const AmplitudeBreakdown parts = amplitude_decomposed(dos, t);
        CHECK(std::abs(a_q - a_c) < 1e-8);
        CHECK(std::abs(parts.total - a_q) < 1e-7);
    }
}

TEST_CASE("survival curve identities")
{
    const DensityOfStates dos = build_dos(kStd);
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(tau_to_t(kStd, 10.0 * i / 40.0));
    const SurvivalCurve curve = survival_probability(dos, ts, Route::decomposition);
    CHECK(std::abs(curve.P[0] - 1.0) <= 1e-8);
    for (std::size_t i = 0; i < curve.P.size(); ++i) {
        CHECK(std::abs(curve.P[i] - (curve.P_e[i] + curve.P_ne[i] + curve.P_i[i])) <= 1e-10);
        CHECK(curve.P[i] >= 0.0);
        CHECK(curve.P[i] <= 1.0 + 1e-8);
        CHECK(curve.grid[i].tau == doctest::Approx(0.2 * curve.grid[i].t).epsilon(1e-14));
        CHECK(curve.grid[i].n
              == doctest::Approx(curve.grid[i].tau / (4.0 * M_PI * 0.1)).epsilon(1e-14));
    }
}

TEST_CASE("small b_s drives P above one in the first quarter oscillation")
{
    const DimensionlessResonance res{0.1, 0.5, 0.1};
    const DensityOfStates dos = build_dos(res);
    double peak = 0.0;
    for (int i = 1; i <= 25; ++i) {
        const double n = 0.25 * double(i) / 25.0;
        const double t = res.t_from_tau(res.tau_from_n(n));
        peak = std::max(peak, std::norm(amplitude_decomposed(dos, t).total));
    }
    CHECK(peak > 1.0);

    // b_s = 1 keeps P below one everywhere
    const DensityOfStates safe = build_dos(kStd);
    for (int i = 0; i <= 50; ++i) {
        const double t = kStd.t_from_tau(kStd.tau_from_n(10.0 * i / 50.0));
        CHECK(std::norm(amplitude_decomposed(safe, t).total) <= 1.0 + 1e-8);
    }
}

TEST_CASE("P starts flat: one-sided derivative Richardson-extrapolates to zero")
{
    const DensityOfStates dos = build_dos(kStd);
    auto P = [&](double t) { return std::norm(amplitude_decomposed(dos, t, 1e-12).total); };
    const double h = 1e-3;
    const double d1 = (P(h) - P(0.0)) / h;
    const double d2 = (P(h / 2.0) - P(0.0)) / (h / 2.0);
    const double extrapolated = 2.0 * d2 - d1; // kills the O(h) term of an even function
    CHECK(std::abs(extrapolated) <= 5e-5 * std::abs(d1) + 1e-8);
}

TEST_CASE("intermediate-region envelope decays like e^{-tau}")
{
    const DimensionlessResonance res{0.01, 0.5, 1.0};
    auto P = [&](double n) { return std::norm(amplitude_closed_exponential(res, n)); };
    // slope of log P in tau between successive oscillation maxima
    auto peak_near = [&](double n0) {
        double best_n = n0, best = -1.0;
        for (int i = -20; i <= 20; ++i) {
            const double n = n0 + 0.01 * i;
            const double v = P(n);
            if (v > best) {
                best = v;
                best_n = n;
            }
        }
        return std::pair<double, double>(best_n, best);
    };
    const auto [n1, p1] = peak_near(3.0);
    const auto [n2, p2] = peak_near(6.0);
    const double slope = (std::log(p2) - std::log(p1))
                         / (res.tau_from_n(n2) - res.tau_from_n(n1));
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.01));
}

TEST_CASE("large-time asymptote")
{
    const DensityOfStates dos = build_dos(kStd);
    // doubling t divides the power law by 2^{2nu+2}
    const double t = 300.0;
    CHECK(large_time_asymptote(dos, 2.0 * t) / large_time_asymptote(dos, t)
          == doctest::Approx(std::pow(2.0, -3.0)).epsilon(1e-12));

    // ratio against the exact P at large tau (exponential part long dead)
    const double tau = 40.0;
    const double tt = tau_to_t(kStd, tau);
    const double exact = std::norm(amplitude_closed_exponential(kStd, kStd.n_from_tau(tau)));
    // average the oscillation over one period
    double acc = 0.0;
    const int m = 16;
    for (int i = 0; i < m; ++i) {
        const double n = kStd.n_from_tau(tau) + double(i) / m;
        acc += std::norm(amplitude_closed_exponential(kStd, n))
               / large_time_asymptote(dos, kStd.t_from_tau(kStd.tau_from_n(n)));
    }
    CHECK(acc / m == doctest::Approx(1.0).epsilon(0.02));
    CHECK(exact > 0.0);
}

TEST_CASE("Watson asymptote of the background amplitude")
{
    const DimensionlessResonance res{0.01, 0.5, 1.0};
    const DensityOfStates dos = build_dos(res);
    // magnitude scales as n^{-(nu+1)}
    const double r12 = std::abs(asymptotic_A_ne(res, 1.0)) / std::abs(asymptotic_A_ne(res, 2.0));
    CHECK(r12 == doctest::Approx(std::pow(2.0, res.nu + 1.0)).epsilon(1e-12));

    // against the exact Laplace integral at n = 5
    const double t = res.t_from_tau(res.tau_from_n(5.0));
    const cplx exact = amplitude_nonexponential_part(dos, t);
    const cplx asym = asymptotic_A_ne(res, 5.0);
    CHECK(std::abs(asym / exact - 1.0) <= 0.05);
}
