#include <doctest.h>

#include <cmath>
#include <complex>

#include "decaykit/quadrature.hpp"

using namespace decaykit;
using quad::cplx;

TEST_CASE("adaptive integration of smooth functions")
{
    auto r1 = quad::integrate([](double x) { return cplx(x * x, 0.0); }, 0.0, 1.0, 1e-13);
    CHECK(r1.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    auto r2 = quad::integrate([](double x) { return cplx(std::sin(x), 0.0); }, 0.0, M_PI, 1e-13);
    CHECK(r2.value.real() == doctest::Approx(2.0).epsilon(1e-13));

    // integrable sqrt singularity at the edge
    auto r3 = quad::integrate([](double x) { return cplx(1.0 / std::sqrt(x), 0.0); }, 1e-12, 1.0,
                              1e-10, 20000);
    CHECK(r3.value.real() == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("oscillatory semi-infinite integral with exponential decay")
{
    // int_0^inf e^{-y} e^{i w y} dy = 1/(1 - i w)
    for (double w : {3.0, 25.0}) {
        quad::OscSpec spec;
        spec.omega = w;
        spec.abs_tol = 1e-12;
        spec.smooth_end = 1.0;
        spec.max_cell = 0.5;
        auto f = [w](double y) { return std::exp(cplx(-y, w * y)); };
        auto r = quad::oscillatory_semi_infinite(f, spec);
        const cplx expect = 1.0 / cplx(1.0, -w);
        CHECK(std::abs(r.value - expect) <= 1e-11);
    }
}

TEST_CASE("oscillatory integral with algebraic decay needs the epsilon tail")
{
    // int_0^inf cos(w y)/(1+y^2) dy = (pi/2) e^{-w}
    const double w = 3.0;
    quad::OscSpec spec;
    spec.omega = w;
    spec.abs_tol = 1e-10;
    spec.smooth_end = 2.0;
    auto f = [w](double y) { return std::exp(cplx(0.0, w * y)) / (1.0 + y * y); };
    auto r = quad::oscillatory_semi_infinite(f, spec);
    CHECK(r.value.real() == doctest::Approx(M_PI / 2.0 * std::exp(-w)).epsilon(1e-8));
}

TEST_CASE("wynn epsilon accelerates an alternating series")
{
    std::vector<cplx> sums;
    double s = 0.0;
    for (int k = 0; k < 14; ++k) {
        s += ((k % 2 == 0) ? 1.0 : -1.0) / double(k + 1);
        sums.push_back(cplx(s, 0.0));
    }
    double err = 0.0;
    const cplx limit = quad::wynn_epsilon(sums, err);
    CHECK(std::abs(limit.real() - std::log(2.0)) <= 1e-10);
    CHECK(err <= 1e-8);
}

TEST_CASE("non-oscillatory semi-infinite integral requires a cutoff")
{
    quad::OscSpec spec; // omega = 0, no cutoff
    CHECK_THROWS_AS(
        quad::oscillatory_semi_infinite([](double y) { return cplx(std::exp(-y), 0.0); }, spec),
        QuadratureNonconvergence);
    spec.cutoff = 45.0;
    auto r = quad::oscillatory_semi_infinite(
        [](double y) { return cplx(std::exp(-y), 0.0); }, spec);
    CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-10));
}
