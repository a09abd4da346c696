#pragma once

// Survival amplitude A(t) by three independent routes: direct Fourier
// quadrature of the density of states, the incomplete-gamma closed form for
// the exponential form factor, and the pole/background decomposition
// A = A_e + A_ne coming from the contour argument.

#include <complex>
#include <vector>

#include "decaykit/dos.hpp"

namespace decaykit {

struct AmplitudeBreakdown {
    cplx total;
    cplx exponential;
    cplx nonexponential;
};

enum class Route { quadrature, closed_form, decomposition };

struct TimePoint {
    double t;   // in units of 1/sigma_d
    double tau; // omega_d t
    double n;   // tau / (4 pi x_d)
};

struct SurvivalCurve {
    std::vector<TimePoint> grid;
    std::vector<double> P, P_e, P_ne, P_i;
    Route route = Route::quadrature;
};

// A(t) = int_0^inf rho(E) e^{-iEt} dE, oscillation-aware.
cplx amplitude_quadrature(const DensityOfStates& dos, double t, double abs_tol = 1e-9);

// Incomplete-gamma closed form (exponential form factor only).  The gamma
// arguments -p z_s cross the branch cut as t grows; the sheet index is
// tracked from Arg(-z_s) + Arg(p).
cplx amplitude_closed_exponential(const DensityOfStates& dos, double t);
cplx amplitude_closed_exponential(const DimensionlessResonance& res, double n);

// A_e: pole sum; A_ne: Laplace integral along the negative imaginary axis.
cplx amplitude_exponential_part(const DensityOfStates& dos, double t);
cplx amplitude_nonexponential_part(const DensityOfStates& dos, double t, double abs_tol = 1e-10);
AmplitudeBreakdown amplitude_decomposed(const DensityOfStates& dos, double t,
                                        double abs_tol = 1e-10);

// P, P_e, P_ne, P_i over a grid of times (units 1/sigma_d); P from the
// requested route, the parts always from the decomposition.
SurvivalCurve survival_probability(const DensityOfStates& dos, const std::vector<double>& t_grid,
                                   Route route = Route::decomposition);

// Leading Watson-lemma power law |beta0|^2 Gamma(nu+1)^2 / t^{2nu+2}.
double large_time_asymptote(const DensityOfStates& dos, double t);

// Watson-lemma asymptote of A_ne as a function of oscillation count.
cplx asymptotic_A_ne(const DimensionlessResonance& res, double n);

// Raw normalization integral of the dimensionless single-pole density
// (closed form); shared by survival and regions.
double closed_norm(const DimensionlessResonance& res);

} // namespace decaykit
