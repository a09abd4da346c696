#pragma once

// Autocorrelation of the density of states and the Wiener-Khinchin cosine
// transform pair linking it to the survival probability.

#include <vector>

#include "decaykit/dos.hpp"
#include "decaykit/survival.hpp"

namespace decaykit {

// R(y) = 2 int_0^inf rho(x) rho(x+y) dx
double autocorrelation(const DensityOfStates& dos, double y, double abs_tol = 1e-9);

// Narrow-resonance Lorentzian approximation 8 pi omega_d |R(z_d)|^2/(y^2+omega_d^2).
double autocorrelation_lorentzian(const DensityOfStates& dos, double y);

// Multi-pole approximation built from the exponential part alone.
double autocorrelation_multipole(const DensityOfStates& dos, double y);

struct AutocorrCurve {
    std::vector<double> y;
    std::vector<double> R;
    double tail_amplitude = 0.0; // fitted Lorentzian tail c/(y^2 + omega^2) past the horizon
    double tail_omega = 0.0;
};

AutocorrCurve sample_autocorrelation(const DensityOfStates& dos, double y_max, int points,
                                     double abs_tol = 1e-9);

// P(t) = int_0^inf R(y) cos(yt) dy from the sampled curve.
double wk_forward(const AutocorrCurve& ac, double t);

// Sampled survival probability with the analytic power-law tail attached.
struct SampledSurvival {
    std::vector<double> t;
    std::vector<double> P;
    double tail_coefficient = 0.0; // P ~ c / t^{2nu+2} past the horizon
    double exponent = 0.0;         // 2nu+2
};

SampledSurvival sample_survival(const DensityOfStates& dos, double t_max, int points,
                                Route route = Route::decomposition);

// R(y) = (2/pi) int_0^inf P(t) cos(yt) dt from the sampled curve.
double wk_inverse(const SampledSurvival& sp, double y);

// tau_F = int_0^inf P dt
double lifetime_fleming(const SampledSurvival& sp);

struct DeltaLine {
    double offset;
    double weight;
};

struct DiscreteSpectrum {
    double P = 0.0;
    std::vector<DeltaLine> autocorr; // weight sum w_n^2 at 0, 2 w_n w_m at E_n - E_m
};

DiscreteSpectrum discrete_spectrum(const std::vector<std::pair<double, double>>& levels,
                                   double t);

} // namespace decaykit
