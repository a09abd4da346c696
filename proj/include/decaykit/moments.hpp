#pragma once

// Hamiltonian moments <H^n>_0 of the density of states, the energy variance,
// and the Taylor structure of P(t) around t = 0.

#include <optional>
#include <vector>

#include "decaykit/dos.hpp"

namespace decaykit {

struct MomentTable {
    std::vector<double> values; // <H^n>_0, n = 0..N
    double variance = 0.0;      // values[2] - values[1]^2
};

// Closed-form moment (incomplete-gamma form for the exponential form factor,
// pole-sum form for the constant one).
double moment(const DensityOfStates& dos, int n);

// Direct quadrature int E^n rho(E) dE; throws MomentDivergent when the tail
// fails the convergence conditions.
double moment_quadrature(const DensityOfStates& dos, int n);

MomentTable moment_table(const DensityOfStates& dos, int max_order);

double variance(const DensityOfStates& dos);

// Variance of the dimensionless narrow single pole, evaluated in extended
// precision: the subtraction <H^2> - <H>^2 cancels to O(x_d), which double
// cannot carry through at x_d ~ 1e-12.
double variance_narrow(const DimensionlessResonance& res);

struct SignPoint {
    double b_s;
    int sign; // sign of the variance at this b_s
};
std::vector<SignPoint> variance_sign_scan(double x_d, double nu,
                                          const std::vector<double>& b_grid);

struct SignInterval {
    double lower = 0.0;
    double upper = 0.0;
};
// The b_s window with negative variance, endpoints by log-bisection.
std::optional<SignInterval> negative_variance_interval(double x_d, double nu);

// p_n coefficients of P(t) = sum i^n p_n t^n / n! (odd ones cancel).
std::vector<double> taylor_p(const MomentTable& moments, int order);

// Quadratic small-time law 1 - <(Delta H)^2> t^2; valid while P >= 0,
// i.e. t <= 1/sqrt(variance).
double small_time_P(double var, double t);
double small_time_validity(double var);

// B_n = -2 pi i sum_s z_s^n R(z_s) with normalized residues (Taylor
// coefficients of A_e), used by the evenness checks.
std::vector<cplx> amplitude_exp_taylor(const DensityOfStates& dos, int order);

} // namespace decaykit
