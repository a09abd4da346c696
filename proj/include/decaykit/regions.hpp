#pragma once

// Critical times, transition regions and the piecewise description of P(n)
// for a narrow isolated resonance, plus the Ghirardi comparison.

#include <array>
#include <vector>

#include "decaykit/dos.hpp"

namespace decaykit {

struct TransitionConstant {
    cplx C;
};

struct RegionReport {
    double tau_cs_oscillation = 0.0;          // 4 pi x_d (n = 1)
    std::vector<double> tau_cs_intersection;  // quadratic/exponential intersection roots
    double tau_cs_ghirardi = 0.0;             // alpha^2
    double n_cs_ghirardi = 0.0;
    double alpha = 0.0;                       // omega_d / sqrt(variance)
    double n_cl = 0.0;                        // larger |A_e| = |A_ne| root
    double n_small = 0.0;                     // smaller root
    double n_min_m = 0.0;                     // (nu+1)/(2 pi x_d), minimum of m(n)
    std::array<std::pair<double, double>, 3> intervals; // i/ii/iii in n units
};

// Roots of (1 - (tau/alpha)^2) e^tau = R2 on [0, alpha]; the count follows
// from the maximum f_+ = 2 tau_+ e^{tau_+}/alpha^2 at tau_+ = sqrt(1+alpha^2)-1.
std::vector<double> critical_time_intersection(double alpha, double R2);

// Form-factor independent definition: one full oscillation, tau = 4 pi x_d.
double critical_time_first_oscillation(double x_d);

struct GhirardiTime {
    double tau_G;
    double n_G;
};
GhirardiTime ghirardi_critical_time(double var, double omega_d, double sigma_d);

// C(x_d, nu) from the dominant-pole residue and gamma (both of the
// normalized density).
TransitionConstant transition_constant(const DimensionlessResonance& res, cplx residue,
                                       double g0);
TransitionConstant transition_constant(const DimensionlessResonance& res, cplx residue,
                                       double g0, cplx gamma);
TransitionConstant transition_constant(const DimensionlessResonance& res); // narrow defaults

double modulating_I(double n, const TransitionConstant& C, double x_d, double nu);
double eta_ratio(double n, const TransitionConstant& C, double x_d, double nu);
double modulating_m(double n, const TransitionConstant& C, double x_d, double nu);

struct NclRoots {
    double n_small;
    double n_cl; // the critical time is the larger root
};
NclRoots n_cl_solve(const TransitionConstant& C, double x_d, double nu);

// Bundled description of one narrow resonance; computes the pieces once.
class RegionModel {
public:
    explicit RegionModel(const DimensionlessResonance& res);

    const DimensionlessResonance& resonance() const { return res_; }
    double norm() const { return norm_; }
    cplx residue() const { return residue_; }             // normalized R(z_d)
    double rbar2() const { return rbar2_; }               // |2 pi R(z_d)|^2
    const TransitionConstant& constant() const { return C_; }
    double variance() const { return variance_; }

    RegionReport report() const;

    // Region-appropriate P(n): the small-time integral form below n = 1,
    // then the intermediate/transition/large-time formulas.
    double piecewise_P(double n) const;

    // Small-time background integral N(n).
    cplx small_time_N(double n) const;

private:
    DimensionlessResonance res_;
    double norm_;
    cplx residue_;
    double rbar2_;
    TransitionConstant C_;
    double variance_;
};

struct ModulationResult {
    double m_full;      // full pole sum
    double m_nearest;   // nearest-pole approximation
    double omega_t;     // oscillation frequency (sigma_{d+1}-sigma_d)/omega_d
    double damping_rate; // (omega_{d+1}/omega_d - 1)/2 per lifetime
};
ModulationResult multi_pole_modulation(const DensityOfStates& dos, double tau);

struct Table1Row {
    double x_d;
    double tau_G;
    double tau_cs;   // intersection definition; NaN when no root exists
    double tau_osc;  // 4 pi x_d
    double n_G;
    double n_cs;
    bool root_missing;
};
std::vector<Table1Row> table1(double b_s, double nu, const std::vector<double>& x_grid);

} // namespace decaykit
