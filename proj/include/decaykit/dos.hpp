#pragma once

// Density of states built from resonance poles, a threshold exponent and a
// form factor:
//
//   rho(E) = E^nu g(E) Re sum_{s>0} gamma_s z_s^{-nu} / (z_s - E),
//   gamma_s = -2 R(z_s)/g(z_s),
//
// with gamma_s = -i in narrow mode.  The stored density is divided by its
// raw integral N so that A(0) = 1 holds exactly; N itself is cross-checked
// between the incomplete-gamma closed form and adaptive quadrature.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "decaykit/errors.hpp"

namespace decaykit {

using cplx = std::complex<double>;

struct Pole {
    double sigma; // Re z_s > 0
    double omega; // full width: omega_s = -2 Im z_s > 0

    cplx z() const { return {sigma, -0.5 * omega}; }
    double x() const { return 0.5 * omega / sigma; } // x_s of Eq. (|Im z|/Re z)
};

// Narrow isolated resonance in units of its own pole position.
struct DimensionlessResonance {
    double x_d = 0.0; // half-width over position
    double nu = 0.5;
    double b_s = 1.0; // form-factor slope times Re z_d

    cplx z() const { return {1.0, -x_d}; }
    cplx xi() const { return {1.0, -x_d}; } // xi_d = z_d / Re z_d
    double omega() const { return 2.0 * x_d; }

    // time coordinates: tau = omega_d t (t in units of 1/sigma_d), n = tau/(4 pi x_d)
    double tau_from_t(double t) const { return omega() * t; }
    double t_from_tau(double tau) const { return tau / omega(); }
    double n_from_tau(double tau) const;
    double tau_from_n(double n) const;
};

class FormFactor {
public:
    enum class Kind { Exponential, Constant, Gaussian };

    static FormFactor exponential(double b);
    static FormFactor constant();
    // Constructible so tests can demonstrate the rejection; every DOS build
    // refuses it (the exponential-order bound fails on the imaginary axis).
    static FormFactor gaussian(double a);

    Kind kind() const { return kind_; }
    double b() const { return b_; }
    double gauss_a() const { return a_; }

    double operator()(double E) const;
    cplx operator()(cplx z) const;

private:
    FormFactor(Kind k, double b, double a) : kind_(k), b_(b), a_(a) {}
    Kind kind_;
    double b_ = 0.0;
    double a_ = 0.0;
};

struct PoleSet {
    std::vector<Pole> poles;
    std::vector<cplx> residues; // one per fourth-quadrant pole; empty => narrow mode

    bool narrow_mode() const { return residues.empty(); }
    std::size_t dominant_index() const; // min omega_s
};

class DensityOfStates {
public:
    double nu() const { return nu_; }
    const FormFactor& form_factor() const { return ff_; }
    const PoleSet& pole_set() const { return poles_; }
    const std::vector<cplx>& gammas() const { return gammas_; } // raw gamma(z_s)
    double norm() const { return norm_; }
    std::size_t dominant_index() const { return dominant_; }
    const Pole& dominant_pole() const { return poles_.poles[dominant_]; }

    // normalized density on the real axis
    double operator()(double E) const;
    // meromorphic continuation of the normalized density
    cplx eval_complex(cplx z) const;

    // residue of the normalized density at z_s (fourth quadrant)
    cplx residue(std::size_t s) const;
    cplx gamma_normalized(std::size_t s) const { return gammas_[s] / norm_; }

    double g0() const { return ff_(0.0); } // g(0)

    // leading small-E coefficient: rho(E) ~ beta0 E^nu
    double beta0() const;

    // grid positivity diagnostic computed at build time
    double min_over_peak() const { return min_over_peak_; }

    DimensionlessResonance dimensionless() const;

    friend DensityOfStates build_dos(const PoleSet&, double nu, const FormFactor&);

private:
    DensityOfStates(PoleSet ps, double nu, FormFactor ff)
        : poles_(std::move(ps)), nu_(nu), ff_(ff) {}

    double raw_density(double E) const;

    PoleSet poles_;
    double nu_;
    FormFactor ff_;
    std::vector<cplx> gammas_;
    double norm_ = 1.0;
    std::size_t dominant_ = 0;
    double min_over_peak_ = 0.0;
};

DensityOfStates build_dos(const PoleSet& ps, double nu, const FormFactor& ff);

// convenience: single narrow pole at sigma = 1
DensityOfStates build_dos(const DimensionlessResonance& res);

double eval_dos(const DensityOfStates& dos, double E);

// Raw integral N of the unnormalized density, by closed form and quadrature;
// throws NormalizationMismatch if the two routes disagree beyond 1e-8.
double normalize_dos(const PoleSet& ps, double nu, const FormFactor& ff,
                     const std::vector<cplx>& gammas, double* quad_value = nullptr);

// Constant-form-factor residue of an isolated pole (Eq. driven by the
// normalization conditions) plus the consistency report of the lone-pole
// contradiction.
struct ConstantFFResidue {
    cplx residue;
    double condition_p0;      // Re sum z^{-nu} R   (must vanish)
    double condition_p1;      // Re sum z^{1-nu} R  (finite-moment condition)
    bool consistent;          // true only in the zero-width limit
};
ConstantFFResidue constant_ff_residues(const Pole& pole, double nu);

// Residues for a two-pole constant-form-factor set satisfying the
// normalization and the p = 0..2 finite-moment conditions (4x4 real system).
std::vector<cplx> constant_ff_residues_pair(const Pole& p1, const Pole& p2, double nu);

double dos_asymptotic_beta0(const DensityOfStates& dos);

} // namespace decaykit
