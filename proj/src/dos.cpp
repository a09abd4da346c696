#include "decaykit/dos.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "decaykit/complex_gamma.hpp"
#include "decaykit/quadrature.hpp"

namespace decaykit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNormTol = 1e-8;        // closed form vs quadrature
constexpr double kNarrowMax = 0.15;      // x_s ceiling for gamma = -i
constexpr double kNegativityNarrow = 5e-3;  // narrow mode is itself O(x) approximate
constexpr double kNegativityExact = 1e-9;
constexpr int kPositivityGrid = 10000;   // log-spaced on [1e-6, 1e3] sigma_d

cplx pow_c(cplx z, double p) { return special::complex_power(z, p); }

} // namespace

double DimensionlessResonance::n_from_tau(double tau) const { return tau / (4.0 * kPi * x_d); }
double DimensionlessResonance::tau_from_n(double n) const { return 4.0 * kPi * x_d * n; }

FormFactor FormFactor::exponential(double b)
{
    if (!(b > 0.0)) throw Error("exponential form factor requires b > 0");
    return FormFactor(Kind::Exponential, b, 0.0);
}

FormFactor FormFactor::constant() { return FormFactor(Kind::Constant, 0.0, 0.0); }

FormFactor FormFactor::gaussian(double a)
{
    if (!(a > 0.0)) throw Error("gaussian form factor requires a > 0");
    return FormFactor(Kind::Gaussian, 0.0, a);
}

double FormFactor::operator()(double E) const
{
    switch (kind_) {
        case Kind::Exponential: return std::exp(-b_ * E);
        case Kind::Constant: return 1.0;
        case Kind::Gaussian: return std::exp(-a_ * E * E);
    }
    return 1.0;
}

cplx FormFactor::operator()(cplx z) const
{
    switch (kind_) {
        case Kind::Exponential: return std::exp(-b_ * z);
        case Kind::Constant: return 1.0;
        case Kind::Gaussian: return std::exp(-a_ * z * z);
    }
    return 1.0;
}

std::size_t PoleSet::dominant_index() const
{
    std::size_t d = 0;
    for (std::size_t s = 1; s < poles.size(); ++s)
        if (poles[s].omega < poles[d].omega) d = s;
    return d;
}

double DensityOfStates::raw_density(double E) const
{
    if (E <= 0.0) return 0.0;
    cplx sum = 0.0;
    for (std::size_t s = 0; s < poles_.poles.size(); ++s) {
        const cplx z = poles_.poles[s].z();
        sum += gammas_[s] * pow_c(z, -nu_) / (z - E);
    }
    return std::pow(E, nu_) * ff_(E) * sum.real();
}

double DensityOfStates::operator()(double E) const
{
    if (E < 0.0) throw Error("density of states evaluated at E < 0");
    return raw_density(E) / norm_;
}

cplx DensityOfStates::eval_complex(cplx z) const
{
    cplx sum = 0.0;
    for (std::size_t s = 0; s < poles_.poles.size(); ++s) {
        const cplx zs = poles_.poles[s].z();
        sum += gammas_[s] * pow_c(zs, -nu_) / (zs - z);
        sum += std::conj(gammas_[s]) * pow_c(std::conj(zs), -nu_) / (std::conj(zs) - z);
    }
    return 0.5 * pow_c(z, nu_) * ff_(z) * sum / norm_;
}

cplx DensityOfStates::residue(std::size_t s) const
{
    const cplx z = poles_.poles[s].z();
    return -0.5 * gammas_[s] * ff_(z) / norm_;
}

double DensityOfStates::beta0() const
{
    cplx sum = 0.0;
    for (std::size_t s = 0; s < poles_.poles.size(); ++s)
        sum += gammas_[s] * pow_c(poles_.poles[s].z(), -(nu_ + 1.0));
    return g0() * sum.real() / norm_;
}

DimensionlessResonance DensityOfStates::dimensionless() const
{
    const Pole& d = dominant_pole();
    DimensionlessResonance res;
    res.x_d = d.x();
    res.nu = nu_;
    res.b_s = (ff_.kind() == FormFactor::Kind::Exponential) ? ff_.b() * d.sigma : 0.0;
    return res;
}

double dos_asymptotic_beta0(const DensityOfStates& dos) { return dos.beta0(); }

double eval_dos(const DensityOfStates& dos, double E) { return dos(E); }

namespace {

double raw_density_of(const PoleSet& ps, double nu, const FormFactor& ff,
                      const std::vector<cplx>& gammas, double E)
{
    cplx sum = 0.0;
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        const cplx z = ps.poles[s].z();
        sum += gammas[s] * pow_c(z, -nu) / (z - E);
    }
    return std::pow(E, nu) * ff(E) * sum.real();
}

std::vector<double> peak_breakpoints(const PoleSet& ps)
{
    std::vector<double> pts;
    for (const Pole& p : ps.poles) {
        for (double k : {30.0, 10.0, 3.0, 1.0}) pts.push_back(p.sigma * (1.0 - k * p.x()));
        for (double k : {1.0, 3.0, 10.0, 30.0}) pts.push_back(p.sigma * (1.0 + k * p.x()));
        pts.push_back(p.sigma);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [](double v) { return v <= 0.0; }), pts.end());
    return pts;
}

double quadrature_norm(const PoleSet& ps, double nu, const FormFactor& ff,
                       const std::vector<cplx>& gammas)
{
    auto f = [&](double E) { return cplx(raw_density_of(ps, nu, ff, gammas, E), 0.0); };
    std::vector<double> pts{0.0};
    for (double p : peak_breakpoints(ps))
        if (p > pts.back()) pts.push_back(p);

    if (ff.kind() == FormFactor::Kind::Constant) {
        // algebraic tail: rho ~ -sum_k Re(sum_s gamma_s z_s^{k-1-nu}) E^{nu-k}
        const double Y = 2e4 * pts.back();
        for (double q = pts.back() * 2.0; q < Y; q *= 4.0) pts.push_back(q);
        pts.push_back(Y);
        quad::Result r = quad::integrate_segments(f, pts, 1e-11, 4000);
        double tail = 0.0;
        for (int k = 1; k <= 3; ++k) {
            cplx c = 0.0;
            for (std::size_t s = 0; s < ps.poles.size(); ++s)
                c += gammas[s] * pow_c(ps.poles[s].z(), double(k - 1) - nu);
            tail -= c.real() * std::pow(Y, nu - k) / (double(k) - nu);
        }
        return r.value.real() + tail;
    }

    // exponential decay: march the cutoff until the envelope is negligible
    double Y = pts.back();
    const double scale = std::abs(raw_density_of(ps, nu, ff, gammas, ps.poles[0].sigma)) + 1e-30;
    do {
        Y *= 1.5;
    } while (std::abs(raw_density_of(ps, nu, ff, gammas, Y)) > 1e-14 * scale && Y < 1e7);
    pts.push_back(Y);
    quad::Result r = quad::integrate_segments(f, pts, 1e-12, 8000);
    return r.value.real();
}

double closed_form_norm(const PoleSet& ps, double nu, const FormFactor& ff,
                        const std::vector<cplx>& gammas)
{
    if (ff.kind() == FormFactor::Kind::Exponential) {
        // N = -Gamma(1+nu) Re sum e^{i nu pi} gamma_s e^{-b z_s} Gamma(-nu, -b z_s)
        const double b = ff.b();
        cplx sum = 0.0;
        for (std::size_t s = 0; s < ps.poles.size(); ++s) {
            const cplx z = ps.poles[s].z();
            const cplx w = -b * z; // second quadrant, off the cut
            sum += std::exp(cplx(0.0, nu * kPi)) * gammas[s] * std::exp(-b * z)
                   * special::upper_incomplete_gamma(-nu, w);
        }
        return -std::tgamma(1.0 + nu) * sum.real();
    }
    // constant form factor: N = (pi/sin(pi nu)) Re sum gamma_s e^{i pi nu}
    cplx sum = 0.0;
    for (const cplx& g : gammas) sum += g * std::exp(cplx(0.0, nu * kPi));
    return kPi / std::sin(kPi * nu) * sum.real();
}

} // namespace

double normalize_dos(const PoleSet& ps, double nu, const FormFactor& ff,
                     const std::vector<cplx>& gammas, double* quad_value)
{
    const double n_quad = quadrature_norm(ps, nu, ff, gammas);
    const double n_closed = closed_form_norm(ps, nu, ff, gammas);
    if (quad_value) *quad_value = n_quad;
    if (std::abs(n_quad - n_closed) > kNormTol * std::abs(n_closed))
        throw NormalizationMismatch("normalization routes disagree: closed form "
                                    + std::to_string(n_closed) + " vs quadrature "
                                    + std::to_string(n_quad));
    return n_closed;
}

DensityOfStates build_dos(const PoleSet& ps, double nu, const FormFactor& ff)
{
    if (ps.poles.empty()) throw Error("pole set is empty");
    for (const Pole& p : ps.poles)
        if (!(p.sigma > 0.0) || !(p.omega > 0.0))
            throw Error("poles need sigma > 0 and omega > 0");
    if (ff.kind() == FormFactor::Kind::Gaussian)
        throw GaussianRejected("gaussian form factor violates the exponential-order bound");
    if (ff.kind() == FormFactor::Kind::Exponential && !(nu > 0.0 && nu <= 1.0))
        throw NuOutOfRange("exponential form factor requires 0 < nu <= 1");
    if (ff.kind() == FormFactor::Kind::Constant) {
        if (!(nu > 0.0 && nu < 1.0))
            throw NuOutOfRange("constant form factor requires 0 < nu < 1");
        if (ps.poles.size() < 2)
            throw SingleResonanceConstantFF(
                "a constant form factor with one pole forces a resonance without a width");
        if (ps.narrow_mode())
            throw Error("constant form factor needs explicit residues");
    }
    if (!ps.narrow_mode() && ps.residues.size() != ps.poles.size())
        throw Error("residue list does not match pole list");
    if (ps.narrow_mode()) {
        for (const Pole& p : ps.poles)
            if (p.x() > kNarrowMax)
                throw Error("narrow mode (gamma = -i) requires x_s <= 0.15");
    }

    DensityOfStates dos(ps, nu, ff);
    dos.gammas_.resize(ps.poles.size());
    for (std::size_t s = 0; s < ps.poles.size(); ++s) {
        if (ps.narrow_mode()) {
            dos.gammas_[s] = cplx(0.0, -1.0);
        } else {
            dos.gammas_[s] = -2.0 * ps.residues[s] / ff(ps.poles[s].z());
        }
    }

    if (ff.kind() == FormFactor::Kind::Constant) {
        // finiteness of the integral requires Re sum gamma z^{-nu} = 0
        cplx c0 = 0.0;
        double scale = 0.0;
        for (std::size_t s = 0; s < ps.poles.size(); ++s) {
            const cplx t = dos.gammas_[s] * pow_c(ps.poles[s].z(), -nu);
            c0 += t;
            scale += std::abs(t);
        }
        if (std::abs(c0.real()) > 1e-10 * scale)
            throw NormalizationMismatch(
                "constant form factor residues violate the convergence condition");
    }

    dos.norm_ = normalize_dos(ps, nu, ff, dos.gammas_);
    dos.dominant_ = ps.dominant_index();

    // positivity on a log grid over [1e-6, 1e3] sigma_d
    const double sigma_d = ps.poles[dos.dominant_].sigma;
    double peak = 0.0, lowest = 0.0;
    const double lo = std::log(1e-6 * sigma_d), hi = std::log(1e3 * sigma_d);
    for (int i = 0; i < kPositivityGrid; ++i) {
        const double E = std::exp(lo + (hi - lo) * double(i) / double(kPositivityGrid - 1));
        const double v = dos.raw_density(E);
        peak = std::max(peak, v);
        lowest = std::min(lowest, v);
    }
    dos.min_over_peak_ = lowest / peak;
    const double allow = ps.narrow_mode() ? kNegativityNarrow : kNegativityExact;
    if (lowest < -allow * peak)
        throw NegativeDensity("density of states negative on the check grid (min/peak = "
                              + std::to_string(lowest / peak) + ")");
    return dos;
}

DensityOfStates build_dos(const DimensionlessResonance& res)
{
    PoleSet ps;
    ps.poles.push_back(Pole{1.0, 2.0 * res.x_d});
    return build_dos(ps, res.nu, FormFactor::exponential(res.b_s));
}

ConstantFFResidue constant_ff_residues(const Pole& pole, double nu)
{
    if (!(nu > 0.0 && nu < 1.0)) throw NuOutOfRange("constant form factor requires 0 < nu < 1");
    const cplx z = pole.z();
    const cplx znu = pow_c(z, nu);
    const double denom = (znu * std::exp(cplx(0.0, kPi * nu))).imag();
    ConstantFFResidue out;
    out.residue = -znu * std::sin(kPi * nu) / (2.0 * kPi * cplx(0.0, 1.0) * denom);
    // conditions Re sum_s z^{p-nu} R over both half-planes, p = 0 and 1
    out.condition_p0 = (out.residue * pow_c(z, -nu)).real() * 2.0;
    out.condition_p1 = (out.residue * pow_c(z, 1.0 - nu)).real() * 2.0;
    out.consistent = std::abs(out.condition_p1) < 1e-12 * std::abs(out.residue * z);
    return out;
}

std::vector<cplx> constant_ff_residues_pair(const Pole& p1, const Pole& p2, double nu)
{
    if (!(nu > 0.0 && nu < 1.0)) throw NuOutOfRange("constant form factor requires 0 < nu < 1");
    // unknowns (ReR1, ImR1, ReR2, ImR2); rows: normalization, p = 0, 1, 2
    const std::array<cplx, 2> zs{p1.z(), p2.z()};
    double A[4][5] = {};
    auto put = [&](int row, const std::array<cplx, 2>& w, double rhs) {
        for (int j = 0; j < 2; ++j) {
            A[row][2 * j] = w[j].real();
            A[row][2 * j + 1] = -w[j].imag();
        }
        A[row][4] = rhs;
    };
    const cplx phase = std::exp(cplx(0.0, kPi * nu));
    put(0, {phase, phase}, -std::sin(kPi * nu) / (2.0 * kPi));
    put(1, {pow_c(zs[0], -nu), pow_c(zs[1], -nu)}, 0.0);
    put(2, {pow_c(zs[0], 1.0 - nu), pow_c(zs[1], 1.0 - nu)}, 0.0);
    put(3, {pow_c(zs[0], 2.0 - nu), pow_c(zs[1], 2.0 - nu)}, 0.0);
    // gaussian elimination with partial pivoting
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        if (std::abs(A[col][col]) < 1e-300) throw Error("degenerate constant-FF residue system");
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double m = A[r][col] / A[col][col];
            for (int c = col; c < 5; ++c) A[r][c] -= m * A[col][c];
        }
    }
    return {cplx(A[0][4] / A[0][0], A[1][4] / A[1][1]),
            cplx(A[2][4] / A[2][2], A[3][4] / A[3][3])};
}

} // namespace decaykit
