#pragma once

// Quadrature kernels shared by every module: 15-point Gauss-Kronrod cells,
// an adaptive driver for finite intervals, and a semi-infinite driver for
// Fourier/Laplace-type integrands that partitions at half-periods of the
// kernel and accelerates the alternating cell sums with Wynn's epsilon
// algorithm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "decaykit/errors.hpp"

namespace decaykit::quad {

using cplx = std::complex<double>;

struct Result {
    cplx value{0.0, 0.0};
    double error = 0.0;
};

namespace detail {

// QUADPACK dqk15 abscissae/weights
inline constexpr double kron_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kron_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
Result gk15(F&& f, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kron_x[i];
        const cplx fv = (i < 7) ? f(c - dx) + f(c + dx) : f(c);
        kron += kron_w[i] * fv;
        if (i % 2 == 1) gauss += gauss_w[i / 2] * fv; // 7-pt Gauss shares the odd nodes
    }
    Result r;
    r.value = kron * h;
    r.error = std::abs(kron - gauss) * std::abs(h);
    r.error = std::min(r.error, 200.0 * std::pow(r.error, 1.5) + 1e-300);
    return r;
}

} // namespace detail

// Adaptive Gauss-Kronrod over [a, b].
template <typename F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-11, int max_cells = 4000)
{
    struct Cell { double a, b; Result r; };
    std::vector<Cell> heap;
    heap.push_back({a, b, detail::gk15(f, a, b)});
    Result total = heap[0].r;
    int n = 1;
    while (total.error > abs_tol && n < max_cells) {
        // split the worst cell
        size_t worst = 0;
        for (size_t i = 1; i < heap.size(); ++i)
            if (heap[i].r.error > heap[worst].r.error) worst = i;
        Cell cell = heap[worst];
        if (cell.b - cell.a < 1e-15 * (std::abs(cell.a) + 1.0)) break;
        const double mid = 0.5 * (cell.a + cell.b);
        Cell left{cell.a, mid, detail::gk15(f, cell.a, mid)};
        Cell right{mid, cell.b, detail::gk15(f, mid, cell.b)};
        total.value += left.r.value + right.r.value - cell.r.value;
        total.error += left.r.error + right.r.error - cell.r.error;
        heap[worst] = left;
        heap.push_back(right);
        ++n;
    }
    return total;
}

// Adaptive integration over a breakpoint chain.
template <typename F>
Result integrate_segments(F&& f, const std::vector<double>& pts, double abs_tol = 1e-11,
                          int max_cells_per_seg = 2000)
{
    Result total;
    if (pts.size() < 2) return total;
    const double seg_tol = abs_tol / double(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const Result r = integrate(f, pts[i], pts[i + 1], seg_tol, max_cells_per_seg);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

// Wynn epsilon table on partial sums; returns extrapolated limit and an
// error estimate from the last two even columns.
inline cplx wynn_epsilon(const std::vector<cplx>& sums, double& err)
{
    const int n = int(sums.size());
    cplx best = sums.back();
    err = std::abs(sums[n - 1] - sums[n - 2]);
    std::vector<cplx> prev_prev(n, 0.0), prev(sums.begin(), sums.end());
    cplx last_even = sums.back();
    for (int k = 1; k < n; ++k) {
        std::vector<cplx> cur(n - k);
        for (int i = 0; i < n - k; ++i) {
            const cplx diff = prev[i + 1] - prev[i];
            if (std::abs(diff) < 1e-300) {
                cur[i] = prev_prev[i + 1]; // converged column
            } else {
                cur[i] = prev_prev[i + 1] + 1.0 / diff;
            }
        }
        if (k % 2 == 0 && !cur.empty()) {
            const cplx cand = cur.back();
            const double d = std::abs(cand - last_even);
            if (d < err || k == 2) {
                err = d;
                best = cand;
            }
            last_even = cand;
        }
        prev_prev = std::move(prev);
        prev = std::move(cur);
    }
    return best;
}

struct OscSpec {
    double omega = 0.0;                 // kernel e^{i omega y} frequency
    std::vector<double> breakpoints;    // structure (peaks, thresholds)
    double smooth_end = 0.0;            // beyond this the envelope is monotone
    double cutoff = 0.0;                // envelope negligible past this (0 = none)
    double max_cell = 0.0;              // cap on cell width (0 = half-period)
    double abs_tol = 1e-10;
    int max_cells = 2'000'000;
};

// I = int_0^inf f(y) e^{i omega y} dy with the oscillation already inside f.
// Cells are half-periods of the kernel (or breakpoint-bounded); the tail past
// smooth_end is summed with epsilon acceleration, falling back to the
// monotone-envelope bound |tail| <= |last cell|.
template <typename F>
Result oscillatory_semi_infinite(F&& f, const OscSpec& spec)
{
    const double h = (spec.omega != 0.0) ? M_PI / std::abs(spec.omega)
                                         : std::numeric_limits<double>::infinity();
    // structured finite part
    std::vector<double> pts{0.0};
    for (double p : spec.breakpoints)
        if (p > 0.0 && p > pts.back()) pts.push_back(p);
    double smooth_end = std::max(spec.smooth_end, pts.back());
    if (spec.omega == 0.0) {
        // no oscillation: plain adaptive out to the cutoff
        if (spec.cutoff <= 0.0)
            throw QuadratureNonconvergence("non-oscillatory semi-infinite integral needs a cutoff");
        if (pts.back() < spec.cutoff) pts.push_back(spec.cutoff);
        return integrate_segments(f, pts, spec.abs_tol);
    }
    const double hcell = (spec.max_cell > 0.0) ? std::min(h, spec.max_cell) : h;
    // align the smooth-tail start on the cell grid
    smooth_end = std::ceil(smooth_end / hcell) * hcell;
    if (pts.back() < smooth_end) pts.push_back(smooth_end);

    Result total;
    // finite structured region: adaptive per segment, splitting long segments
    // into cells no wider than a half-period so oscillation never hides from
    // the error estimator
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i];
        const double b = pts[i + 1];
        const int ncell = std::max(1, int(std::ceil((b - a) / hcell)));
        if (ncell > spec.max_cells)
            throw QuadratureNonconvergence("oscillatory integral cell budget exceeded");
        const double hh = (b - a) / ncell;
        const double cell_tol = spec.abs_tol / (4.0 * double(ncell));
        for (int k = 0; k < ncell; ++k) {
            Result r = detail::gk15(f, a + k * hh, a + (k + 1) * hh);
            if (r.error > cell_tol && r.error > 1e-14 * (1.0 + std::abs(r.value)))
                r = integrate(f, a + k * hh, a + (k + 1) * hh,
                              std::max(cell_tol, 1e-14 * (1.0 + std::abs(r.value))), 64);
            total.value += r.value;
            total.error += r.error;
        }
    }
    // epsilon-accelerated alternating tail
    std::vector<cplx> sums;
    cplx tail = 0.0;
    double a = pts.back();
    double tail_err = std::numeric_limits<double>::infinity();
    cplx tail_val = 0.0;
    bool done = false;
    const double cells_per_halfperiod = std::ceil(h / hcell);
    for (int k = 0; k < 100000; ++k) {
        if (spec.cutoff > 0.0 && a >= spec.cutoff) {
            tail_val = tail;
            tail_err = std::abs(f(a)) * hcell; // envelope already negligible
            done = true;
            break;
        }
        Result r = detail::gk15(f, a, a + hcell);
        if (r.error > spec.abs_tol / 8.0) r = integrate(f, a, a + hcell, spec.abs_tol / 8.0, 64);
        tail += r.value;
        a += hcell;
        sums.push_back(tail);
        const double cell_mag = std::abs(r.value) * cells_per_halfperiod;
        if (cell_mag < 0.25 * spec.abs_tol) { // monotone-envelope bound
            tail_val = tail;
            tail_err = cell_mag;
            done = true;
            break;
        }
        if (sums.size() >= 8 && sums.size() % 2 == 0) {
            double err = 0.0;
            const cplx limit = wynn_epsilon(sums, err);
            if (err < 0.25 * spec.abs_tol) {
                tail_val = limit;
                tail_err = err;
                done = true;
                break;
            }
        }
        if (sums.size() > 4000) break;
    }
    if (!done) {
        double err = 0.0;
        tail_val = wynn_epsilon(sums, err);
        tail_err = err;
        if (err > spec.abs_tol)
            throw QuadratureNonconvergence("oscillatory tail failed to converge");
    }
    total.value += tail_val;
    total.error += tail_err;
    return total;
}

} // namespace decaykit::quad
