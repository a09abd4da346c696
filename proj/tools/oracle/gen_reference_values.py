#!/usr/bin/env python3
"""Frozen high-precision reference values for the unit tests.

Every value is computed at 40+ digits from the defining integrals or from
independently rederived closed forms (with the incomplete-gamma branch
continuation tracked explicitly), then frozen to 22 significant digits.

Output: tests/data/reference_values.csv with rows name,re,im.
"""

import csv
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 45

OUT = Path(__file__).resolve().parents[2] / "tests" / "data" / "reference_values.csv"

rows = []


def put(name, value):
    value = mp.mpc(value)
    rows.append([name, mp.nstr(mp.re(value), 22), mp.nstr(mp.im(value), 22)])


def gamma_branch(a, w, m):
    g = mp.gammainc(a, w, mp.inf)
    if m == 0:
        return g
    if mp.isint(a):
        k = int(-a)
        return g - 2j * mp.pi * m * (-1) ** k / mp.factorial(k)
    ph = mp.e ** (2j * mp.pi * m * a)
    return ph * g + (1 - ph) * mp.gamma(a)


def closed_term(nu, gam, zz, p):
    sig = -zz
    theta = mp.arg(sig) + mp.arg(p)
    mm = 1 if theta > mp.pi else (-1 if theta <= -mp.pi else 0)
    return (sig ** nu) / (zz ** nu) * gam * mp.e ** (-p * zz) * gamma_branch(-nu, p * sig, mm)


def amplitude_closed(tau, x, nu, bs):
    t = tau / (2 * x)
    p = bs + 1j * t
    z = 1 - 1j * x
    num = closed_term(nu, mp.mpc(0, -1), z, p) + closed_term(nu, mp.mpc(0, 1), mp.conj(z), p)
    den = closed_term(nu, mp.mpc(0, -1), z, mp.mpf(bs)) + closed_term(
        nu, mp.mpc(0, 1), mp.conj(z), mp.mpf(bs))
    return num / den


def main():
    nu = mp.mpf(1) / 2
    x = mp.mpf("0.1")
    bs = mp.mpf(1)
    z = 1 - 1j * x

    def rho_un(E):
        return E ** nu * mp.e ** (-bs * E) * mp.im(z ** (-nu) / (z - E))

    pts = [0, 1 - 3 * x, 1, 1 + 3 * x, 3, 8, 20, 40, mp.inf]
    N = mp.quad(rho_un, pts)
    put("norm_x0.1_nu0.5_bs1", N)
    put("beta0_x0.1_nu0.5_bs1", mp.im(z ** (-nu - 1)) / N)

    for tau in ["0.5", "2", "5", "12"]:
        put(f"amp_closed_x0.1_nu0.5_bs1_tau{tau}", amplitude_closed(mp.mpf(tau), x, nu, bs))

    # decomposition at tau = 5: A_e from the normalized residue, A_ne by
    # Laplace quadrature of the continued density
    tau = mp.mpf(5)
    t = tau / (2 * x)
    R = 1j * mp.e ** (-bs * z) / 2 / N
    put("amp_e_x0.1_nu0.5_bs1_tau5", -2j * mp.pi * mp.e ** (-1j * z * t) * R)

    def rho_c(zz):
        s = (-1j) / z ** nu / (z - zz) + (1j) / mp.conj(z) ** nu / (mp.conj(z) - zz)
        return zz ** nu * mp.e ** (-bs * zz) * s / 2

    ane = -1j * mp.quad(lambda y: rho_c(-1j * y) * mp.e ** (-t * y),
                        [0, x, 1, 5, 20, mp.inf]) / N
    put("amp_ne_x0.1_nu0.5_bs1_tau5", ane)

    # first moment by quadrature of E rho(E)
    m1 = mp.quad(lambda E: E * rho_un(E), pts) / N
    put("moment1_x0.1_nu0.5_bs1", m1)
    m2 = mp.quad(lambda E: E * E * rho_un(E), pts) / N
    put("moment2_x0.1_nu0.5_bs1", m2)

    # autocorrelation at y = 0 and y = omega for the same resonance
    rho_n = lambda E: rho_un(E) / N
    for yv, tag in [(mp.mpf(0), "0"), (2 * x, "omega")]:
        val = mp.quad(lambda E: 2 * rho_n(E) * rho_n(E + yv),
                      [0, 1 - 3 * x - yv, 1 - yv, 1 - x, 1, 1 + x, 1 + 3 * x, 3, 8, 20, 40,
                       mp.inf])
        put(f"autocorr_x0.1_nu0.5_bs1_y{tag}", val)

    # constant-form-factor residue of an isolated pole, nu = 1/2, z = 1 - 0.1i,
    # from the two normalization conditions solved as a linear system
    zr = mp.mpc(1, -mp.mpf("0.1"))
    ph = mp.e ** (1j * mp.pi * nu)
    # unknowns (Re R, Im R): rows Re(R z^-nu) = 0 ; Re(R e^{i pi nu}) = -sin(pi nu)/(2 pi)
    import numpy as np
    A = np.array(
        [[float(mp.re(zr ** -nu)), -float(mp.im(zr ** -nu))],
         [float(mp.re(ph)), -float(mp.im(ph))]])
    b = np.array([0.0, float(-mp.sin(mp.pi * nu) / (2 * mp.pi))])
    sol = np.linalg.solve(A, b)
    put("constff_residue_nu0.5_z1m0.1i", mp.mpc(sol[0], sol[1]))

    # small-time N(n) integral at n = 0.5 for x = 0.01, bs = 1 (piecewise check)
    x2 = mp.mpf("0.01")
    z2 = 1 - 1j * x2

    def Nn(n):
        f = lambda y: (mp.e ** (1j * bs * y) * mp.e ** (bs * z2)) * (-1j * y) ** nu * mp.e ** (
            -2 * mp.pi * n * y) * (mp.e ** (-1j * nu * x2) / (y - 1j * mp.e ** (1j * x2))
                                   - mp.e ** (1j * nu * x2) / (y - 1j * mp.e ** (-1j * x2)))
        return mp.quad(f, [0, "0.25", 1, 3, 10, 40, mp.inf]) / (2j * mp.pi)

    put("smalltime_N_x0.01_nu0.5_bs1_n0.5", Nn(mp.mpf("0.5")))

    with OUT.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "re", "im"])
        w.writerows(rows)
    print(f"wrote {OUT} ({len(rows)} values)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
