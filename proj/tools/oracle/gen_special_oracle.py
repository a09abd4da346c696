#!/usr/bin/env python3
"""Arbitrary-precision oracle for the complex special functions.

Generates the frozen certification grid used by the C++ test suite:

  * upper incomplete gamma Gamma(a, z) on a deterministic 120-point grid
    spanning a in [-3.5, 3], |z| in [1e-3, 50], Arg z in (-pi, pi), plus
    hand-picked corner cases (near-integer order, near-cut arguments,
    large modulus);
  * log Gamma and principal powers on their own small grids.

Every incomplete-gamma value is computed twice at 50 digits: once with
mpmath.gammainc and once by direct quadrature of the defining integral
along the horizontal ray z + u (the path never crosses the cut when
Im z != 0).  The two must agree to 1e-30 before a row is emitted, so the
frozen file does not inherit anybody's library bug.

Output: tests/data/special_oracle.csv (frozen; regenerate only if the
grid definition changes).
"""

import csv
import random
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50

OUT = Path(__file__).resolve().parents[2] / "tests" / "data" / "special_oracle.csv"


def gamma_ray_quadrature(a, z):
    """Gamma(a, z) = e^{-z} int_0^inf (z+u)^{a-1} e^{-u} du, horizontal ray."""
    f = lambda u: (z + u) ** (a - 1) * mp.e ** (-u)
    az = abs(z)
    pts = {az / 2, az, 2 * az, 1, 5, 20, 80}
    if mp.re(z) < 0:  # the ray passes |Im z| under the branch point
        u0 = -mp.re(z)
        pts |= {u0 / 2, u0, 2 * u0}
    val = mp.quad(f, [0] + sorted(pts) + [mp.inf], maxdegree=10)
    return mp.e ** (-z) * val


def certified_gamma(a, z):
    g1 = mp.gammainc(mp.mpf(a), z, mp.inf)
    if abs(mp.im(z)) > 1e-6:  # ray quadrature is well-conditioned off the axis
        g2 = gamma_ray_quadrature(mp.mpf(a), z)
        rel = abs(g1 - g2) / max(abs(g1), mp.mpf("1e-200"))
        if rel > mp.mpf("1e-25"):
            raise RuntimeError(f"oracle self-check failed at a={a} z={z}: {rel}")
    return g1


def emit(writer, kind, a, z, value):
    writer.writerow(
        [kind, mp.nstr(mp.mpf(a), 20), mp.nstr(mp.re(z), 22), mp.nstr(mp.im(z), 22),
         mp.nstr(mp.re(value), 22), mp.nstr(mp.im(value), 22)]
    )


def main():
    rng = random.Random(20240817)
    rows = []
    with OUT.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "a", "z_re", "z_im", "re", "im"])

        # random certification grid
        count = 0
        while count < 120:
            a = rng.uniform(-3.5, 3.0)
            if abs(a - round(a)) < 1e-3 and round(a) <= 0:
                continue  # exact integers get their own rows below
            r = 10 ** rng.uniform(-3, mp.log10(50))
            th = rng.uniform(-mp.pi + 1e-3, mp.pi - 1e-3)
            z = mp.mpc(r * mp.cos(th), r * mp.sin(th))
            emit(w, "igamma", a, z, certified_gamma(a, z))
            count += 1

        # corners: integer and near-integer order, near-cut, large modulus
        corners = [
            (0.0, mp.mpc(2, 1)), (-1.0, mp.mpc(-2, 0.5)), (-2.0, mp.mpc(0.5, -3)),
            (-3.0, mp.mpc(-1, 6)), (-1.9999, mp.mpc(-0.7, -4.1)), (-0.0001, mp.mpc(1, 1)),
            (-2.9995, mp.mpc(-9.7, -6.0)), (-0.5, mp.mpc(-2, 1e-9)), (-0.5, mp.mpc(-2, -1e-9)),
            (-3.5, mp.mpc(-45, 21.8)), (-3.5, mp.mpc(-28, 16)), (0.5, mp.mpc(0, 49)),
            (-0.25, mp.mpc(-0.65, 6.5e-5)), (-1.25, mp.mpc(-2, 2e-12)),
            (-1.5, mp.mpc(-2, 2e-12)), (1.0, mp.mpc(1, 0)), (0.5, mp.mpc(1e-3, 0)),
            (-0.5, mp.mpc(1, 1)), (2.5, mp.mpc(30, -30)),
        ]
        for a, z in corners:
            emit(w, "igamma", a, z, certified_gamma(a, z))

        # log gamma grid (standard branch)
        for _ in range(40):
            z = mp.mpc(rng.uniform(-8, 8), rng.uniform(-8, 8))
            if abs(mp.im(z)) < 1e-3 and mp.re(z) < 0.5:
                continue
            emit(w, "loggamma", 0.0, z, mp.loggamma(z))
        for z in [mp.mpc(1, 0), mp.mpc(0.5, 0), mp.mpc(2.5, 1.5), mp.mpc(-1.5, 2.0),
                  mp.mpc(-4.2, -0.3)]:
            emit(w, "loggamma", 0.0, z, mp.loggamma(z))

        # principal powers: kind uses a as the exponent
        for _ in range(30):
            p = rng.uniform(-2.5, 2.5)
            r = 10 ** rng.uniform(-2, 2)
            th = rng.uniform(-mp.pi + 1e-3, mp.pi)
            z = mp.mpc(r * mp.cos(th), r * mp.sin(th))
            emit(w, "cpow", p, z, z ** mp.mpf(p))
        emit(w, "cpow", 0.5, mp.mpc(0, -1), mp.mpc(0, -1) ** mp.mpf("0.5"))
        emit(w, "cpow", 0.5, mp.mpc(1, -0.1), mp.mpc(1, -0.1) ** mp.mpf("0.5"))

    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
