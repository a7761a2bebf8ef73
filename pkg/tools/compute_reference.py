"""One-off generator for the frozen high-accuracy reference values used in tests.

Recomputes the terminal state of the built-in "pr1" day with classical
RK4 at dt=1e-4 (19M steps), which serves as the reference solution for
the convergence-order tests.  The kernel is an independent third
implementation (besides the engine and the flat-loop oracle), JIT
compiled because 19M x 4 stages is unreasonable in interpreted code.

Requires numba (not a package dependency; tooling only).  The printed
values are frozen into tests/test_acceptance.py; rerun this script to
regenerate them.
"""

import math

import numba
import numpy as np

A1, A2 = 0.06, 0.002
G1, G2 = 0.001, 5e-5
K1, P0 = 0.03, 200.0
K2, K3, K4 = 0.2, 0.015, 2e-4
F = 3.0
TU, TP = 300.0, 100.0
LESSON_S = np.array([0.0, 0.0, 0.2, 0.3, 0.4])


@numba.njit(cache=True)
def _lesson_rhs(z1, z2, p, r0, s):
    r = r0 / (1.0 + math.exp(K1 * (p - P0)))
    r1s = r * (1.0 - s)
    dz1 = r1s * (A1 * F - A2 * z1) - G1 * z1
    dz2 = r1s * A2 * z1 - G2 * z2
    dp = K2 * (1.0 + s) * F
    return dz1, dz2, dp


@numba.njit(cache=True)
def rk4_day(dt, lesson_s):
    ku = round(TU / dt)
    kp = round(TP / dt)
    z1 = z2 = p = 0.0
    r0 = 1.0
    r = r0
    k = 0  # global step index
    for lesson in range(5):
        if lesson > 0:
            # break: (z1, z2, r), recovery ceiling depends on absolute time
            p = 0.0
            for i in range(kp):
                t = k * dt
                a1, a2, a3 = -G1 * z1, -G2 * z2, K3 * (math.exp(-K4 * t) - r)
                b1 = -G1 * (z1 + 0.5 * dt * a1)
                b2 = -G2 * (z2 + 0.5 * dt * a2)
                b3 = K3 * (math.exp(-K4 * (t + 0.5 * dt)) - (r + 0.5 * dt * a3))
                c1 = -G1 * (z1 + 0.5 * dt * b1)
                c2 = -G2 * (z2 + 0.5 * dt * b2)
                c3 = K3 * (math.exp(-K4 * (t + 0.5 * dt)) - (r + 0.5 * dt * b3))
                d1 = -G1 * (z1 + dt * c1)
                d2 = -G2 * (z2 + dt * c2)
                d3 = K3 * (math.exp(-K4 * (t + dt)) - (r + dt * c3))
                z1 += dt / 6.0 * (a1 + 2.0 * (b1 + c1) + d1)
                z2 += dt / 6.0 * (a2 + 2.0 * (b2 + c2) + d2)
                r += dt / 6.0 * (a3 + 2.0 * (b3 + c3) + d3)
                k += 1
            r0 = r
            p = 0.0
        s = lesson_s[lesson]
        for i in range(ku):
            a1, a2, a3 = _lesson_rhs(z1, z2, p, r0, s)
            b1, b2, b3 = _lesson_rhs(z1 + 0.5 * dt * a1, z2 + 0.5 * dt * a2, p + 0.5 * dt * a3, r0, s)
            c1, c2, c3 = _lesson_rhs(z1 + 0.5 * dt * b1, z2 + 0.5 * dt * b2, p + 0.5 * dt * b3, r0, s)
            d1, d2, d3 = _lesson_rhs(z1 + dt * c1, z2 + dt * c2, p + dt * c3, r0, s)
            z1 += dt / 6.0 * (a1 + 2.0 * (b1 + c1) + d1)
            z2 += dt / 6.0 * (a2 + 2.0 * (b2 + c2) + d2)
            p += dt / 6.0 * (a3 + 2.0 * (b3 + c3) + d3)
            k += 1
        r = r0 / (1.0 + math.exp(K1 * (p - P0)))
    return z1, z2, r, p


if __name__ == "__main__":
    for dt in (0.01, 0.001, 1e-4):
        z1, z2, r, p = rk4_day(dt, LESSON_S)
        print(f"dt={dt:g}: Z1={z1!r} Z2={z2!r} Z={z1 + z2!r} r={r!r} P={p!r}")
