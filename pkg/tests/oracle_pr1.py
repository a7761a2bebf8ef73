"""Independent flat-loop reference for the built-in "pr1" school-day scenario.

This file deliberately does NOT import the library. It is a single explicit
Euler loop over the two-category day (five lessons of length Tu separated by
breaks of length Tp, complexities [0, 0, 0.2, 0.3, 0.4], constant strain
F = 3), written with scalar arithmetic only. The test suite uses it as an
independent oracle for the engine.

Conventions shared with the engine (both sides must agree for comparisons
to be meaningful):
  - phase boundaries are exact step counts (a step starting at a boundary
    instant belongs to the later phase),
  - the time fed into the break-recovery ceiling exp(-k4*t) is the step
    START time, computed as step_index*dt,
  - both knowledge categories are advanced from pre-step values.

Run as a script to print the terminal state.
"""

from math import exp

# rate constants of the two-category day
A1 = 0.06
A2 = 0.002
G1 = 0.001
G2 = 5e-5
K1 = 0.03
P0 = 200.0
K2 = 0.2
K3 = 0.015
K4 = 2e-4

TU = 300.0
LESSON_S = (0.0, 0.0, 0.2, 0.3, 0.4)


def day_phases(dt, tp=100.0):
    """Per-step (o, S) lookup tables for the five-lesson day.

    Returns (phase, complexity, n_steps) where phase[k] is 1 during lessons
    and 0 during breaks for the step that STARTS at t = k*dt.
    """
    ku = round(TU / dt)
    kp = round(tp / dt)
    phase = []
    compl = []
    for i, s in enumerate(LESSON_S):
        if i > 0:
            phase.extend([0] * kp)
            compl.extend([s] * kp)  # S value is irrelevant during breaks
        phase.extend([1] * ku)
        compl.extend([s] * ku)
    return phase, compl, len(phase)


def simulate_flat(dt=0.01, tp=100.0, f_const=3.0, u_req=None, record_every=100):
    """Explicit Euler loop over the five-lesson day.

    If u_req is None the strain is constant (F = f_const); otherwise the
    per-step strain is the requirement gap max(u_req - Z, 0), with the
    plain-work rule dP = k2 when the gap is closed.

    Returns (rows, terminal) where rows are (t, Z1, Z2, r, P) tuples
    recorded at the initial instant and after every `record_every`-th step,
    and terminal is the final (Z1, Z2, r, P).
    """
    phase, compl, n_steps = day_phases(dt, tp)

    z1 = 0.0
    z2 = 0.0
    p = 0.0
    r0 = 1.0
    r = r0

    rows = [(0.0, z1, z2, r, p)]
    for k in range(n_steps):
        t = k * dt
        s = compl[k]
        z = z1 + z2
        if u_req is None:
            f = f_const
        else:
            f = u_req - z
            if f < 0.0:
                f = 0.0
        if phase[k] == 1:
            if f > 0.0:
                p = p + K2 * (1 + s) * f * dt
            else:
                p = p + K2 * dt
            x = K1 * (p - P0)
            r = 0.0 if x > 709.0 else r0 / (1 + exp(x))
            nz1 = z1 + r * (1 - s) * (A1 * f - A2 * z1) * dt - G1 * z1 * dt
            nz2 = z2 + A2 * r * (1 - s) * z1 * dt - G2 * z2 * dt
            z1, z2 = nz1, nz2
        else:
            p = 0.0
            r = r + K3 * (exp(-K4 * t) - r) * dt
            z1 = z1 - G1 * z1 * dt
            z2 = z2 - G2 * z2 * dt
            r0 = r
        if (k + 1) % record_every == 0 or k + 1 == n_steps:
            rows.append(((k + 1) * dt, z1, z2, r, p))
    return rows, (z1, z2, r, p)


def grid_search_u(u_values, dt=0.1, tp=100.0):
    """Terminal Z1+Z2 for each requirement level; returns (best_u, evals)."""
    evals = []
    for u in u_values:
        _, (z1, z2, _, _) = simulate_flat(dt=dt, tp=tp, u_req=u, record_every=10**9)
        evals.append((u, z1 + z2))
    best_u, best_v = evals[0]
    for u, v in evals[1:]:
        if v > best_v:
            best_u, best_v = u, v
    return best_u, evals


if __name__ == "__main__":
    rows, (z1, z2, r, p) = simulate_flat()
    print(f"steps={len(rows) - 1} x100   t_end={rows[-1][0]}")
    print(f"Z1={z1!r}")
    print(f"Z2={z2!r}")
    print(f"Z ={z1 + z2!r}")
    print(f"r ={r!r}")
    print(f"P ={p!r}")
