"""Fixed-step integration of a model through a lesson/break schedule.

The run loop never splits a step across a segment boundary: every
segment duration is a validated integer multiple of dt, an instant at a
join belongs to the later segment, and phase-change side effects (work
reset, workability rebase) are applied exactly at the joins.

The Euler update order inside a lesson is: advance the work P, refresh
workability r from the new P, then advance the knowledge vector from
pre-step values.  RK4 is the classical 4-stage scheme on (Z, P) during
lessons (r algebraic in P) and on (Z, r) during breaks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .model import (
    Break,
    ConstantEffort,
    Lesson,
    ModelParams,
    Segment,
    SimState,
    _break_rates,
    _lesson_rates,
    effort,
    strength_coefficient,
    validate_initial_state,
    validate_params,
    workability,
)
from .schedule import Schedule, validate_schedule

__all__ = [
    "SimConfig",
    "Trajectory",
    "ConfigError",
    "step",
    "apply_transition",
    "run",
    "validate_config",
]

Method = Literal["euler", "rk4"]


class ConfigError(ValueError):
    """Invalid simulation configuration; carries one line per violation."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class SimConfig:
    """Everything needed for a reproducible run."""

    params: ModelParams
    schedule: Schedule
    initial: SimState
    dt: float
    method: Method = "euler"
    record_stride: int = 1


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded time series of a run, column-oriented.

    Rows are kept at every `record_stride`-th step plus the initial and
    final instants.  A row at a segment join shows the state produced by
    the segment that just ended, before any phase-change reset; its
    `segment` tag names that segment.  F and Pr are derived per row from
    the row's own state.
    """

    t: np.ndarray
    Z: np.ndarray  # shape (rows, n)
    z_total: np.ndarray
    r: np.ndarray
    P: np.ndarray
    F: np.ndarray
    Pr: np.ndarray
    segment: np.ndarray
    config: SimConfig

    @property
    def n_rows(self) -> int:
        return len(self.t)

    def channel_names(self) -> list[str]:
        n = self.config.params.n
        return ["t"] + [f"Z{i + 1}" for i in range(n)] + ["Z", "r", "P", "F", "Pr", "segment"]

    def channel(self, name: str) -> np.ndarray:
        """Column by name: t, Z1..Zn, Z (total), r, P, F, Pr, segment."""
        fixed = {
            "t": self.t,
            "Z": self.z_total,
            "r": self.r,
            "P": self.P,
            "F": self.F,
            "Pr": self.Pr,
            "segment": self.segment,
        }
        if name in fixed:
            return fixed[name]
        if name.startswith("Z") and name[1:].isdigit():
            i = int(name[1:])
            if 1 <= i <= self.Z.shape[1]:
                return self.Z[:, i - 1]
        raise ValueError(f"unknown channel {name!r}")

    def lesson_row_mask(self) -> np.ndarray:
        """True for rows tagged with a lesson segment."""
        segs = self.config.schedule.segments
        return np.array([isinstance(segs[i], Lesson) for i in self.segment])


def validate_config(config: SimConfig) -> list[str]:
    """Diagnostics for every violated config invariant (empty = valid)."""
    diags = validate_params(config.params)
    if not config.dt > 0:
        diags.append(f"dt: must be > 0, got {config.dt}")
    if config.method not in ("euler", "rk4"):
        diags.append(f"method: must be 'euler' or 'rk4', got {config.method!r}")
    if not isinstance(config.record_stride, int) or config.record_stride < 1:
        diags.append(f"record_stride: must be an integer >= 1, got {config.record_stride!r}")
    if config.dt > 0:
        diags.extend(validate_schedule(config.schedule, config.dt))
    elif len(config.schedule.segments) == 0:
        diags.append("schedule: must contain at least one segment")
    diags.extend(validate_initial_state(config.initial, config.params))
    if (
        not diags
        and config.params.b > 0
        and sum(config.initial.Z) == 0.0
        and any(isinstance(s, Lesson) for s in config.schedule.segments)
    ):
        warnings.warn(
            "b > 0 with zero initial knowledge: the learning inflow is "
            "identically zero and the run will only decay",
            stacklevel=2,
        )
    return diags


def _euler_lesson(Z, P, r0b, lesson, p, dt, m, k0, rec):
    """Advance m Euler steps inside one lesson; mutates Z, returns (P, r)."""
    exp = math.exp
    const = isinstance(lesson.effort, ConstantEffort)
    val = lesson.effort.F if const else lesson.effort.U
    s = lesson.S
    one_m_s = 1.0 - s
    k2_1s = p.k2 * (1.0 + s)
    k1_, P0_, k2_, b = p.k1, p.P0, p.k2, p.b
    alpha, gamma, n = p.alpha, p.gamma, p.n
    r = 0.0
    for i in range(m):
        zt = 0.0
        for z in Z:
            zt += z
        if const:
            f = val
        else:
            f = val - zt
            if f < 0.0:
                f = 0.0
        P = P + (k2_1s * f if f > 0.0 else k2_) * dt
        x = k1_ * (P - P0_)
        r = 0.0 if x > 709.0 else r0b / (1.0 + exp(x))
        r1s = r * one_m_s
        inflow = alpha[0] * f * (1.0 if b == 0.0 else zt**b)
        if n == 1:
            Z[0] = Z[0] + (r1s * inflow - gamma[0] * Z[0]) * dt
        else:
            d0 = r1s * (inflow - alpha[1] * Z[0]) - gamma[0] * Z[0]
            dlast = r1s * alpha[n - 1] * Z[n - 2] - gamma[n - 1] * Z[n - 1]
            if n == 2:
                Z[0] = Z[0] + d0 * dt
                Z[1] = Z[1] + dlast * dt
            else:
                mid = [
                    r1s * (alpha[j] * Z[j - 1] - alpha[j + 1] * Z[j]) - gamma[j] * Z[j]
                    for j in range(1, n - 1)
                ]
                Z[0] = Z[0] + d0 * dt
                for j in range(1, n - 1):
                    Z[j] = Z[j] + mid[j - 1] * dt
                Z[n - 1] = Z[n - 1] + dlast * dt
        if rec is not None:
            rec(k0 + i + 1, Z, r, P)
    return P, r


def _euler_break(Z, r, p, dt, m, k0, rec):
    """Advance m Euler steps inside one break; mutates Z, returns r."""
    exp = math.exp
    gamma, n = p.gamma, p.n
    k3_, k4_ = p.k3, p.k4
    for i in range(m):
        t = (k0 + i) * dt
        r = r + (k3_ * (exp(-k4_ * t) - r)) * dt
        for j in range(n):
            Z[j] = Z[j] + (-(gamma[j] * Z[j])) * dt
        if rec is not None:
            rec(k0 + i + 1, Z, r, 0.0)
    return r


def _rk4_lesson(Z, P, r0b, lesson, p, dt, m, k0, rec):
    """Classical RK4 on (Z, P); r is the fatigue sigmoid of the stage P."""
    spec, s = lesson.effort, lesson.S
    n = p.n
    h2, h6 = dt / 2.0, dt / 6.0
    for i in range(m):
        dZ1, dP1 = _lesson_rates(Z, P, r0b, spec, s, p)
        y2 = [Z[j] + h2 * dZ1[j] for j in range(n)]
        dZ2, dP2 = _lesson_rates(y2, P + h2 * dP1, r0b, spec, s, p)
        y3 = [Z[j] + h2 * dZ2[j] for j in range(n)]
        dZ3, dP3 = _lesson_rates(y3, P + h2 * dP2, r0b, spec, s, p)
        y4 = [Z[j] + dt * dZ3[j] for j in range(n)]
        dZ4, dP4 = _lesson_rates(y4, P + dt * dP3, r0b, spec, s, p)
        for j in range(n):
            Z[j] = Z[j] + h6 * (dZ1[j] + 2.0 * (dZ2[j] + dZ3[j]) + dZ4[j])
        P = P + h6 * (dP1 + 2.0 * (dP2 + dP3) + dP4)
        if rec is not None:
            rec(k0 + i + 1, Z, workability(r0b, P, p), P)
    return P, workability(r0b, P, p)


def _rk4_break(Z, r, p, dt, m, k0, rec):
    """Classical RK4 on (Z, r); the recovery ceiling depends on stage time."""
    n = p.n
    h2, h6 = dt / 2.0, dt / 6.0
    for i in range(m):
        t = (k0 + i) * dt
        dZ1, dr1 = _break_rates(Z, r, t, p)
        y2 = [Z[j] + h2 * dZ1[j] for j in range(n)]
        dZ2, dr2 = _break_rates(y2, r + h2 * dr1, t + h2, p)
        y3 = [Z[j] + h2 * dZ2[j] for j in range(n)]
        dZ3, dr3 = _break_rates(y3, r + h2 * dr2, t + h2, p)
        y4 = [Z[j] + dt * dZ3[j] for j in range(n)]
        dZ4, dr4 = _break_rates(y4, r + dt * dr3, t + dt, p)
        for j in range(n):
            Z[j] = Z[j] + h6 * (dZ1[j] + 2.0 * (dZ2[j] + dZ3[j]) + dZ4[j])
        r = r + h6 * (dr1 + 2.0 * (dr2 + dr3) + dr4)
        if rec is not None:
            rec(k0 + i + 1, Z, r, 0.0)
    return r


def step(
    state: SimState,
    segment: Segment,
    dt: float,
    params: ModelParams,
    method: Method = "euler",
) -> SimState:
    """One integration step wholly inside the given segment.

    Applies no phase-change side effects; see `apply_transition`.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if method not in ("euler", "rk4"):
        raise ValueError(f"method must be 'euler' or 'rk4', got {method!r}")
    Z = list(state.Z)
    if isinstance(segment, Lesson):
        advance = _euler_lesson if method == "euler" else _rk4_lesson
        P, r = advance(Z, state.P, state.r0_base, segment, params, dt, 1, 0, None)
        return SimState(t=state.t + dt, Z=tuple(Z), r=r, r0_base=state.r0_base, P=P)
    r = _step_break(Z, state, params, dt, method)
    return SimState(t=state.t + dt, Z=tuple(Z), r=r, r0_base=state.r0_base, P=state.P)


def _step_break(Z, state, params, dt, method):
    # same update as the break kernels, but driven by state.t directly
    if method == "euler":
        t = state.t
        r = state.r + (params.k3 * (math.exp(-params.k4 * t) - state.r)) * dt
        for j in range(params.n):
            Z[j] = Z[j] + (-(params.gamma[j] * Z[j])) * dt
        return r
    h2, h6 = dt / 2.0, dt / 6.0
    t, r, n = state.t, state.r, params.n
    dZ1, dr1 = _break_rates(Z, r, t, params)
    y2 = [Z[j] + h2 * dZ1[j] for j in range(n)]
    dZ2, dr2 = _break_rates(y2, r + h2 * dr1, t + h2, params)
    y3 = [Z[j] + h2 * dZ2[j] for j in range(n)]
    dZ3, dr3 = _break_rates(y3, r + h2 * dr2, t + h2, params)
    y4 = [Z[j] + dt * dZ3[j] for j in range(n)]
    dZ4, dr4 = _break_rates(y4, r + dt * dr3, t + dt, params)
    for j in range(n):
        Z[j] = Z[j] + h6 * (dZ1[j] + 2.0 * (dZ2[j] + dZ3[j]) + dZ4[j])
    return r + h6 * (dr1 + 2.0 * (dr2 + dr3) + dr4)


def apply_transition(state: SimState, frm: Segment, to: Segment) -> SimState:
    """Phase-change side effects at a segment join.

    Entering a break zeroes the accumulated work; entering a lesson from
    a break additionally rebases the fatigue sigmoid on the recovered
    workability.  A lesson directly following a lesson is a continuation.
    """
    if isinstance(to, Break):
        return replace(state, P=0.0)
    if isinstance(frm, Break):
        return replace(state, r0_base=state.r, P=0.0)
    return state


def run(config: SimConfig) -> Trajectory:
    """Integrate the full schedule; deterministic for identical configs."""
    diags = validate_config(config)
    if diags:
        raise ConfigError(diags)

    p = config.params
    dt = config.dt
    n = p.n
    segments = config.schedule.segments
    steps_per = [round(seg.duration / dt) for seg in segments]
    total_steps = sum(steps_per)
    stride = config.record_stride

    n_rows = 1 + total_steps // stride + (1 if total_steps % stride else 0)
    t_col = np.empty(n_rows)
    Z_col = np.empty((n_rows, n))
    zt_col = np.empty(n_rows)
    r_col = np.empty(n_rows)
    P_col = np.empty(n_rows)
    F_col = np.empty(n_rows)
    Pr_col = np.empty(n_rows)
    seg_col = np.empty(n_rows, dtype=np.int64)

    Z = list(config.initial.Z)
    P = config.initial.P
    r = config.initial.r
    r0b = config.initial.r0_base

    row = 0
    current_seg = 0

    def rec(kg: int, Zk, rk: float, Pk: float) -> None:
        nonlocal row
        if kg % stride and kg != total_steps:
            return
        t_col[row] = kg * dt
        zt = 0.0
        for j in range(n):
            Z_col[row, j] = Zk[j]
            zt += Zk[j]
        zt_col[row] = zt
        r_col[row] = rk
        P_col[row] = Pk
        seg = segments[current_seg]
        F_col[row] = effort(seg.effort, zt) if isinstance(seg, Lesson) else 0.0
        Pr_col[row] = strength_coefficient(Zk)
        seg_col[row] = current_seg
        row += 1

    rec(0, Z, r, P)
    k0 = 0
    euler = config.method == "euler"
    for j, seg in enumerate(segments):
        if j > 0:
            prev = segments[j - 1]
            if isinstance(seg, Break):
                P = 0.0
            elif isinstance(prev, Break):
                r0b = r
                P = 0.0
        current_seg = j
        m = steps_per[j]
        if isinstance(seg, Lesson):
            advance = _euler_lesson if euler else _rk4_lesson
            P, r = advance(Z, P, r0b, seg, p, dt, m, k0, rec)
        else:
            advance = _euler_break if euler else _rk4_break
            r = advance(Z, r, p, dt, m, k0, rec)
        k0 += m

    assert row == n_rows
    return Trajectory(
        t=t_col,
        Z=Z_col,
        z_total=zt_col,
        r=r_col,
        P=P_col,
        F=F_col,
        Pr=Pr_col,
        segment=seg_col,
        config=config,
    )
