"""Core state types and rate functions of the knowledge-chain model.

The model tracks a student's knowledge split into n categories of
increasing durability. During a lesson, effort F drives new knowledge
into category 1 at rate r*(1-S)*alpha_1*F*Z^b, each category leaks into
the next more durable one through the transfer coefficients alpha_i, and
every category forgets at its own rate gamma_i.  Workability r is an
algebraic function of the work P accumulated in the current lesson:

    r = r0 / (1 + exp(k1*(P - P0)))

so sustained work pushes r sigmoidally from its lesson-entry value r0
toward zero.  During a break nothing is learned, knowledge decays, and r
recovers exponentially toward a slowly sinking daily ceiling exp(-k4*t).

Everything here is a pure function over immutable value types; the
integration loop lives in `engine`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ModelParams",
    "SimState",
    "ConstantEffort",
    "RequirementEffort",
    "EffortSpec",
    "Lesson",
    "Break",
    "Segment",
    "effort",
    "workability",
    "lesson_derivatives",
    "break_derivatives",
    "total_knowledge",
    "strength_coefficient",
    "gamma_from_tau",
    "validate_params",
    "validate_initial_state",
]

# exp() overflows just above this; the sigmoid is identically 0 long before
_EXP_OVERFLOW = 709.0


@dataclass(frozen=True)
class ModelParams:
    """All rate constants of an n-category model.

    alpha[0] feeds category 1 from effort; alpha[i] for i >= 1 transfers
    category i into category i+1.  gamma must be strictly decreasing:
    higher categories hold more durable knowledge.
    """

    n: int
    alpha: tuple[float, ...]
    gamma: tuple[float, ...]
    b: float = 0.0
    k1: float = 0.03
    P0: float = 200.0
    k2: float = 0.2
    k3: float = 0.015
    k4: float = 2e-4

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))


@dataclass(frozen=True)
class SimState:
    """Instantaneous state: time, per-category knowledge, workability.

    r0_base is the workability the student entered the current lesson
    with; the fatigue sigmoid scales it down as work accumulates.  P is
    the work done in the current lesson (reset at every phase change).
    """

    t: float
    Z: tuple[float, ...]
    r: float
    r0_base: float
    P: float

    def __post_init__(self):
        object.__setattr__(self, "Z", tuple(float(z) for z in self.Z))


@dataclass(frozen=True)
class ConstantEffort:
    """Maximum-strain regime: the student works at fixed intensity F > 0."""

    F: float

    def __post_init__(self):
        if not self.F > 0:
            raise ValueError(f"ConstantEffort.F must be > 0, got {self.F}")


@dataclass(frozen=True)
class RequirementEffort:
    """Requirement-driven regime: effort is the gap max(U - Z, 0)."""

    U: float

    def __post_init__(self):
        if self.U < 0:
            raise ValueError(f"RequirementEffort.U must be >= 0, got {self.U}")


EffortSpec = ConstantEffort | RequirementEffort


@dataclass(frozen=True)
class Lesson:
    """A teaching segment with an effort regime and material complexity S.

    S in [0, 1): higher complexity slows learning by (1-S) and raises the
    work rate by (1+S).  S = 1 is rejected because it freezes learning.
    """

    duration: float
    effort: EffortSpec
    S: float = 0.0

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"Lesson.duration must be > 0, got {self.duration}")
        if not 0.0 <= self.S < 1.0:
            raise ValueError(f"Lesson.S must be in [0, 1), got {self.S}")


@dataclass(frozen=True)
class Break:
    """A rest segment: knowledge decays, workability recovers."""

    duration: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"Break.duration must be > 0, got {self.duration}")


Segment = Lesson | Break


def effort(spec: EffortSpec, z_total: float) -> float:
    """Instantaneous effort for a given total knowledge level.

    ConstantEffort ignores knowledge; RequirementEffort returns the
    requirement gap clamped at zero (an over-satisfied requirement
    produces no strain).
    """
    if z_total < 0:
        raise ValueError(f"z_total must be >= 0, got {z_total}")
    if isinstance(spec, ConstantEffort):
        return spec.F
    gap = spec.U - z_total
    return gap if gap > 0.0 else 0.0


def workability(r0_base: float, P: float, params: ModelParams) -> float:
    """Fatigue sigmoid r0 / (1 + exp(k1*(P - P0))).

    Exactly r0/2 at P = P0.  Saturates to 0.0 instead of overflowing for
    very large P.
    """
    x = params.k1 * (P - params.P0)
    if x > _EXP_OVERFLOW:
        return 0.0
    return r0_base / (1.0 + math.exp(x))


def total_knowledge(Z) -> float:
    """Sum over the knowledge categories."""
    if len(Z) == 0:
        raise ValueError("knowledge vector must have at least one category")
    total = 0.0
    for z in Z:
        total += z
    return total


def strength_coefficient(Z) -> float:
    """Durability-weighted share of knowledge, in [0, 1].

    Category i >= 2 contributes with weight 1/2^(n-i); the most durable
    category has weight 1 and the weakest contributes nothing.  By
    convention the single-category chain scores 1 and an empty student
    scores 0.
    """
    n = len(Z)
    if n == 0:
        raise ValueError("knowledge vector must have at least one category")
    if n == 1:
        return 1.0
    z_total = total_knowledge(Z)
    if z_total == 0.0:
        return 0.0
    num = 0.0
    for i in range(1, n):  # categories 2..n, zero-based index i
        num += Z[i] / 2.0 ** (n - 1 - i)
    return num / z_total


def gamma_from_tau(tau: float) -> float:
    """Forgetting rate from the characteristic retention time (gamma = 1/tau)."""
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    return 1.0 / tau


def _knowledge_power(z_total: float, b: float) -> float:
    # 0**0 == 1 so learning can start from an empty student when b == 0
    if b == 0.0:
        return 1.0
    return z_total**b


def _lesson_rates(
    Z, P: float, r0_base: float, spec: EffortSpec, S: float, p: ModelParams
) -> tuple[list[float], float]:
    """Raw lesson rates (dZ, dP) from unpacked state; hot-path helper."""
    z_total = 0.0
    for z in Z:
        z_total += z
    f = effort(spec, z_total)
    r = workability(r0_base, P, p)
    dP = p.k2 * (1.0 + S) * f if f > 0.0 else p.k2
    r1s = r * (1.0 - S)
    a = p.alpha
    g = p.gamma
    n = p.n
    inflow = a[0] * f * _knowledge_power(z_total, p.b)
    if n == 1:
        return [r1s * inflow - g[0] * Z[0]], dP
    dZ = [0.0] * n
    dZ[0] = r1s * (inflow - a[1] * Z[0]) - g[0] * Z[0]
    for i in range(1, n - 1):
        dZ[i] = r1s * (a[i] * Z[i - 1] - a[i + 1] * Z[i]) - g[i] * Z[i]
    dZ[n - 1] = r1s * a[n - 1] * Z[n - 2] - g[n - 1] * Z[n - 1]
    return dZ, dP


def _break_rates(Z, r: float, t: float, p: ModelParams) -> tuple[list[float], float]:
    """Raw break rates (dZ, dr); t is absolute time from day start."""
    dZ = [-g * z for g, z in zip(p.gamma, Z)]
    dr = p.k3 * (math.exp(-p.k4 * t) - r)
    return dZ, dr


def lesson_derivatives(
    state: SimState, effort_spec: EffortSpec, S: float, params: ModelParams
) -> tuple[tuple[float, ...], float]:
    """Right-hand side during a lesson: (dZ/dt per category, dP/dt).

    With F the current effort, r the fatigue-scaled workability and
    Zb = (sum Z)^b:

        dZ_1 = r*(1-S)*(alpha_1*F*Zb - alpha_2*Z_1) - gamma_1*Z_1
        dZ_i = r*(1-S)*(alpha_i*Z_{i-1} - alpha_{i+1}*Z_i) - gamma_i*Z_i
        dZ_n = r*(1-S)*alpha_n*Z_{n-1} - gamma_n*Z_n
        dP   = k2*(1+S)*F          (or plain k2 once the effort gap closes)

    For n = 1 the single equation keeps only the inflow and forgetting
    terms.  Forgetting stays active during lessons.
    """
    if not 0.0 <= S < 1.0:
        raise ValueError(f"S must be in [0, 1), got {S}")
    dZ, dP = _lesson_rates(state.Z, state.P, state.r0_base, effort_spec, S, params)
    return tuple(dZ), dP


def break_derivatives(
    state: SimState, params: ModelParams
) -> tuple[tuple[float, ...], float]:
    """Right-hand side during a break: (dZ/dt per category, dr/dt).

    Knowledge decays as -gamma_i*Z_i; workability relaxes toward the
    daily ceiling exp(-k4*t) at rate k3, with t the absolute time from
    day start.
    """
    dZ, dr = _break_rates(state.Z, state.r, state.t, params)
    return tuple(dZ), dr


def validate_params(params: ModelParams, path: str = "params") -> list[str]:
    """Diagnostics for every violated parameter invariant (empty = valid)."""
    diags: list[str] = []
    if not isinstance(params.n, int) or params.n < 1:
        diags.append(f"{path}.n: must be an integer >= 1, got {params.n!r}")
        return diags
    if len(params.alpha) != params.n:
        diags.append(f"{path}.alpha: expected {params.n} entries, got {len(params.alpha)}")
    if len(params.gamma) != params.n:
        diags.append(f"{path}.gamma: expected {params.n} entries, got {len(params.gamma)}")
    for i, a in enumerate(params.alpha):
        if not a > 0:
            diags.append(f"{path}.alpha[{i}]: must be > 0, got {a}")
    for i, g in enumerate(params.gamma):
        if not g > 0:
            diags.append(f"{path}.gamma[{i}]: must be > 0, got {g}")
    for i in range(len(params.gamma) - 1):
        if not params.gamma[i] > params.gamma[i + 1]:
            diags.append(
                f"{path}.gamma: must be strictly decreasing "
                f"(gamma[{i + 1}]={params.gamma[i + 1]} >= gamma[{i}]={params.gamma[i]})"
            )
    if not 0.0 <= params.b <= 1.0:
        diags.append(f"{path}.b: must be in [0, 1], got {params.b}")
    for name in ("k1", "k2", "k3", "P0"):
        value = getattr(params, name)
        if not value > 0:
            diags.append(f"{path}.{name}: must be > 0, got {value}")
    if params.k4 < 0:
        diags.append(f"{path}.k4: must be >= 0, got {params.k4}")
    return diags


def validate_initial_state(
    state: SimState, params: ModelParams, path: str = "initial"
) -> list[str]:
    """Diagnostics for an initial simulation state (t=0, P=0, r=r0)."""
    diags: list[str] = []
    if len(state.Z) != params.n:
        diags.append(f"{path}.Z: expected {params.n} entries, got {len(state.Z)}")
    for i, z in enumerate(state.Z):
        if z < 0:
            diags.append(f"{path}.Z[{i}]: must be >= 0, got {z}")
    if not 0.0 < state.r0_base <= 1.0:
        diags.append(f"{path}.r0: must be in (0, 1], got {state.r0_base}")
    if state.r != state.r0_base:
        diags.append(f"{path}.r: must equal r0 at the start of a run, got {state.r}")
    if state.P != 0.0:
        diags.append(f"{path}.P: must be 0 at the start of a run, got {state.P}")
    if state.t != 0.0:
        diags.append(f"{path}.t: must be 0 at the start of a run, got {state.t}")
    return diags
