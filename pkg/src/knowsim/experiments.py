"""Canned studies: the built-in reference day, sweeps, and the requirement optimizer."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from .engine import SimConfig, Trajectory, run, validate_config
from .model import (
    Break,
    ConstantEffort,
    Lesson,
    ModelParams,
    RequirementEffort,
    SimState,
)
from .schedule import Schedule, uniform_day

__all__ = [
    "ScenarioMetrics",
    "StudyResult",
    "pr1_config",
    "replicate_pr1",
    "break_length_study",
    "parameter_sweep",
    "optimize_constant_u",
    "set_param",
    "PARAM_PATHS",
]


@dataclass(frozen=True)
class ScenarioMetrics:
    """Terminal metrics of one scenario, or a diagnostic if it was rejected."""

    label: str
    z_total: float = float("nan")
    pr: float = float("nan")
    mean_lesson_r: float = float("nan")
    trajectory: Trajectory | None = None
    error: str | None = None


@dataclass(frozen=True)
class StudyResult:
    """Per-scenario metrics in input order."""

    label: str
    scenarios: tuple[ScenarioMetrics, ...]


def _metrics(label: str, traj: Trajectory, keep: bool) -> ScenarioMetrics:
    mask = traj.lesson_row_mask()
    return ScenarioMetrics(
        label=label,
        z_total=float(traj.z_total[-1]),
        pr=float(traj.Pr[-1]),
        mean_lesson_r=float(np.mean(traj.r[mask])),
        trajectory=traj if keep else None,
    )


def pr1_config() -> SimConfig:
    """The built-in two-category reference day (scenario id "pr1").

    Five 300-unit lessons at constant strain F=3 with complexities
    [0, 0, 0.2, 0.3, 0.4], separated by 100-unit breaks; explicit Euler
    at dt=0.01, recording every 100th step.
    """
    params = ModelParams(
        n=2,
        alpha=(0.06, 0.002),
        gamma=(0.001, 5e-5),
        b=0.0,
        k1=0.03,
        P0=200.0,
        k2=0.2,
        k3=0.015,
        k4=2e-4,
    )
    schedule = uniform_day(
        5,
        300.0,
        100.0,
        [ConstantEffort(3.0)] * 5,
        [0.0, 0.0, 0.2, 0.3, 0.4],
    )
    initial = SimState(t=0.0, Z=(0.0, 0.0), r=1.0, r0_base=1.0, P=0.0)
    return SimConfig(
        params=params,
        schedule=schedule,
        initial=initial,
        dt=0.01,
        method="euler",
        record_stride=100,
    )


def replicate_pr1() -> Trajectory:
    """Run the built-in reference day."""
    return run(pr1_config())


def _uniform_day_shape(schedule: Schedule):
    """Decompose an alternating lesson/break schedule built by uniform_day."""
    lessons = [s for s in schedule.segments if isinstance(s, Lesson)]
    if not lessons:
        raise ValueError("base schedule has no lessons")
    expected = uniform_day(
        len(lessons),
        lessons[0].duration,
        next(
            (s.duration for s in schedule.segments if isinstance(s, Break)),
            lessons[0].duration,
        ),
        [l.effort for l in lessons],
        [l.S for l in lessons],
    )
    if len(expected.segments) != len(schedule.segments) or any(
        a != b for a, b in zip(expected.segments, schedule.segments)
    ):
        raise ValueError("base schedule is not a uniform lesson/break day")
    return len(lessons), lessons[0].duration, [l.effort for l in lessons], [l.S for l in lessons]


def break_length_study(
    base: SimConfig, tp_values: Sequence[float], keep_trajectories: bool = False
) -> StudyResult:
    """Rerun the base day with each break length; report terminal metrics.

    The base schedule must be a uniform day.  Shorter breaks leave less
    time to recover workability, so training results degrade.
    """
    n_lessons, tu, efforts, complexities = _uniform_day_shape(base.schedule)
    scenarios = []
    for tp in tp_values:
        label = f"Tp={tp:g}"
        if not tp > 0:
            scenarios.append(ScenarioMetrics(label=label, error=f"Tp must be > 0, got {tp}"))
            continue
        if n_lessons == 1:
            schedule = base.schedule
        else:
            schedule = uniform_day(n_lessons, tu, float(tp), efforts, complexities)
        config = replace(base, schedule=schedule)
        diags = validate_config(config)
        if diags:
            scenarios.append(ScenarioMetrics(label=label, error="; ".join(diags)))
            continue
        scenarios.append(_metrics(label, run(config), keep_trajectories))
    return StudyResult(label="break_length", scenarios=tuple(scenarios))


# scalar parameter paths accepted by parameter_sweep and the CLI;
# alpha<i>/gamma<i> address vector components 1-based
PARAM_PATHS = ("b", "k1", "P0", "k2", "k3", "k4", "dt")


def set_param(config: SimConfig, path: str, value: float) -> SimConfig:
    """New config with one scalar field replaced; raises on unknown path."""
    if path == "dt":
        return replace(config, dt=float(value))
    p = config.params
    if path in ("b", "k1", "P0", "k2", "k3", "k4"):
        return replace(config, params=replace(p, **{path: float(value)}))
    for vec in ("alpha", "gamma"):
        if path.startswith(vec):
            suffix = path[len(vec) :]
            if suffix.isdigit() and 1 <= int(suffix) <= p.n:
                i = int(suffix) - 1
                values = list(getattr(p, vec))
                values[i] = float(value)
                return replace(config, params=replace(p, **{vec: tuple(values)}))
    raise ValueError(
        f"unknown parameter path {path!r}; expected one of {', '.join(PARAM_PATHS)}, "
        f"alpha1..alpha{p.n} or gamma1..gamma{p.n}"
    )


def parameter_sweep(
    base: SimConfig,
    param_path: str,
    values: Sequence[float],
    keep_trajectories: bool = False,
) -> StudyResult:
    """One run per value of a single scalar parameter, base otherwise fixed.

    Values that break a model invariant (for example a gamma ordering
    violation) yield a diagnostic row instead of aborting the sweep.
    """
    set_param(base, param_path, 1.0)  # unknown paths rejected up front
    scenarios = []
    for value in values:
        label = f"{param_path}={value:g}"
        config = set_param(base, param_path, value)
        diags = validate_config(config)
        if diags:
            scenarios.append(ScenarioMetrics(label=label, error="; ".join(diags)))
            continue
        scenarios.append(_metrics(label, run(config), keep_trajectories))
    return StudyResult(label=f"sweep:{param_path}", scenarios=tuple(scenarios))


Objective = Literal["z", "pr"]


def _with_requirement(base: SimConfig, u: float) -> SimConfig:
    segments = tuple(
        replace(s, effort=RequirementEffort(u)) if isinstance(s, Lesson) else s
        for s in base.schedule.segments
    )
    return replace(base, schedule=Schedule(segments))


def optimize_constant_u(
    base: SimConfig,
    u_min: float,
    u_max: float,
    grid: int,
    objective: Objective = "z",
) -> tuple[float, float]:
    """Grid search for the requirement level maximizing a terminal metric.

    Every lesson is switched to requirement-driven effort at the candidate
    level U; the objective ("z" = terminal total knowledge, "pr" = terminal
    strength coefficient) is evaluated on `grid` uniformly spaced points
    including both endpoints.  Ties resolve to the smallest U.  The
    objective is cheap and can be non-smooth where the requirement gap
    closes, so no gradient structure is assumed.
    """
    if not 0 <= u_min < u_max:
        raise ValueError(f"need 0 <= u_min < u_max, got [{u_min}, {u_max}]")
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    if objective not in ("z", "pr"):
        raise ValueError(f"objective must be 'z' or 'pr', got {objective!r}")
    best_u = best_value = None
    for i in range(grid):
        u = u_max if i == grid - 1 else u_min + i * (u_max - u_min) / (grid - 1)
        traj = run(_with_requirement(base, u))
        value = float(traj.z_total[-1]) if objective == "z" else float(traj.Pr[-1])
        if best_value is None or value > best_value:
            best_u, best_value = u, value
    return best_u, best_value
