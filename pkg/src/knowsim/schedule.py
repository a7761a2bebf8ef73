"""Lesson/break timelines and the standard school-day builder."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

from .model import Break, EffortSpec, Lesson, Segment

__all__ = ["Schedule", "uniform_day", "segment_at", "validate_schedule"]


@dataclass(frozen=True)
class Schedule:
    """An ordered, gap-free sequence of lessons and breaks.

    Immutable after construction.  Emptiness and dt-compatibility are
    reported by `validate_schedule` rather than raised here, so invalid
    candidates can be inspected.
    """

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def total_duration(self) -> float:
        return sum(s.duration for s in self.segments)

    def starts(self) -> list[float]:
        """Cumulative start time of each segment."""
        starts = [0.0]
        for seg in self.segments[:-1]:
            starts.append(starts[-1] + seg.duration)
        return starts


def uniform_day(
    n_lessons: int,
    Tu: float,
    Tp: float,
    efforts: Sequence[EffortSpec],
    complexities: Sequence[float],
) -> Schedule:
    """A day of n equal-length lessons separated by equal-length breaks.

    Produces 2n-1 segments (no trailing break after the last lesson);
    append a Break explicitly for an after-hours tail.
    """
    if n_lessons < 1:
        raise ValueError(f"n_lessons must be >= 1, got {n_lessons}")
    if not Tu > 0 or not Tp > 0:
        raise ValueError(f"Tu and Tp must be > 0, got Tu={Tu}, Tp={Tp}")
    if len(efforts) != n_lessons:
        raise ValueError(f"expected {n_lessons} efforts, got {len(efforts)}")
    if len(complexities) != n_lessons:
        raise ValueError(f"expected {n_lessons} complexities, got {len(complexities)}")
    segments: list[Segment] = []
    for i in range(n_lessons):
        if i > 0:
            segments.append(Break(duration=Tp))
        segments.append(Lesson(duration=Tu, effort=efforts[i], S=complexities[i]))
    return Schedule(tuple(segments))


def segment_at(schedule: Schedule, t: float) -> tuple[int, float]:
    """Segment index containing time t and the offset into that segment.

    Instants at segment joins belong to the later segment, so every
    dt-step of a validated run lies wholly inside one segment.
    """
    total = schedule.total_duration
    if not 0.0 <= t < total:
        raise ValueError(f"t={t} outside [0, {total})")
    starts = schedule.starts()
    index = bisect.bisect_right(starts, t) - 1
    return index, t - starts[index]


def validate_schedule(schedule: Schedule, dt: float) -> list[str]:
    """Diagnostics for schedule invariants at a given step size (empty = valid).

    Each duration must be a positive integer multiple of dt (to 1e-9
    relative), so the integrator never has to split a step across a
    segment boundary.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    diags: list[str] = []
    if len(schedule.segments) == 0:
        diags.append("schedule: must contain at least one segment")
    for i, seg in enumerate(schedule.segments):
        if not seg.duration > 0:
            diags.append(f"schedule[{i}].duration: must be > 0, got {seg.duration}")
            continue
        steps = seg.duration / dt
        if abs(steps - round(steps)) > 1e-9 * steps:
            diags.append(
                f"schedule[{i}].duration: {seg.duration} is not an integer "
                f"multiple of dt={dt}"
            )
    return diags
