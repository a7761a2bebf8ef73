"""JSON config documents: parsing with path-qualified diagnostics, serialization.

The document maps 1:1 onto SimConfig:

    {
      "params":   {"n": 2, "b": 0.0, "alpha": [...], "gamma": [...],
                   "k1": ..., "P0": ..., "k2": ..., "k3": ..., "k4": ...},
      "schedule": [{"kind": "lesson", "duration": 300.0,
                    "effort": {"constant": 3.0}, "S": 0.0},
                   {"kind": "break", "duration": 100.0}, ...],
      "initial":  {"Z": [0.0, 0.0], "r0": 1.0},
      "dt": 0.01,
      "method": "euler",
      "record_stride": 100
    }

Unknown keys are rejected (with a nearest-match suggestion), every model
invariant is checked, and all violations are reported together.
"""

from __future__ import annotations

import difflib
import json

from .engine import ConfigError, SimConfig, validate_config
from .model import (
    Break,
    ConstantEffort,
    Lesson,
    ModelParams,
    RequirementEffort,
    SimState,
)
from .schedule import Schedule

__all__ = ["parse_config", "serialize_config"]

_PARAM_KEYS = ("n", "b", "alpha", "gamma", "k1", "P0", "k2", "k3", "k4")
_TOP_KEYS = ("params", "schedule", "initial", "dt", "method", "record_stride")


def _check_keys(obj: dict, allowed, path: str, diags: list[str]) -> None:
    for key in obj:
        if key not in allowed:
            msg = f"{path}.{key}: unknown key" if path else f"{key}: unknown key"
            hint = difflib.get_close_matches(key, allowed, n=1, cutoff=0.5)
            if hint:
                msg += f" (did you mean {hint[0]!r}?)"
            diags.append(msg)


def _number(obj: dict, key: str, path: str, diags: list[str], default=None):
    label = f"{path}.{key}" if path else key
    if key not in obj:
        if default is not None:
            return default
        diags.append(f"{label}: missing required key")
        return None
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        diags.append(f"{label}: expected a number, got {type(value).__name__}")
        return None
    return float(value)


def _vector(obj: dict, key: str, path: str, diags: list[str]):
    if key not in obj:
        diags.append(f"{path}.{key}: missing required key")
        return None
    value = obj[key]
    if not isinstance(value, list) or any(
        isinstance(v, bool) or not isinstance(v, (int, float)) for v in value
    ):
        diags.append(f"{path}.{key}: expected a list of numbers")
        return None
    return tuple(float(v) for v in value)


def _parse_effort(obj, path: str, diags: list[str]):
    if not isinstance(obj, dict):
        diags.append(f"{path}: expected an object with 'constant' or 'requirement'")
        return None
    _check_keys(obj, ("constant", "requirement"), path, diags)
    has_c, has_r = "constant" in obj, "requirement" in obj
    if has_c == has_r:
        diags.append(f"{path}: exactly one of 'constant' or 'requirement' required")
        return None
    key = "constant" if has_c else "requirement"
    value = _number(obj, key, path, diags)
    if value is None:
        return None
    try:
        return ConstantEffort(value) if has_c else RequirementEffort(value)
    except ValueError as e:
        diags.append(f"{path}: {e}")
        return None


def _parse_segment(obj, path: str, diags: list[str]):
    if not isinstance(obj, dict):
        diags.append(f"{path}: expected an object")
        return None
    kind = obj.get("kind")
    if kind == "break":
        _check_keys(obj, ("kind", "duration"), path, diags)
        duration = _number(obj, "duration", path, diags)
        if duration is None:
            return None
        try:
            return Break(duration=duration)
        except ValueError as e:
            diags.append(f"{path}: {e}")
            return None
    if kind == "lesson":
        _check_keys(obj, ("kind", "duration", "effort", "S"), path, diags)
        duration = _number(obj, "duration", path, diags)
        s = _number(obj, "S", path, diags, default=0.0)
        if "effort" not in obj:
            diags.append(f"{path}.effort: missing required key")
            return None
        effort = _parse_effort(obj["effort"], f"{path}.effort", diags)
        if duration is None or s is None or effort is None:
            return None
        try:
            return Lesson(duration=duration, effort=effort, S=s)
        except ValueError as e:
            diags.append(f"{path}: {e}")
            return None
    diags.append(f"{path}.kind: expected 'lesson' or 'break', got {kind!r}")
    return None


def parse_config(text: str) -> SimConfig:
    """Parse and fully validate a config document.

    Raises ConfigError carrying one diagnostic per problem; syntax errors
    are reported with line and column.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}"])
    if not isinstance(doc, dict):
        raise ConfigError(["top level: expected an object"])

    diags: list[str] = []
    _check_keys(doc, _TOP_KEYS, "", diags)

    params = None
    pobj = doc.get("params")
    if not isinstance(pobj, dict):
        diags.append("params: missing or not an object")
    else:
        _check_keys(pobj, _PARAM_KEYS, "params", diags)
        n = pobj.get("n")
        if isinstance(n, bool) or not isinstance(n, int):
            diags.append(f"params.n: expected an integer, got {n!r}")
            n = None
        alpha = _vector(pobj, "alpha", "params", diags)
        gamma = _vector(pobj, "gamma", "params", diags)
        scalars = {
            key: _number(pobj, key, "params", diags)
            for key in ("b", "k1", "P0", "k2", "k3", "k4")
        }
        if n is not None and alpha is not None and gamma is not None and None not in scalars.values():
            params = ModelParams(n=n, alpha=alpha, gamma=gamma, **scalars)

    segments = []
    sobj = doc.get("schedule")
    if not isinstance(sobj, list):
        diags.append("schedule: missing or not a list")
    else:
        for i, item in enumerate(sobj):
            seg = _parse_segment(item, f"schedule[{i}]", diags)
            if seg is not None:
                segments.append(seg)

    initial = None
    iobj = doc.get("initial")
    if not isinstance(iobj, dict):
        diags.append("initial: missing or not an object")
    else:
        _check_keys(iobj, ("Z", "r0"), "initial", diags)
        z0 = _vector(iobj, "Z", "initial", diags)
        r0 = _number(iobj, "r0", "initial", diags)
        if z0 is not None and r0 is not None:
            initial = SimState(t=0.0, Z=z0, r=r0, r0_base=r0, P=0.0)

    dt = _number(doc, "dt", "", diags)
    method = doc.get("method", "euler")
    if not isinstance(method, str):
        diags.append(f"method: expected a string, got {type(method).__name__}")
        method = "euler"
    stride = doc.get("record_stride", 1)
    if isinstance(stride, bool) or not isinstance(stride, int):
        diags.append(f"record_stride: expected an integer, got {stride!r}")
        stride = 1

    if diags or params is None or initial is None or dt is None:
        raise ConfigError(diags or ["config: incomplete document"])

    config = SimConfig(
        params=params,
        schedule=Schedule(tuple(segments)),
        initial=initial,
        dt=dt,
        method=method,  # type: ignore[arg-type]
        record_stride=stride,
    )
    semantic = validate_config(config)
    if semantic:
        raise ConfigError(semantic)
    return config


def _effort_doc(spec) -> dict:
    if isinstance(spec, ConstantEffort):
        return {"constant": spec.F}
    return {"requirement": spec.U}


def serialize_config(config: SimConfig) -> str:
    """Canonical JSON for a SimConfig; parse_config(serialize_config(c)) == c."""
    p = config.params
    doc = {
        "params": {
            "n": p.n,
            "b": p.b,
            "alpha": list(p.alpha),
            "gamma": list(p.gamma),
            "k1": p.k1,
            "P0": p.P0,
            "k2": p.k2,
            "k3": p.k3,
            "k4": p.k4,
        },
        "schedule": [
            {
                "kind": "lesson",
                "duration": s.duration,
                "effort": _effort_doc(s.effort),
                "S": s.S,
            }
            if isinstance(s, Lesson)
            else {"kind": "break", "duration": s.duration}
            for s in config.schedule.segments
        ],
        "initial": {"Z": list(config.initial.Z), "r0": config.initial.r0_base},
        "dt": config.dt,
        "method": config.method,
        "record_stride": config.record_stride,
    }
    return json.dumps(doc, indent=2) + "\n"
