"""Strict JSON (de)serialization for equation files.

An equation file looks like::

    {"t0": 0,
     "neutral": [{"a": EXPR, "g": DELAY}],
     "delay":   [{"b": EXPR, "h": DELAY}],
     "kernel":  {"kind": "exponential", "c": 1.0, "d": 2.0, "h": DELAY},
     "history": {"phi": EXPR, "psi": EXPR},
     "forcing": EXPR}

with EXPR one of::

    {"kind": "constant",   "c": 0.3}
    {"kind": "sinusoid",   "c": 1, "amp": 0.5, "omega": 2, "phase": 0}
    {"kind": "piecewise",  "period": 2, "breaks": [0, 1], "values": [0.2, 0.4]}
    {"kind": "reciprocal", "c": 0.5}

and DELAY one of::

    {"kind": "lag",          "tau": 1}
    {"kind": "proportional", "lambda": 0.5}
    {"kind": "sinlag",       "tau": 1, "amp": 0.5, "omega": 1}

Kernels are ``exponential`` (``c * exp(-d (t-s))``) or ``uniform`` (``c``),
integrated over ``[t - lag, t]`` given by their ``h`` delay.  Unknown keys are
rejected with the offending path; parsing and dumping round-trip exactly.
"""

from __future__ import annotations

import json

from .equation import (
    ExponentialKernel,
    HistorySpec,
    NeutralEquation,
    Term,
    UniformKernel,
)
from .expressions import (
    Constant,
    ConstantLag,
    PiecewisePeriodic,
    Proportional,
    Reciprocal,
    Sinusoid,
    SinusoidLag,
)

__all__ = ["SpecError", "parse_equation", "load_equation", "dump_equation", "save_equation"]


class SpecError(ValueError):
    """Raised for malformed equation files; message carries the JSON path."""


def _fail(path, msg):
    raise SpecError(f"{path}: {msg}")


def _number(obj, path):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        _fail(path, f"expected a number, got {type(obj).__name__}")
    return float(obj)


def _mapping(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    for key in required:
        if key not in obj:
            _fail(path, f"missing required key {key!r}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            _fail(f"{path}.{key}", "unknown key")
    return obj


def _parse_expr(obj, path):
    if not isinstance(obj, dict) or "kind" not in obj:
        _fail(path, "expression must be an object with a 'kind' key")
    kind = obj["kind"]
    try:
        if kind == "constant":
            _mapping(obj, path, ("kind", "c"))
            return Constant(_number(obj["c"], f"{path}.c"))
        if kind == "sinusoid":
            _mapping(obj, path, ("kind", "c", "amp", "omega"), ("phase",))
            return Sinusoid(
                _number(obj["c"], f"{path}.c"),
                _number(obj["amp"], f"{path}.amp"),
                _number(obj["omega"], f"{path}.omega"),
                _number(obj.get("phase", 0.0), f"{path}.phase"),
            )
        if kind == "piecewise":
            _mapping(obj, path, ("kind", "period", "breaks", "values"))
            breaks = obj["breaks"]
            values = obj["values"]
            if not isinstance(breaks, list) or not isinstance(values, list):
                _fail(path, "'breaks' and 'values' must be arrays")
            return PiecewisePeriodic(
                _number(obj["period"], f"{path}.period"),
                tuple(_number(b, f"{path}.breaks[{i}]") for i, b in enumerate(breaks)),
                tuple(_number(v, f"{path}.values[{i}]") for i, v in enumerate(values)),
            )
        if kind == "reciprocal":
            _mapping(obj, path, ("kind", "c"))
            return Reciprocal(_number(obj["c"], f"{path}.c"))
    except SpecError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))
    _fail(f"{path}.kind", f"unknown expression kind {kind!r}")


def _parse_delay(obj, path):
    if not isinstance(obj, dict) or "kind" not in obj:
        _fail(path, "delay must be an object with a 'kind' key")
    kind = obj["kind"]
    try:
        if kind == "lag":
            _mapping(obj, path, ("kind", "tau"))
            return ConstantLag(_number(obj["tau"], f"{path}.tau"))
        if kind == "proportional":
            _mapping(obj, path, ("kind", "lambda"))
            return Proportional(_number(obj["lambda"], f"{path}.lambda"))
        if kind == "sinlag":
            _mapping(obj, path, ("kind", "tau", "amp", "omega"))
            return SinusoidLag(
                _number(obj["tau"], f"{path}.tau"),
                _number(obj["amp"], f"{path}.amp"),
                _number(obj["omega"], f"{path}.omega"),
            )
    except SpecError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))
    _fail(f"{path}.kind", f"unknown delay kind {kind!r}")


def _parse_kernel(obj, path):
    if not isinstance(obj, dict) or "kind" not in obj:
        _fail(path, "kernel must be an object with a 'kind' key")
    kind = obj["kind"]
    if kind == "exponential":
        _mapping(obj, path, ("kind", "c", "d", "h"))
        return ExponentialKernel(
            _number(obj["c"], f"{path}.c"),
            _number(obj["d"], f"{path}.d"),
            _parse_delay(obj["h"], f"{path}.h"),
        )
    if kind == "uniform":
        _mapping(obj, path, ("kind", "c", "h"))
        return UniformKernel(_number(obj["c"], f"{path}.c"), _parse_delay(obj["h"], f"{path}.h"))
    _fail(f"{path}.kind", f"unknown kernel kind {kind!r}")


def parse_equation(obj) -> NeutralEquation:
    """Build a :class:`NeutralEquation` from a decoded JSON object."""
    _mapping(obj, "$", (), ("t0", "neutral", "delay", "kernel", "history", "forcing"))
    t0 = _number(obj.get("t0", 0.0), "$.t0")

    def terms(key, coeff_key, delay_key):
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            _fail(f"$.{key}", "expected an array of terms")
        out = []
        for i, item in enumerate(raw):
            path = f"$.{key}[{i}]"
            _mapping(item, path, (coeff_key, delay_key))
            out.append(
                Term(
                    _parse_expr(item[coeff_key], f"{path}.{coeff_key}"),
                    _parse_delay(item[delay_key], f"{path}.{delay_key}"),
                )
            )
        return tuple(out)

    neutral = terms("neutral", "a", "g")
    delay = terms("delay", "b", "h")
    kernel = _parse_kernel(obj["kernel"], "$.kernel") if "kernel" in obj else None

    history = HistorySpec()
    if "history" in obj:
        h = _mapping(obj["history"], "$.history", (), ("phi", "psi"))
        history = HistorySpec(
            phi=_parse_expr(h["phi"], "$.history.phi") if "phi" in h else Constant(1.0),
            psi=_parse_expr(h["psi"], "$.history.psi") if "psi" in h else Constant(0.0),
        )

    forcing = _parse_expr(obj["forcing"], "$.forcing") if "forcing" in obj else None
    return NeutralEquation(
        t0=t0, neutral=neutral, delay=delay, kernel=kernel, history=history, forcing=forcing
    )


def load_equation(path) -> NeutralEquation:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: not valid JSON ({exc})") from exc
    return parse_equation(obj)


def _dump_expr(expr):
    if isinstance(expr, Constant):
        return {"kind": "constant", "c": expr.c}
    if isinstance(expr, Sinusoid):
        return {
            "kind": "sinusoid",
            "c": expr.c,
            "amp": expr.amp,
            "omega": expr.omega,
            "phase": expr.phase,
        }
    if isinstance(expr, PiecewisePeriodic):
        return {
            "kind": "piecewise",
            "period": expr.period,
            "breaks": list(expr.breaks),
            "values": list(expr.values),
        }
    if isinstance(expr, Reciprocal):
        return {"kind": "reciprocal", "c": expr.c}
    raise TypeError(f"cannot serialize expression {expr!r}")


def _dump_delay(d):
    if isinstance(d, ConstantLag):
        return {"kind": "lag", "tau": d.tau}
    if isinstance(d, Proportional):
        return {"kind": "proportional", "lambda": d.lam}
    if isinstance(d, SinusoidLag):
        return {"kind": "sinlag", "tau": d.tau, "amp": d.amp, "omega": d.omega}
    raise TypeError(f"cannot serialize delay {d!r}")


def dump_equation(eq: NeutralEquation) -> dict:
    """Canonical JSON object; defaulted history and absent parts are omitted."""
    out = {
        "t0": eq.t0,
        "neutral": [{"a": _dump_expr(t.coeff), "g": _dump_delay(t.delay)} for t in eq.neutral],
        "delay": [{"b": _dump_expr(t.coeff), "h": _dump_delay(t.delay)} for t in eq.delay],
    }
    if eq.kernel is not None:
        k = eq.kernel
        if isinstance(k, ExponentialKernel):
            out["kernel"] = {"kind": "exponential", "c": k.c, "d": k.d, "h": _dump_delay(k.window)}
        else:
            out["kernel"] = {"kind": "uniform", "c": k.c, "h": _dump_delay(k.window)}
    if eq.history != HistorySpec():
        out["history"] = {"phi": _dump_expr(eq.history.phi), "psi": _dump_expr(eq.history.psi)}
    if eq.forcing is not None:
        out["forcing"] = _dump_expr(eq.forcing)
    return out


def save_equation(eq: NeutralEquation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dump_equation(eq), fh, indent=2, sort_keys=True)
        fh.write("\n")
