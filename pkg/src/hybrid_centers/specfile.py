"""System specification files and deterministic JSON output.

A spec is a JSON object::

    {"center1": {"b": 0, "omega": 1, "delta": 1, "c": 0, "d": 0},
     "center2": {"b": 0, "omega": 1, "delta": -1},
     "reset": {"coeffs": [0, -4, -4]},
     "analysis": {"max_period": 2}}

Numbers may be JSON numbers or strings such as ``"1/3"``, which are kept as
exact fractions.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

from .core import HybridSystem, LinearCenter, ResetPolynomial
from .errors import InvalidSystem, SpecError

__all__ = ["ANALYSIS_KEYS", "load_spec", "parse_spec", "spec_to_dict", "dumps", "logistic_example_spec"]

CENTER_KEYS = ("b", "omega", "delta", "c", "d")
ANALYSIS_KEYS = {
    "tol": float,
    "max_period": int,
    "max_iter": int,
    "max_events": int,
    "max_time": float,
    "seed": int,
    "degree_cap": int,
}


def _line_of(text, key):
    if text is None:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _number(value, field, text):
    if isinstance(value, bool) or value is None:
        raise SpecError(f"expected a number, got {json.dumps(value)}", field, _line_of(text, field.rsplit(".", 1)[-1]))
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            raise SpecError("number must be finite", field, _line_of(text, field.rsplit(".", 1)[-1]))
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise SpecError(f"expected a number, got {value!r}", field, _line_of(text, field.rsplit(".", 1)[-1]))


def _center(data, name, text):
    if not isinstance(data, dict):
        raise SpecError("expected an object", name, _line_of(text, name))
    unknown = set(data) - set(CENTER_KEYS)
    if unknown:
        key = sorted(unknown)[0]
        raise SpecError("unknown key", f"{name}.{key}", _line_of(text, key))
    for key in ("b", "omega", "delta"):
        if key not in data:
            raise SpecError("missing required key", f"{name}.{key}", _line_of(text, name))
    vals = {k: _number(data.get(k, 0), f"{name}.{k}", text) for k in CENTER_KEYS}
    if vals["delta"] not in (1, -1):
        raise SpecError("delta must be exactly 1 or -1", f"{name}.delta", _line_of(text, "delta"))
    vals["delta"] = int(vals["delta"])
    try:
        return LinearCenter(**vals)
    except InvalidSystem as exc:
        raise SpecError(str(exc), name, _line_of(text, name)) from None


def parse_spec(data, text=None):
    """``(system, analysis)`` from an already decoded JSON object."""
    if not isinstance(data, dict):
        raise SpecError("top level must be a JSON object", line=1 if text else None)
    unknown = set(data) - {"center1", "center2", "reset", "analysis"}
    if unknown:
        key = sorted(unknown)[0]
        raise SpecError("unknown key", key, _line_of(text, key))
    for key in ("center1", "center2", "reset"):
        if key not in data:
            raise SpecError("missing required key", key)
    c1 = _center(data["center1"], "center1", text)
    c2 = _center(data["center2"], "center2", text)
    reset = data["reset"]
    if not isinstance(reset, dict) or not isinstance(reset.get("coeffs"), list):
        raise SpecError("expected {\"coeffs\": [...]}", "reset", _line_of(text, "reset"))
    coeffs = tuple(_number(c, f"reset.coeffs[{i}]", text) for i, c in enumerate(reset["coeffs"]))
    try:
        system = HybridSystem(c1, c2, ResetPolynomial(coeffs))
    except InvalidSystem as exc:
        raise SpecError(str(exc), "reset.coeffs", _line_of(text, "coeffs")) from None
    analysis = {}
    raw = data.get("analysis", {})
    if not isinstance(raw, dict):
        raise SpecError("expected an object", "analysis", _line_of(text, "analysis"))
    for key, value in raw.items():
        if key not in ANALYSIS_KEYS:
            raise SpecError("unknown analysis key", f"analysis.{key}", _line_of(text, key))
        kind = ANALYSIS_KEYS[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or \
                (kind is int and not isinstance(value, int)):
            raise SpecError(f"expected {kind.__name__}", f"analysis.{key}", _line_of(text, key))
        if value <= 0 and key != "seed":
            raise SpecError("must be positive", f"analysis.{key}", _line_of(text, key))
        analysis[key] = kind(value)
    return system, analysis


def load_spec(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, line=exc.lineno) from None
    return parse_spec(data, text)


def _spec_number(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def spec_to_dict(system, analysis=None):
    out = {}
    for name, center in (("center1", system.center1), ("center2", system.center2)):
        out[name] = {k: _spec_number(getattr(center, k)) for k in CENTER_KEYS}
    out["reset"] = {"coeffs": [_spec_number(c) for c in system.reset.coeffs]}
    if analysis:
        out["analysis"] = dict(analysis)
    return out


def logistic_example_spec():
    return {
        "center1": {"b": 0, "omega": 1, "delta": 1, "c": 0, "d": 0},
        "center2": {"b": 0, "omega": 1, "delta": -1, "c": 0, "d": 0},
        "reset": {"coeffs": [0, -4, -4]},
    }


def _scalar(v):
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, float):
        if math.isnan(v):
            return '"nan"'
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        text = format(v, ".17g")
        return text if any(ch in text for ch in ".en") else text + ".0"
    return json.dumps(str(v))


def dumps(obj, indent=2, _level=0):
    """JSON text with every float printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _scalar(obj)
